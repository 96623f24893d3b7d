# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled limb kernels.

Same signatures and conventions as `quadsim._kernels.pure`; see that module
for the chain and parameter-vector documentation.
"""

from libc.math cimport sin, cos, sqrt

BACKEND_NAME = "compiled"


def fk(double a, double A, double B, double q1, double q2, double q3):
    cdef double s1 = sin(q1), c1 = cos(q1)
    cdef double s2 = sin(q2), c2 = cos(q2)
    cdef double s23 = sin(q2 + q3), c23 = cos(q2 + q3)
    cdef double u = A * c2 + B * c23
    return A * s2 + B * s23, s1 * u + a * c1, -c1 * u + a * s1


def jacobian(double a, double A, double B, double q1, double q2, double q3):
    cdef double s1 = sin(q1), c1 = cos(q1)
    cdef double s2 = sin(q2), c2 = cos(q2)
    cdef double s23 = sin(q2 + q3), c23 = cos(q2 + q3)
    cdef double u = A * c2 + B * c23
    cdef double v = A * s2 + B * s23
    return (
        0.0, u, B * c23,
        c1 * u - a * s1, -s1 * v, -B * s1 * s23,
        s1 * u + a * c1, c1 * v, B * c1 * s23,
    )


def jacobian_det(double a, double A, double B, double q1, double q2, double q3):
    cdef double u = A * cos(q2) + B * cos(q2 + q3)
    return -A * B * u * sin(q3)


def grf_from_torque(double a, double A, double B,
                    double q1, double q2, double q3,
                    double t1, double t2, double t3):
    cdef double s1 = sin(q1), c1 = cos(q1)
    cdef double s2 = sin(q2), c2 = cos(q2)
    cdef double s23 = sin(q2 + q3), c23 = cos(q2 + q3)
    cdef double u = A * c2 + B * c23
    cdef double v = A * s2 + B * s23
    # m = J^T
    cdef double m11 = 0.0, m12 = c1 * u - a * s1, m13 = s1 * u + a * c1
    cdef double m21 = u, m22 = -s1 * v, m23 = c1 * v
    cdef double m31 = B * c23, m32 = -B * s1 * s23, m33 = B * c1 * s23
    cdef double x11 = m22 * m33 - m23 * m32
    cdef double x12 = m23 * m31 - m21 * m33
    cdef double x13 = m21 * m32 - m22 * m31
    cdef double x21 = m13 * m32 - m12 * m33
    cdef double x22 = m11 * m33 - m13 * m31
    cdef double x23 = m12 * m31 - m11 * m32
    cdef double x31 = m12 * m23 - m13 * m22
    cdef double x32 = m13 * m21 - m11 * m23
    cdef double x33 = m11 * m22 - m12 * m21
    cdef double det = m11 * x11 + m12 * x12 + m13 * x13
    cdef double norm_m = sqrt(m11 * m11 + m12 * m12 + m13 * m13
                              + m21 * m21 + m22 * m22 + m23 * m23
                              + m31 * m31 + m32 * m32 + m33 * m33)
    cdef double norm_adj = sqrt(x11 * x11 + x12 * x12 + x13 * x13
                                + x21 * x21 + x22 * x22 + x23 * x23
                                + x31 * x31 + x32 * x32 + x33 * x33)
    if det == 0.0 or norm_m == 0.0 or norm_adj == 0.0:
        return 0.0, 0.0, 0.0, 0.0
    cdef double rcond = (det if det > 0.0 else -det) / (norm_m * norm_adj)
    cdef double inv_det = 1.0 / det
    return ((x11 * t1 + x21 * t2 + x31 * t3) * inv_det,
            (x12 * t1 + x22 * t2 + x32 * t3) * inv_det,
            (x13 * t1 + x23 * t2 + x33 * t3) * inv_det,
            rcond)


cdef inline void _rnea_core(const double* P,
                            double q1, double q2, double q3,
                            double qd1, double qd2, double qd3,
                            double qdd1, double qdd2, double qdd3,
                            double gx, double gy, double gz,
                            double* out) noexcept nogil:
    cdef double a = P[0], A = P[1]
    cdef double m1 = P[3], cc1 = P[4], i1x = P[5]
    cdef double m2 = P[8], cc2 = P[9], i2x = P[10], i2y = P[11], i2z = P[12]
    cdef double m3 = P[13], cc3 = P[14], i3x = P[15], i3y = P[16], i3z = P[17]
    cdef double s1 = sin(q1), c1 = cos(q1)
    cdef double s2 = sin(q2), c2 = cos(q2)
    cdef double s3 = sin(q3), c3 = cos(q3)

    cdef double a0x = -gx, a0y = -gy, a0z = -gz
    cdef double w1x = qd1, dw1x = qdd1
    cdef double a1x = a0x
    cdef double a1y = c1 * a0y + s1 * a0z
    cdef double a1z = -s1 * a0y + c1 * a0z
    cdef double ac1x = a1x
    cdef double ac1y = a1y - qd1 * qd1 * cc1
    cdef double ac1z = a1z + qdd1 * cc1
    cdef double f1x = m1 * ac1x, f1y = m1 * ac1y, f1z = m1 * ac1z
    cdef double n1x = i1x * qdd1

    cdef double t2x = a1x
    cdef double t2y = a1y - qd1 * qd1 * a
    cdef double t2z = a1z + qdd1 * a
    cdef double a2x = c2 * t2x + s2 * t2z
    cdef double a2y = t2y
    cdef double a2z = -s2 * t2x + c2 * t2z
    cdef double w2x = c2 * w1x
    cdef double w2y = -qd2
    cdef double w2z = -s2 * w1x
    cdef double dw2x = c2 * dw1x + w2z * qd2
    cdef double dw2y = -qdd2
    cdef double dw2z = -s2 * dw1x - w2x * qd2
    cdef double ac2x = a2x - dw2y * cc2 - w2z * w2x * cc2
    cdef double ac2y = a2y + dw2x * cc2 - w2z * w2y * cc2
    cdef double ac2z = a2z + (w2x * w2x + w2y * w2y) * cc2
    cdef double f2x = m2 * ac2x, f2y = m2 * ac2y, f2z = m2 * ac2z
    cdef double n2x = i2x * dw2x + (w2y * i2z * w2z - w2z * i2y * w2y)
    cdef double n2y = i2y * dw2y + (w2z * i2x * w2x - w2x * i2z * w2z)
    cdef double n2z = i2z * dw2z + (w2x * i2y * w2y - w2y * i2x * w2x)

    cdef double t3x = a2x - dw2y * A - w2z * w2x * A
    cdef double t3y = a2y + dw2x * A - w2z * w2y * A
    cdef double t3z = a2z + (w2x * w2x + w2y * w2y) * A
    cdef double a3x = c3 * t3x + s3 * t3z
    cdef double a3y = t3y
    cdef double a3z = -s3 * t3x + c3 * t3z
    cdef double rwx = c3 * w2x + s3 * w2z
    cdef double rwy = w2y
    cdef double rwz = -s3 * w2x + c3 * w2z
    cdef double w3x = rwx
    cdef double w3y = rwy - qd3
    cdef double w3z = rwz
    cdef double dw3x = c3 * dw2x + s3 * dw2z + rwz * qd3
    cdef double dw3y = dw2y - qdd3
    cdef double dw3z = -s3 * dw2x + c3 * dw2z - rwx * qd3
    cdef double ac3x = a3x - dw3y * cc3 - w3z * w3x * cc3
    cdef double ac3y = a3y + dw3x * cc3 - w3z * w3y * cc3
    cdef double ac3z = a3z + (w3x * w3x + w3y * w3y) * cc3
    cdef double f3x = m3 * ac3x, f3y = m3 * ac3y, f3z = m3 * ac3z
    cdef double n3x = i3x * dw3x + (w3y * i3z * w3z - w3z * i3y * w3y)
    cdef double n3y = i3y * dw3y + (w3z * i3x * w3x - w3x * i3z * w3z)
    cdef double n3z = i3z * dw3z + (w3x * i3y * w3y - w3y * i3x * w3x)

    cdef double g3x = f3x, g3y = f3y, g3z = f3z
    cdef double v3x = n3x + cc3 * f3y
    cdef double v3y = n3y - cc3 * f3x
    cdef double v3z = n3z

    cdef double rfx = c3 * g3x - s3 * g3z
    cdef double rfy = g3y
    cdef double rfz = s3 * g3x + c3 * g3z
    cdef double g2x = rfx + f2x
    cdef double g2y = rfy + f2y
    cdef double g2z = rfz + f2z
    cdef double rnx = c3 * v3x - s3 * v3z
    cdef double rny = v3y
    cdef double rnz = s3 * v3x + c3 * v3z
    cdef double v2x = n2x + rnx + cc2 * f2y + A * rfy
    cdef double v2y = n2y + rny - cc2 * f2x - A * rfx
    cdef double v2z = n2z + rnz

    cdef double rfx1 = c2 * g2x - s2 * g2z
    cdef double rfz1 = s2 * g2x + c2 * g2z
    cdef double rnx1 = c2 * v2x - s2 * v2z
    cdef double v1x = n1x + rnx1 + cc1 * f1z + a * rfz1

    out[0] = v1x
    out[1] = -v2y
    out[2] = -v3y


cdef inline void _params(object Pobj, double* P) except *:
    cdef int i
    for i in range(18):
        P[i] = Pobj[i]


def rnea(Pobj, double q1, double q2, double q3,
         double qd1, double qd2, double qd3,
         double qdd1, double qdd2, double qdd3,
         double gx, double gy, double gz):
    cdef double P[18]
    cdef double out[3]
    _params(Pobj, P)
    _rnea_core(P, q1, q2, q3, qd1, qd2, qd3, qdd1, qdd2, qdd3, gx, gy, gz, out)
    return out[0], out[1], out[2]


def limb_acceleration(Pobj, double q1, double q2, double q3,
                      double qd1, double qd2, double qd3,
                      double t1, double t2, double t3,
                      double fx, double fy, double fz,
                      double gx, double gy, double gz, double armature=0.0):
    cdef double P[18]
    cdef double bias[3]
    cdef double col1[3]
    cdef double col2[3]
    cdef double col3[3]
    _params(Pobj, P)
    _rnea_core(P, q1, q2, q3, qd1, qd2, qd3, 0, 0, 0, gx, gy, gz, bias)
    _rnea_core(P, q1, q2, q3, 0, 0, 0, 1, 0, 0, 0, 0, 0, col1)
    _rnea_core(P, q1, q2, q3, 0, 0, 0, 0, 1, 0, 0, 0, 0, col2)
    _rnea_core(P, q1, q2, q3, 0, 0, 0, 0, 0, 1, 0, 0, 0, col3)

    cdef double a = P[0], A = P[1], B = P[2]
    cdef double s1 = sin(q1), c1 = cos(q1)
    cdef double s2 = sin(q2), c2 = cos(q2)
    cdef double s23 = sin(q2 + q3), c23 = cos(q2 + q3)
    cdef double u = A * c2 + B * c23
    cdef double v = A * s2 + B * s23
    # J^T f
    cdef double b1 = t1 + (c1 * u - a * s1) * fy + (s1 * u + a * c1) * fz - bias[0]
    cdef double b2 = t2 + u * fx + (-s1 * v) * fy + (c1 * v) * fz - bias[1]
    cdef double b3 = t3 + B * c23 * fx - B * s1 * s23 * fy + B * c1 * s23 * fz - bias[2]

    cdef double a11 = col1[0] + armature, a12 = col2[0], a13 = col3[0]
    cdef double a21 = col1[1], a22 = col2[1] + armature, a23 = col3[1]
    cdef double a31 = col1[2], a32 = col2[2], a33 = col3[2] + armature
    cdef double x11 = a22 * a33 - a23 * a32
    cdef double x12 = a23 * a31 - a21 * a33
    cdef double x13 = a21 * a32 - a22 * a31
    cdef double det = a11 * x11 + a12 * x12 + a13 * x13
    if det == 0.0:
        raise ArithmeticError("singular limb mass matrix (massless limb?)")
    cdef double x21 = a13 * a32 - a12 * a33
    cdef double x22 = a11 * a33 - a13 * a31
    cdef double x23 = a12 * a31 - a11 * a32
    cdef double x31 = a12 * a23 - a13 * a22
    cdef double x32 = a13 * a21 - a11 * a23
    cdef double x33 = a11 * a22 - a12 * a21
    cdef double inv_det = 1.0 / det
    return ((x11 * b1 + x21 * b2 + x31 * b3) * inv_det,
            (x12 * b1 + x22 * b2 + x32 * b3) * inv_det,
            (x13 * b1 + x23 * b2 + x33 * b3) * inv_det)


def foot_apparent_mass(Pobj, double q1, double q2, double q3, double armature=0.0):
    cdef double P[18]
    cdef double col1[3]
    cdef double col2[3]
    cdef double col3[3]
    _params(Pobj, P)
    _rnea_core(P, q1, q2, q3, 0, 0, 0, 1, 0, 0, 0, 0, 0, col1)
    _rnea_core(P, q1, q2, q3, 0, 0, 0, 0, 1, 0, 0, 0, 0, col2)
    _rnea_core(P, q1, q2, q3, 0, 0, 0, 0, 0, 1, 0, 0, 0, col3)
    cdef double a11 = col1[0] + armature, a12 = col2[0], a13 = col3[0]
    cdef double a21 = col1[1], a22 = col2[1] + armature, a23 = col3[1]
    cdef double a31 = col1[2], a32 = col2[2], a33 = col3[2] + armature
    cdef double c11 = a22 * a33 - a23 * a32
    cdef double c12 = a23 * a31 - a21 * a33
    cdef double c13 = a21 * a32 - a22 * a31
    cdef double det = a11 * c11 + a12 * c12 + a13 * c13
    if det <= 0.0:
        return 0.0, 0.0, 0.0
    cdef double c21 = a13 * a32 - a12 * a33
    cdef double c22 = a11 * a33 - a13 * a31
    cdef double c23 = a12 * a31 - a11 * a32
    cdef double c31 = a12 * a23 - a13 * a22
    cdef double c32 = a13 * a21 - a11 * a23
    cdef double c33 = a11 * a22 - a12 * a21
    cdef double inv_det = 1.0 / det
    cdef double a = P[0], A = P[1], B = P[2]
    cdef double s1 = sin(q1), c1 = cos(q1)
    cdef double s2 = sin(q2), c2 = cos(q2)
    cdef double s23 = sin(q2 + q3), c23_ = cos(q2 + q3)
    cdef double u = A * c2 + B * c23_
    cdef double v = A * s2 + B * s23
    cdef double j[9]
    j[0] = 0.0; j[1] = u; j[2] = B * c23_
    j[3] = c1 * u - a * s1; j[4] = -s1 * v; j[5] = -B * s1 * s23
    j[6] = s1 * u + a * c1; j[7] = c1 * v; j[8] = B * c1 * s23
    cdef double out[3]
    cdef int r
    cdef double jr1, jr2, jr3, x1, x2, x3, w
    for r in range(3):
        jr1 = j[3 * r]; jr2 = j[3 * r + 1]; jr3 = j[3 * r + 2]
        x1 = (c11 * jr1 + c21 * jr2 + c31 * jr3) * inv_det
        x2 = (c12 * jr1 + c22 * jr2 + c32 * jr3) * inv_det
        x3 = (c13 * jr1 + c23 * jr2 + c33 * jr3) * inv_det
        w = jr1 * x1 + jr2 * x2 + jr3 * x3
        out[r] = 1.0 / w if w > 1e-12 else 1e12
    return out[0], out[1], out[2]


def contact_force(double px, double py, double pz,
                  double vx, double vy, double vz,
                  double ax, double ay,
                  double kn, double cn, double kt, double ct, double mu,
                  double gvx, double gvy):
    cdef double depth = -pz
    if depth <= 0.0:
        return 0.0, 0.0, 0.0, px, py, 0.0
    cdef double fn = kn * depth - cn * vz
    if fn <= 0.0:
        return 0.0, 0.0, 0.0, px, py, 0.0
    cdef double rvx = vx - gvx
    cdef double rvy = vy - gvy
    cdef double ftx = -kt * (px - ax) - ct * rvx
    cdef double fty = -kt * (py - ay) - ct * rvy
    cdef double ft = sqrt(ftx * ftx + fty * fty)
    cdef double fmax = mu * fn
    cdef double nax = ax, nay = ay
    cdef double scale
    if ft > fmax and ft > 1e-12:
        scale = fmax / ft
        ftx *= scale
        fty *= scale
        if kt > 0.0:
            nax = px + (ftx + ct * rvx) / kt
            nay = py + (fty + ct * rvy) / kt
    return ftx, fty, fn, nax, nay, 1.0
