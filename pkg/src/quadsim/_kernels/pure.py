"""Pure-Python limb kernels.

Scalar reference implementations of the hot per-limb operations: forward
kinematics, foot Jacobian, torque-to-force solve, recursive Newton-Euler
inverse dynamics, fused forward dynamics, and the penalty contact law.
The compiled backend (`_speedups.pyx`) mirrors these signatures exactly;
`quadsim._kernels` picks one at import time.

Limb chain convention (limb base frame, +x fore-aft, +y lateral outward,
+z up; leg hangs along -z at q = 0):

  joint 1  ab/adduction, revolute about +x at the hip origin
  offset   lateral link of length ``a`` along the rotated +y
  joint 2  femur pitch, at the offset end
  joint 3  knee pitch, after the femur segment of length ``A``
  foot     end of the tibia segment of length ``B``

Dynamic parameters are a flat 18-vector P:

  P[0:3]   a, A, B          (geometry, m)
  P[3:8]   m1, c1, I1x, I1y, I1z   (offset link: mass, COM offset, inertia)
  P[8:13]  m2, c2, I2x, I2y, I2z   (femur)
  P[13:18] m3, c3, I3x, I3y, I3z   (tibia, distal payloads lumped in)

COM offsets are measured from the proximal joint along the link axis;
inertias are about the link COM in the link frame (diagonal).
"""

import math

__all__ = [
    "fk",
    "jacobian",
    "jacobian_det",
    "grf_from_torque",
    "rnea",
    "limb_acceleration",
    "foot_apparent_mass",
    "contact_force",
]

BACKEND_NAME = "pure"


def fk(a, A, B, q1, q2, q3):
    """Foot position (px, py, pz) in the limb base frame."""
    s1 = math.sin(q1)
    c1 = math.cos(q1)
    s2 = math.sin(q2)
    c2 = math.cos(q2)
    s23 = math.sin(q2 + q3)
    c23 = math.cos(q2 + q3)
    u = A * c2 + B * c23
    px = A * s2 + B * s23
    py = s1 * u + a * c1
    pz = -c1 * u + a * s1
    return px, py, pz


def jacobian(a, A, B, q1, q2, q3):
    """Foot Jacobian, row-major 9-tuple (rows = dpx, dpy, dpz)."""
    s1 = math.sin(q1)
    c1 = math.cos(q1)
    s2 = math.sin(q2)
    c2 = math.cos(q2)
    s23 = math.sin(q2 + q3)
    c23 = math.cos(q2 + q3)
    u = A * c2 + B * c23
    v = A * s2 + B * s23
    return (
        0.0, u, B * c23,
        c1 * u - a * s1, -s1 * v, -B * s1 * s23,
        s1 * u + a * c1, c1 * v, B * c1 * s23,
    )


def jacobian_det(a, A, B, q1, q2, q3):
    """det(J) in closed form: -A*B*(A*cos(q2)+B*cos(q2+q3))*sin(q3)."""
    c2 = math.cos(q2)
    c23 = math.cos(q2 + q3)
    u = A * c2 + B * c23
    return -A * B * u * math.sin(q3)


def grf_from_torque(a, A, B, q1, q2, q3, t1, t2, t3):
    """Solve J^T f = tau.

    Returns (fx, fy, fz, rcond) where rcond is a Frobenius-norm estimate of
    the reciprocal condition number of J^T (0.0 when exactly singular).
    """
    j = jacobian(a, A, B, q1, q2, q3)
    # m = J^T, row-major
    m11, m12, m13 = j[0], j[3], j[6]
    m21, m22, m23 = j[1], j[4], j[7]
    m31, m32, m33 = j[2], j[5], j[8]
    # cofactors of m (adjugate is their transpose)
    c11 = m22 * m33 - m23 * m32
    c12 = m23 * m31 - m21 * m33
    c13 = m21 * m32 - m22 * m31
    c21 = m13 * m32 - m12 * m33
    c22 = m11 * m33 - m13 * m31
    c23_ = m12 * m31 - m11 * m32
    c31 = m12 * m23 - m13 * m22
    c32 = m13 * m21 - m11 * m23
    c33 = m11 * m22 - m12 * m21
    det = m11 * c11 + m12 * c12 + m13 * c13
    norm_m = math.sqrt(
        m11 * m11 + m12 * m12 + m13 * m13
        + m21 * m21 + m22 * m22 + m23 * m23
        + m31 * m31 + m32 * m32 + m33 * m33
    )
    norm_adj = math.sqrt(
        c11 * c11 + c12 * c12 + c13 * c13
        + c21 * c21 + c22 * c22 + c23_ * c23_
        + c31 * c31 + c32 * c32 + c33 * c33
    )
    if det == 0.0 or norm_m == 0.0 or norm_adj == 0.0:
        return 0.0, 0.0, 0.0, 0.0
    rcond = abs(det) / (norm_m * norm_adj)
    inv_det = 1.0 / det
    fx = (c11 * t1 + c21 * t2 + c31 * t3) * inv_det
    fy = (c12 * t1 + c22 * t2 + c32 * t3) * inv_det
    fz = (c13 * t1 + c23_ * t2 + c33 * t3) * inv_det
    return fx, fy, fz, rcond


def rnea(P, q1, q2, q3, qd1, qd2, qd3, qdd1, qdd2, qdd3, gx, gy, gz):
    """Joint torques for the given motion (recursive Newton-Euler).

    Gravity enters through the base-acceleration trick; external foot forces
    are handled by the caller via tau_ext = J^T f.
    """
    a = P[0]
    A = P[1]
    m1, cc1, i1x, i1y, i1z = P[3], P[4], P[5], P[6], P[7]
    m2, cc2, i2x, i2y, i2z = P[8], P[9], P[10], P[11], P[12]
    m3, cc3, i3x, i3y, i3z = P[13], P[14], P[15], P[16], P[17]

    s1 = math.sin(q1)
    c1 = math.cos(q1)
    s2 = math.sin(q2)
    c2 = math.cos(q2)
    s3 = math.sin(q3)
    c3 = math.cos(q3)

    # ---- forward pass: link 1 (axis +x, frame F1 = Rot_x(q1)) ----
    # base: w0 = dw0 = 0, a0 = -g
    a0x, a0y, a0z = -gx, -gy, -gz
    w1x, w1y, w1z = qd1, 0.0, 0.0
    dw1x, dw1y, dw1z = qdd1, 0.0, 0.0
    # a1 = R1^T a0 ;  R1^T v = (vx, c1 vy + s1 vz, -s1 vy + c1 vz)
    a1x = a0x
    a1y = c1 * a0y + s1 * a0z
    a1z = -s1 * a0y + c1 * a0z
    # COM of link 1 at (0, cc1, 0):
    #   dw1 x c = (qdd1,0,0)x(0,cc1,0) = (0, 0, qdd1*cc1)
    #   w1 x (w1 x c) = (0, -qd1^2*cc1, 0)
    ac1x = a1x
    ac1y = a1y - qd1 * qd1 * cc1
    ac1z = a1z + qdd1 * cc1
    f1x = m1 * ac1x
    f1y = m1 * ac1y
    f1z = m1 * ac1z
    n1x = i1x * qdd1
    n1y = 0.0
    n1z = 0.0

    # ---- link 2 (axis (0,-1,0) in F2; F2 = F1 * Rot_y(-q2)) ----
    # p2 = (0, a, 0) in F1
    # terms at the joint-2 origin expressed in F1:
    #   dw1 x p2 = (qdd1,0,0)x(0,a,0) = (0,0,qdd1*a)
    #   w1 x (w1 x p2) = (0,-qd1^2*a,0)
    t2x = a1x
    t2y = a1y - qd1 * qd1 * a
    t2z = a1z + qdd1 * a
    # R2^T v = (c2 vx + s2 vz, vy, -s2 vx + c2 vz)
    a2x = c2 * t2x + s2 * t2z
    a2y = t2y
    a2z = -s2 * t2x + c2 * t2z
    # w2 = R2^T w1 + qd2*(0,-1,0)
    w2x = c2 * w1x
    w2y = -qd2
    w2z = -s2 * w1x
    # dw2 = R2^T dw1 + (R2^T w1) x (qd2*(0,-1,0)) + qdd2*(0,-1,0)
    rw_x = c2 * w1x
    rw_z = -s2 * w1x
    # rw x (0,-qd2,0) = (rw_y*0 - rw_z*(-qd2), rw_z*0 - rw_x*0, rw_x*(-qd2) - rw_y*0)
    dw2x = c2 * dw1x + rw_z * qd2
    dw2y = -qdd2
    dw2z = -s2 * dw1x - rw_x * qd2
    # COM of link 2 at (0, 0, -cc2)
    # dw2 x c = (dw2x,dw2y,dw2z)x(0,0,-cc2) = (dw2y*(-cc2) - 0, 0 - dw2x*(-cc2), 0)
    #         = (-dw2y*cc2, dw2x*cc2, 0)
    # w2 x c = (-w2y*cc2, w2x*cc2, 0)
    # w2 x (w2 x c) = (w2y*0 - w2z*w2x*cc2, w2z*(-w2y*cc2) - w2x*0,
    #                  w2x*w2x*cc2 - w2y*(-w2y*cc2))
    ac2x = a2x - dw2y * cc2 - w2z * w2x * cc2
    ac2y = a2y + dw2x * cc2 - w2z * w2y * cc2
    ac2z = a2z + (w2x * w2x + w2y * w2y) * cc2
    f2x = m2 * ac2x
    f2y = m2 * ac2y
    f2z = m2 * ac2z
    # N2 = I dw + w x (I w)
    n2x = i2x * dw2x + (w2y * i2z * w2z - w2z * i2y * w2y)
    n2y = i2y * dw2y + (w2z * i2x * w2x - w2x * i2z * w2z)
    n2z = i2z * dw2z + (w2x * i2y * w2y - w2y * i2x * w2x)

    # ---- link 3 (axis (0,-1,0) in F3; F3 = F2 * Rot_y(-q3)) ----
    # p3 = (0, 0, -A) in F2
    # dw2 x p3 = (dw2y*(-A)*(-1)? cross((x,y,z),(0,0,-A)) = (y*(-A)-z*0, z*0-x*(-A), 0)
    #          = (-dw2y*A, dw2x*A, 0)
    # w2 x p3 = (-w2y*A, w2x*A, 0)
    # w2 x (w2 x p3) = (w2y*0 - w2z*(w2x*A), w2z*(-w2y*A) - w2x*0,
    #                   w2x*(w2x*A) - w2y*(-w2y*A))
    t3x = a2x - dw2y * A - w2z * w2x * A
    t3y = a2y + dw2x * A - w2z * w2y * A
    t3z = a2z + (w2x * w2x + w2y * w2y) * A
    a3x = c3 * t3x + s3 * t3z
    a3y = t3y
    a3z = -s3 * t3x + c3 * t3z
    rwx = c3 * w2x + s3 * w2z
    rwy = w2y
    rwz = -s3 * w2x + c3 * w2z
    w3x = rwx
    w3y = rwy - qd3
    w3z = rwz
    dw3x_ = c3 * dw2x + s3 * dw2z
    dw3y_ = dw2y
    dw3z_ = -s3 * dw2x + c3 * dw2z
    # rw x (0,-qd3,0) = (rwz*qd3, 0, -rwx*qd3)
    dw3x = dw3x_ + rwz * qd3
    dw3y = dw3y_ - qdd3
    dw3z = dw3z_ - rwx * qd3
    # COM of link 3 at (0, 0, -cc3): same pattern as link 2
    ac3x = a3x - dw3y * cc3 - w3z * w3x * cc3
    ac3y = a3y + dw3x * cc3 - w3z * w3y * cc3
    ac3z = a3z + (w3x * w3x + w3y * w3y) * cc3
    f3x = m3 * ac3x
    f3y = m3 * ac3y
    f3z = m3 * ac3z
    n3x = i3x * dw3x + (w3y * i3z * w3z - w3z * i3y * w3y)
    n3y = i3y * dw3y + (w3z * i3x * w3x - w3x * i3z * w3z)
    n3z = i3z * dw3z + (w3x * i3y * w3y - w3y * i3x * w3x)

    # ---- backward pass ----
    # link 3: g3 = f3, m3v = n3 + com3 x f3
    # com3 x f3 = (0,0,-cc3) x f3 = (-(-cc3)*f3y? cross((0,0,-c),(fx,fy,fz)) =
    #             (0*fz - (-c)*fy, (-c)*fx - 0*fz, 0) = (c*fy, -c*fx, 0)
    g3x, g3y, g3z = f3x, f3y, f3z
    v3x = n3x + cc3 * f3y
    v3y = n3y - cc3 * f3x
    v3z = n3z
    tau3 = -v3y

    # link 2: Rf = R3 g3 (F3 -> F2):  R3 v = (c3 vx - s3 vz, vy, s3 vx + c3 vz)
    rfx = c3 * g3x - s3 * g3z
    rfy = g3y
    rfz = s3 * g3x + c3 * g3z
    g2x = rfx + f2x
    g2y = rfy + f2y
    g2z = rfz + f2z
    # R3 v3
    rnx = c3 * v3x - s3 * v3z
    rny = v3y
    rnz = s3 * v3x + c3 * v3z
    # com2 x f2 = (cc2*f2y, -cc2*f2x, 0)   [com2 = (0,0,-cc2)]
    # p3 x Rf = (0,0,-A) x rf = (A*rfy, -A*rfx, 0)
    v2x = n2x + rnx + cc2 * f2y + A * rfy
    v2y = n2y + rny - cc2 * f2x - A * rfx
    v2z = n2z + rnz
    tau2 = -v2y

    # link 1: Rf = R2 g2 (F2 -> F1): R2 v = (c2 vx - s2 vz, vy, s2 vx + c2 vz)
    rfx1 = c2 * g2x - s2 * g2z
    rfy1 = g2y
    rfz1 = s2 * g2x + c2 * g2z
    rnx1 = c2 * v2x - s2 * v2z
    rnz1 = s2 * v2x + c2 * v2z
    # com1 x f1 = (0,cc1,0) x f1 = (cc1*f1z, 0, -cc1*f1x)
    # p2 x Rf = (0,a,0) x rf = (a*rfz1, 0, -a*rfx1)
    v1x = n1x + rnx1 + cc1 * f1z + a * rfz1
    tau1 = v1x
    return tau1, tau2, tau3


def limb_acceleration(P, q1, q2, q3, qd1, qd2, qd3,
                      t1, t2, t3, fx, fy, fz, gx, gy, gz, armature=0.0):
    """Joint accelerations under actuator torques and an external foot force.

    Solves (M(q) + armature*I) qdd = tau + J^T f_ext - bias(q, qd).  The
    foot force is expressed in the limb base frame; ``armature`` is the
    reflected actuator rotor inertia per joint.
    """
    bias = rnea(P, q1, q2, q3, qd1, qd2, qd3, 0.0, 0.0, 0.0, gx, gy, gz)
    m1 = rnea(P, q1, q2, q3, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    m2 = rnea(P, q1, q2, q3, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0)
    m3 = rnea(P, q1, q2, q3, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0)
    j = jacobian(P[0], P[1], P[2], q1, q2, q3)
    b1 = t1 + j[0] * fx + j[3] * fy + j[6] * fz - bias[0]
    b2 = t2 + j[1] * fx + j[4] * fy + j[7] * fz - bias[1]
    b3 = t3 + j[2] * fx + j[5] * fy + j[8] * fz - bias[2]
    # 3x3 symmetric solve by adjugate
    a11, a12, a13 = m1[0] + armature, m2[0], m3[0]
    a21, a22, a23 = m1[1], m2[1] + armature, m3[1]
    a31, a32, a33 = m1[2], m2[2], m3[2] + armature
    c11 = a22 * a33 - a23 * a32
    c12 = a23 * a31 - a21 * a33
    c13 = a21 * a32 - a22 * a31
    det = a11 * c11 + a12 * c12 + a13 * c13
    if det == 0.0:
        raise ArithmeticError("singular limb mass matrix (massless limb?)")
    c21 = a13 * a32 - a12 * a33
    c22 = a11 * a33 - a13 * a31
    c23 = a12 * a31 - a11 * a32
    c31 = a12 * a23 - a13 * a22
    c32 = a13 * a21 - a11 * a23
    c33 = a11 * a22 - a12 * a21
    inv_det = 1.0 / det
    qdd1 = (c11 * b1 + c21 * b2 + c31 * b3) * inv_det
    qdd2 = (c12 * b1 + c22 * b2 + c32 * b3) * inv_det
    qdd3 = (c13 * b1 + c23 * b2 + c33 * b3) * inv_det
    return qdd1, qdd2, qdd3


def foot_apparent_mass(P, q1, q2, q3, armature=0.0):
    """Apparent translational mass of the foot along the limb-frame axes.

    Diagonal of (J (M+armature*I)^-1 J^T)^-1-ish: returns 1/w_ii per axis,
    the effective mass a contact force along that axis accelerates.  Used
    to cap contact damping for explicit integration stability.
    """
    m1 = rnea(P, q1, q2, q3, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    m2 = rnea(P, q1, q2, q3, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0)
    m3 = rnea(P, q1, q2, q3, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0)
    a11, a12, a13 = m1[0] + armature, m2[0], m3[0]
    a21, a22, a23 = m1[1], m2[1] + armature, m3[1]
    a31, a32, a33 = m1[2], m2[2], m3[2] + armature
    c11 = a22 * a33 - a23 * a32
    c12 = a23 * a31 - a21 * a33
    c13 = a21 * a32 - a22 * a31
    det = a11 * c11 + a12 * c12 + a13 * c13
    if det <= 0.0:
        return 0.0, 0.0, 0.0
    c21 = a13 * a32 - a12 * a33
    c22 = a11 * a33 - a13 * a31
    c23 = a12 * a31 - a11 * a32
    c31 = a12 * a23 - a13 * a22
    c32 = a13 * a21 - a11 * a23
    c33 = a11 * a22 - a12 * a21
    inv_det = 1.0 / det
    j = jacobian(P[0], P[1], P[2], q1, q2, q3)
    out = []
    for r in range(3):
        jr1, jr2, jr3 = j[3 * r], j[3 * r + 1], j[3 * r + 2]
        # (J Minv J^T)_rr
        x1 = (c11 * jr1 + c21 * jr2 + c31 * jr3) * inv_det
        x2 = (c12 * jr1 + c22 * jr2 + c32 * jr3) * inv_det
        x3 = (c13 * jr1 + c23 * jr2 + c33 * jr3) * inv_det
        w = jr1 * x1 + jr2 * x2 + jr3 * x3
        out.append(1.0 / w if w > 1e-12 else 1e12)
    return out[0], out[1], out[2]


def contact_force(px, py, pz, vx, vy, vz, ax, ay, kn, cn, kt, ct, mu, gvx, gvy):
    """Penalty contact: spring-damper normal force plus anchored-spring
    Coulomb friction (displacement-regularized stiction).

    Ground is the plane z = 0 with optional belt velocity (gvx, gvy);
    (ax, ay) is the current friction anchor.  Returns (fx, fy, fz,
    new_ax, new_ay, in_contact); the caller commits the slid anchor once
    per step.  Normal force is never negative, tangential force never
    exceeds mu times the normal force.
    """
    depth = -pz
    if depth <= 0.0:
        return 0.0, 0.0, 0.0, px, py, 0.0
    fn = kn * depth - cn * vz
    if fn <= 0.0:
        return 0.0, 0.0, 0.0, px, py, 0.0
    rvx = vx - gvx
    rvy = vy - gvy
    ftx = -kt * (px - ax) - ct * rvx
    fty = -kt * (py - ay) - ct * rvy
    ft = math.sqrt(ftx * ftx + fty * fty)
    fmax = mu * fn
    nax, nay = ax, ay
    if ft > fmax and ft > 1e-12:
        scale = fmax / ft
        ftx *= scale
        fty *= scale
        # slide the anchor so the spring alone sustains the clipped force
        if kt > 0.0:
            nax = px + (ftx + ct * rvx) / kt
            nay = py + (fty + ct * rvy) / kt
    return ftx, fty, fn, nax, nay, 1.0
