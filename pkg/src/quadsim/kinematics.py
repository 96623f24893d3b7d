"""Single-limb kinematics under the serial-chain simplification.

Frame convention (limb base frame, origin at the hip):
  +x  fore-aft (sagittal motion)
  +y  lateral, pointing away from the body
  +z  up; the leg hangs along -z at q = (0, 0, 0)

Joint angles q = (theta1, theta2, theta3): ab/adduction about +x, femur
pitch, knee pitch relative to the femur.  A backward knee corresponds to
theta3 >= 0.  Four-link limbs are handled through the equivalent serial
chain (tarsus parallel to the femur), see LimbMorphology.effective_femur.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import CalibrationError, SingularityError, WorkspaceError
from .morphology import KneeDirection

__all__ = [
    "GrfEstimate",
    "wrap_angle",
    "forward_kinematics",
    "forward_kinematics_batch",
    "jacobian_foot",
    "jacobian_foot_batch",
    "estimate_grf",
    "inverse_kinematics",
    "calibrate_axes",
    "knee_position",
]

RCOND_SINGULAR = 1e-8


@dataclass
class GrfEstimate:
    """Ground-reaction-force estimate in the limb base frame."""

    force: np.ndarray
    calibration_applied: bool
    rcond: float


def wrap_angle(q):
    """Wrap angle(s) to (-pi, pi]."""
    q = np.asarray(q, dtype=float)
    wrapped = np.remainder(q + math.pi, 2.0 * math.pi) - math.pi
    wrapped = np.where(wrapped == -math.pi, math.pi, wrapped)
    if wrapped.ndim == 0:
        return float(wrapped)
    return wrapped


def _geom(morph):
    return morph.lateral_offset, morph.effective_femur, morph.l3


def forward_kinematics(morph, q):
    """Foot position in the limb base frame."""
    a, A, B = _geom(morph)
    return np.array(K.fk(a, A, B, float(q[0]), float(q[1]), float(q[2])))


def forward_kinematics_batch(morph, Q):
    """Vectorized foot positions for Q of shape (N, 3)."""
    a, A, B = _geom(morph)
    Q = np.asarray(Q, dtype=float)
    s1, c1 = np.sin(Q[:, 0]), np.cos(Q[:, 0])
    s2, c2 = np.sin(Q[:, 1]), np.cos(Q[:, 1])
    s23, c23 = np.sin(Q[:, 1] + Q[:, 2]), np.cos(Q[:, 1] + Q[:, 2])
    u = A * c2 + B * c23
    return np.stack([A * s2 + B * s23, s1 * u + a * c1, -c1 * u + a * s1], axis=1)


def jacobian_foot(morph, q):
    """3x3 foot Jacobian (rows: dpx, dpy, dpz; columns: joint rates)."""
    a, A, B = _geom(morph)
    return np.array(
        K.jacobian(a, A, B, float(q[0]), float(q[1]), float(q[2]))
    ).reshape(3, 3)


def jacobian_foot_batch(morph, Q):
    """Vectorized Jacobians for Q of shape (N, 3); returns (N, 3, 3)."""
    a, A, B = _geom(morph)
    Q = np.asarray(Q, dtype=float)
    n = Q.shape[0]
    s1, c1 = np.sin(Q[:, 0]), np.cos(Q[:, 0])
    s2, c2 = np.sin(Q[:, 1]), np.cos(Q[:, 1])
    s23, c23 = np.sin(Q[:, 1] + Q[:, 2]), np.cos(Q[:, 1] + Q[:, 2])
    u = A * c2 + B * c23
    v = A * s2 + B * s23
    J = np.zeros((n, 3, 3))
    J[:, 0, 1] = u
    J[:, 0, 2] = B * c23
    J[:, 1, 0] = c1 * u - a * s1
    J[:, 1, 1] = -s1 * v
    J[:, 1, 2] = -B * s1 * s23
    J[:, 2, 0] = s1 * u + a * c1
    J[:, 2, 1] = c1 * v
    J[:, 2, 2] = B * c1 * s23
    return J


def estimate_grf(morph, q, tau, cal=None, rcond_min=RCOND_SINGULAR):
    """Ground reaction force from joint torques: F = cal * (J^T)^-1 tau.

    ``tau`` follows the reaction sign convention (the torque the limb exerts
    against its load); with that convention a standing leg yields a positive
    vertical force.  Raises SingularityError when the reciprocal condition
    number of J^T falls below ``rcond_min``; configurations above the
    threshold return the estimate flagged with the measured rcond.
    """
    a, A, B = _geom(morph)
    fx, fy, fz, rcond = K.grf_from_torque(
        a, A, B, float(q[0]), float(q[1]), float(q[2]),
        float(tau[0]), float(tau[1]), float(tau[2]),
    )
    if rcond < rcond_min:
        raise SingularityError(rcond)
    force = np.array([fx, fy, fz])
    applied = cal is not None
    if applied:
        force = force * np.asarray(cal, dtype=float)
    return GrfEstimate(force=force, calibration_applied=applied, rcond=rcond)


def knee_position(morph, q):
    """Knee point in the limb base frame (end of the effective femur)."""
    a, A, _ = _geom(morph)
    s1, c1 = math.sin(q[0]), math.cos(q[0])
    s2, c2 = math.sin(q[1]), math.cos(q[1])
    return np.array([A * s2, s1 * A * c2 + a * c1, -c1 * A * c2 + a * s1])


def _nearest_reachable(morph, a, A, B, target):
    """Project a target onto the workspace by clamping in joint coordinates.

    Always returns an exactly reachable point close to the target (nearest
    up to the joint-space parametrization).
    """
    px, py, pz = target
    rho = math.hypot(py, pz)
    r = math.sqrt(max(rho * rho - a * a, 0.0))
    theta1 = math.atan2(pz, py) - math.atan2(-r, a) if rho > 1e-12 else 0.0
    d = math.hypot(px, r)
    d_clamped = min(max(d, abs(A - B)), A + B)
    cos_knee = (d_clamped * d_clamped - A * A - B * B) / (2.0 * A * B)
    theta3 = math.acos(min(1.0, max(-1.0, cos_knee)))
    if morph.knee_direction is KneeDirection.FORWARD:
        theta3 = -theta3
    theta2 = math.atan2(px, r) - math.atan2(B * math.sin(theta3), A + B * math.cos(theta3))
    return np.array(K.fk(a, A, B, theta1, theta2, theta3))


def inverse_kinematics(morph, target, seed=None):
    """Closed-form IK; picks the knee branch matching morph.knee_direction.

    When ``seed`` angles are given the result is unwrapped to the 2*pi turn
    nearest the seed.  Raises WorkspaceError (carrying the nearest reachable
    point) for unreachable targets.
    """
    a, A, B = _geom(morph)
    px, py, pz = (float(v) for v in target)
    tol = 1e-9
    rho2 = py * py + pz * pz
    if rho2 < a * a - tol:
        raise WorkspaceError(
            np.asarray(target, dtype=float), _nearest_reachable(morph, a, A, B, (px, py, pz))
        )
    r = math.sqrt(max(rho2 - a * a, 0.0))
    d2 = px * px + r * r
    d_min, d_max = abs(A - B), A + B
    if d2 > d_max * d_max + tol or d2 < d_min * d_min - tol:
        raise WorkspaceError(
            np.asarray(target, dtype=float), _nearest_reachable(morph, a, A, B, (px, py, pz))
        )

    cos_knee = (d2 - A * A - B * B) / (2.0 * A * B)
    cos_knee = min(1.0, max(-1.0, cos_knee))
    theta3 = math.acos(cos_knee)
    if morph.knee_direction is KneeDirection.FORWARD:
        theta3 = -theta3

    theta1 = math.atan2(pz, py) - math.atan2(-r, a)
    theta2 = math.atan2(px, r) - math.atan2(B * math.sin(theta3), A + B * math.cos(theta3))

    q = np.array([theta1, theta2, theta3])
    q = wrap_angle(q)
    if seed is not None:
        seed = np.asarray(seed, dtype=float)
        q = q + 2.0 * math.pi * np.round((seed - q) / (2.0 * math.pi))
    return q


def calibrate_axes(trials):
    """Per-axis least-squares scale mapping estimated GRFs onto references.

    ``trials`` is a sequence of (estimated, reference) force pairs (or two
    equal-shape arrays).  Minimizes sum((scale*est - ref)^2) independently
    per axis.  Raises CalibrationError for an axis with no usable signal.
    """
    if isinstance(trials, tuple) and len(trials) == 2 and np.ndim(trials[0]) == 2:
        est = np.asarray(trials[0], dtype=float)
        ref = np.asarray(trials[1], dtype=float)
    else:
        pairs = list(trials)
        est = np.asarray([p[0] for p in pairs], dtype=float)
        ref = np.asarray([p[1] for p in pairs], dtype=float)
    if est.shape != ref.shape or est.ndim != 2 or est.shape[1] != 3:
        raise ValueError("expected matching (N, 3) estimate/reference arrays")
    if est.shape[0] < 2:
        raise CalibrationError("need at least 2 trials")
    denom = np.sum(est * est, axis=0)
    bad = [("xyz"[i]) for i in range(3) if denom[i] <= 0.0]
    if bad:
        raise CalibrationError(f"axis {','.join(bad)}: all-zero estimates, scale undetermined")
    return np.sum(est * ref, axis=0) / denom
