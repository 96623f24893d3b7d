"""Robot state container and quaternion helpers (w, x, y, z convention)."""

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RobotState",
    "quat_normalize",
    "quat_multiply",
    "quat_to_matrix",
    "quat_from_rotvec",
    "quat_integrate",
    "orientation_error",
]


def quat_normalize(q):
    q = np.asarray(q, dtype=float)
    n = float(np.linalg.norm(q))
    if n <= 1e-15:
        return np.array([1.0, 0.0, 0.0, 0.0])
    q = q / n
    return -q if q[0] < 0.0 else q


def quat_multiply(q1, q2):
    w1, x1, y1, z1 = q1
    w2, x2, y2, z2 = q2
    return np.array(
        [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ]
    )


def quat_to_matrix(q):
    """Rotation matrix mapping body coordinates to world coordinates."""
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
            [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
            [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
        ]
    )


def quat_from_rotvec(v):
    v = np.asarray(v, dtype=float)
    angle = float(np.linalg.norm(v))
    if angle < 1e-12:
        return np.array([1.0, 0.0, 0.0, 0.0])
    axis = v / angle
    half = 0.5 * angle
    return np.concatenate([[math.cos(half)], math.sin(half) * axis])


def quat_integrate(q, omega_body, dt):
    """Advance orientation by a body-frame angular velocity over dt."""
    return quat_normalize(quat_multiply(q, quat_from_rotvec(np.asarray(omega_body) * dt)))


def orientation_error(q_des, q):
    """Rotation vector (world frame) taking the current orientation to the
    desired one; small-angle safe."""
    R_des = quat_to_matrix(q_des)
    R = quat_to_matrix(q)
    E = R_des @ R.T
    # vee of the skew-symmetric part, scaled by the rotation angle
    v = 0.5 * np.array([E[2, 1] - E[1, 2], E[0, 2] - E[2, 0], E[1, 0] - E[0, 1]])
    s = float(np.linalg.norm(v))
    c = 0.5 * (np.trace(E) - 1.0)
    if s < 1e-12:
        return np.zeros(3)
    angle = math.atan2(s, c)
    return v * (angle / s)


@dataclass
class RobotState:
    """Trunk pose/twist plus per-limb joint states.

    Linear quantities in world frame; angular velocity in body frame; joint
    arrays are (4, 3) ordered FR, FL, HR, HL.
    """

    position: np.ndarray = field(default_factory=lambda: np.zeros(3))
    quaternion: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0, 0.0]))
    velocity: np.ndarray = field(default_factory=lambda: np.zeros(3))
    omega: np.ndarray = field(default_factory=lambda: np.zeros(3))
    q: np.ndarray = field(default_factory=lambda: np.zeros((4, 3)))
    qd: np.ndarray = field(default_factory=lambda: np.zeros((4, 3)))
    time: float = 0.0

    def copy(self):
        return RobotState(
            position=self.position.copy(),
            quaternion=self.quaternion.copy(),
            velocity=self.velocity.copy(),
            omega=self.omega.copy(),
            q=self.q.copy(),
            qd=self.qd.copy(),
            time=self.time,
        )

    def rotation(self):
        return quat_to_matrix(self.quaternion)

    def is_finite(self):
        return all(
            bool(np.all(np.isfinite(x)))
            for x in (self.position, self.quaternion, self.velocity, self.omega, self.q, self.qd)
        )
