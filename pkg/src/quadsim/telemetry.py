"""Trial telemetry: append-only log with CSV and JSON-lines export.

Schema `quadsim.telemetry.v1`, one row per logged sample: time, per-joint
state and torque, estimated and ground-truth GRFs (world frame), actuator
electrical power, trunk pose/twist, IMU, and contact flags.  All exports
are deterministic byte-for-byte for a given log.
"""

import json

import numpy as np

from .morphology import LEG_NAMES

__all__ = ["SCHEMA", "TrialLog", "resample_uniform"]

SCHEMA = "quadsim.telemetry.v1"

_JOINTS = ("abad", "hip", "knee")


def _leg_cols(prefix, per_leg):
    return [f"{prefix}_{leg.lower()}_{p}" for leg in LEG_NAMES for p in per_leg]


COLUMNS = (
    ["time"]
    + _leg_cols("q", _JOINTS)
    + _leg_cols("qd", _JOINTS)
    + _leg_cols("tau", _JOINTS)
    + _leg_cols("grf_est", ("x", "y", "z"))
    + _leg_cols("grf_true", ("x", "y", "z"))
    + _leg_cols("power", _JOINTS)
    + ["trunk_x", "trunk_y", "trunk_z"]
    + ["quat_w", "quat_x", "quat_y", "quat_z"]
    + ["vel_x", "vel_y", "vel_z"]
    + ["omega_x", "omega_y", "omega_z"]
    + ["imu_ax", "imu_ay", "imu_az", "imu_gx", "imu_gy", "imu_gz"]
    + [f"contact_{leg.lower()}" for leg in LEG_NAMES]
)


class TrialLog:
    """Column-oriented time series of one simulation trial."""

    def __init__(self, calibration=None):
        self.time = []
        self.q = []
        self.qd = []
        self.tau = []
        self.grf_est = []
        self.grf_true = []
        self.power = []
        self.trunk_position = []
        self.trunk_quaternion = []
        self.trunk_velocity = []
        self.trunk_omega = []
        self.imu_accel = []
        self.imu_gyro = []
        self.contact = []
        self.calibration = calibration

    def __len__(self):
        return len(self.time)

    def append_from_world(self, world, controller=None):
        st = world.state
        self.time.append(st.time)
        self.q.append(st.q.reshape(-1).copy())
        self.qd.append(st.qd.reshape(-1).copy())
        self.tau.append(world.last_torques.reshape(-1).copy())
        self.grf_est.append(world.estimated_grf_world(self.calibration).reshape(-1))
        self.grf_true.append(world.contact_state.force.reshape(-1).copy())
        self.power.append(world.actuator_power().reshape(-1))
        self.trunk_position.append(st.position.copy())
        self.trunk_quaternion.append(st.quaternion.copy())
        self.trunk_velocity.append(st.velocity.copy())
        self.trunk_omega.append(st.omega.copy())
        imu = world.imu_read()
        self.imu_accel.append(imu.accel)
        self.imu_gyro.append(imu.gyro)
        self.contact.append(world.contact_state.in_contact.astype(float).copy())

    # ---- array accessors --------------------------------------------------

    def times(self):
        return np.asarray(self.time)

    def array(self, name):
        return np.asarray(getattr(self, name))

    def rows(self):
        n = len(self.time)
        cols = [
            np.asarray(self.time).reshape(n, 1),
            np.asarray(self.q),
            np.asarray(self.qd),
            np.asarray(self.tau),
            np.asarray(self.grf_est),
            np.asarray(self.grf_true),
            np.asarray(self.power),
            np.asarray(self.trunk_position),
            np.asarray(self.trunk_quaternion),
            np.asarray(self.trunk_velocity),
            np.asarray(self.trunk_omega),
            np.asarray(self.imu_accel),
            np.asarray(self.imu_gyro),
            np.asarray(self.contact),
        ]
        return np.hstack(cols)

    def window(self, t_start=None, t_end=None, last_n=None):
        """Sample indices inside a time window (or the last N samples)."""
        t = self.times()
        if last_n is not None:
            return np.arange(max(0, len(t) - last_n), len(t))
        mask = np.ones(len(t), dtype=bool)
        if t_start is not None:
            mask &= t >= t_start
        if t_end is not None:
            mask &= t <= t_end
        return np.nonzero(mask)[0]

    # ---- export -------------------------------------------------------------

    def to_csv(self, path):
        rows = self.rows()
        with open(path, "w", newline="") as fh:
            fh.write(f"# schema={SCHEMA}\n")
            fh.write(",".join(COLUMNS) + "\n")
            for row in rows:
                fh.write(",".join(repr(float(v)) for v in row) + "\n")

    def to_jsonl(self, path):
        rows = self.rows()
        with open(path, "w") as fh:
            fh.write(json.dumps({"schema": SCHEMA, "columns": COLUMNS}) + "\n")
            for row in rows:
                fh.write(json.dumps([float(v) for v in row]) + "\n")


def resample_uniform(t, values, factor):
    """Linear resampling of a uniform series onto a grid ``factor``x finer."""
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    n_new = (len(t) - 1) * factor + 1
    t_new = np.linspace(t[0], t[-1], n_new)
    if values.ndim == 1:
        return t_new, np.interp(t_new, t, values)
    out = np.stack([np.interp(t_new, t, values[:, j]) for j in range(values.shape[1])], axis=1)
    return t_new, out
