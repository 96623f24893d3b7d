"""Deterministic rigid-body world: trunk 6-DOF + 12 joint DOF.

Model summary (choices echoed into output metadata):

* Limb dynamics run in the trunk frame under the same serial simplification
  as the kinematics; trunk-motion coupling into the limbs is neglected, so
  estimate-vs-truth GRF discrepancies come from contact modeling, friction,
  limb weight, and calibration.
* Ground contact is a penalty spring-damper with regularized Coulomb
  friction on the plane z = 0 (optional belt velocity).
* Integration is kick-drift-kick velocity Verlet: symplectic for the
  conservative part (keeps contact-free energy drift well below the 0.1%/s
  budget) and exact for ballistic trunk motion.
* Actuator torques are zero-order-held over each physics step, saturated at
  the actuator output limit.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .actuation import electrical_power
from .dynamics import GRAVITY, LimbDynamicsModel
from .errors import ProtocolAborted, SimulationDiverged
from .kinematics import estimate_grf, inverse_kinematics
from .morphology import LEG_NAMES, LEG_SIDE_SIGN
from .state import RobotState, quat_from_rotvec, quat_integrate, quat_to_matrix
from .errors import SingularityError

__all__ = [
    "ContactParams",
    "ContactState",
    "ImuSample",
    "ImuNoise",
    "World",
    "standing_pose",
    "simulate",
    "run_rotation_protocol",
    "integrate_velocity",
]


@dataclass
class ContactParams:
    stiffness: float = 2.0e4  # N/m, normal penalty spring
    damping: float = 200.0  # N*s/m, normal damping (stability-capped per leg)
    friction: float = 0.6
    tangential_stiffness: float = 2.0e4  # N/m, friction anchor spring
    damping_cap: float = 0.5  # fraction of m_eff/dt damping may reach
    ground_velocity: tuple = (0.0, 0.0)  # belt boundary condition

    def describe(self):
        return {
            "stiffness_n_m": self.stiffness,
            "damping_n_s_m": self.damping,
            "friction": self.friction,
            "tangential_stiffness_n_m": self.tangential_stiffness,
            "damping_cap": self.damping_cap,
            "ground_velocity_m_s": list(self.ground_velocity),
        }


@dataclass
class ContactState:
    in_contact: np.ndarray  # bool (4,)
    depth: np.ndarray  # (4,)
    force: np.ndarray  # (4, 3) world frame, force on the robot


@dataclass
class ImuSample:
    accel: np.ndarray  # specific force, body frame (gravity included)
    gyro: np.ndarray  # angular velocity, body frame
    timestamp: float


@dataclass
class ImuNoise:
    accel_sigma: float = 0.0  # m/s^2 per sample
    gyro_sigma: float = 0.0  # rad/s per sample
    accel_bias: tuple = (0.0, 0.0, 0.0)
    gyro_bias: tuple = (0.0, 0.0, 0.0)


class World:
    """One simulated robot on flat ground."""

    def __init__(self, body, actuator, contact=None, dt=1e-3, gravity=GRAVITY,
                 seed=0, imu_noise=None, state=None):
        self.body = body
        self.actuator = actuator
        self.contact_params = contact if contact is not None else ContactParams()
        self.dt = float(dt)
        self.gravity = float(gravity)
        self.seed = int(seed)
        self.rng = np.random.default_rng(self.seed)
        self.imu_noise = imu_noise if imu_noise is not None else ImuNoise()
        self.models = [
            LimbDynamicsModel.from_morphology(limb, gravity=gravity) for limb in body.limbs
        ]
        self.sides = np.array([LEG_SIDE_SIGN[n] for n in LEG_NAMES])
        self.mass = body.total_mass
        self.inertia = np.asarray(body.trunk_inertia, dtype=float)
        self.inertia_inv = np.linalg.inv(self.inertia)
        self.state = state.copy() if state is not None else RobotState()
        self.contact_state = ContactState(
            in_contact=np.zeros(4, dtype=bool), depth=np.zeros(4), force=np.zeros((4, 3))
        )
        self.last_torques = np.zeros((4, 3))
        self.last_acceleration = np.zeros(3)  # trunk world acceleration, for the IMU
        self._anchors = [None] * 4  # friction anchor per foot, world xy

    # ---- kinematic helpers ----------------------------------------------

    def foot_positions_world(self, state=None):
        st = state if state is not None else self.state
        R = quat_to_matrix(st.quaternion)
        out = np.zeros((4, 3))
        for leg in range(4):
            m = self.body.limbs[leg]
            p = K.fk(m.lateral_offset, m.effective_femur, m.l3, *st.q[leg])
            local = self.body.hip_positions[leg] + np.array(
                [p[0], self.sides[leg] * p[1], p[2]]
            )
            out[leg] = st.position + R @ local
        return out

    # ---- dynamics --------------------------------------------------------

    def _eval(self, position, quaternion, velocity, omega, q, qd, torques, anchors, h):
        """Accelerations and contact forces for the given state snapshot.

        ``anchors`` are the per-foot friction anchor points (read-only here;
        slid anchors are returned for the caller to commit once per step).
        """
        R = quat_to_matrix(quaternion)
        g_world = np.array([0.0, 0.0, -self.gravity])
        cp = self.contact_params
        arm = self.actuator.reflected_inertia
        total_f = np.zeros(3)
        total_m = np.zeros(3)
        qdd = np.zeros((4, 3))
        forces = np.zeros((4, 3))
        depths = np.zeros(4)
        new_anchors = [None] * 4
        g_body = R.T @ g_world
        for leg in range(4):
            s = self.sides[leg]
            P = self.models[leg].params
            a_, A_, B_ = P[0], P[1], P[2]
            q1, q2, q3 = q[leg]
            px, py, pz = K.fk(a_, A_, B_, q1, q2, q3)
            local = self.body.hip_positions[leg] + np.array([px, s * py, pz])
            p_w = position + R @ local
            J = np.array(K.jacobian(a_, A_, B_, q1, q2, q3)).reshape(3, 3)
            v_rel = J @ qd[leg]
            v_w = velocity + R @ (np.cross(omega, local) + np.array(
                [v_rel[0], s * v_rel[1], v_rel[2]]
            ))
            # contact damping capped by the foot's apparent mass for
            # explicit-integration stability at the configured dt
            mx, my, mz = K.foot_apparent_mass(P, q1, q2, q3, arm)
            m_min = max(min(mx, my, mz), 1e-4)
            cap = cp.damping_cap * m_min / h
            cn = min(cp.damping, cap)
            ct = min(1.4 * math.sqrt(cp.tangential_stiffness * m_min), cap)
            anchor = anchors[leg]
            ax, ay = (p_w[0], p_w[1]) if anchor is None else (anchor[0], anchor[1])
            fx, fy, fz, nax, nay, flag = K.contact_force(
                p_w[0], p_w[1], p_w[2], v_w[0], v_w[1], v_w[2], ax, ay,
                cp.stiffness, cn, cp.tangential_stiffness, ct, cp.friction,
                cp.ground_velocity[0], cp.ground_velocity[1],
            )
            if flag > 0.0:
                new_anchors[leg] = (nax, nay)
            f_w = np.array([fx, fy, fz])
            forces[leg] = f_w
            depths[leg] = max(-p_w[2], 0.0)
            f_body = R.T @ f_w
            f_limb = np.array([f_body[0], s * f_body[1], f_body[2]])
            g_limb = np.array([g_body[0], s * g_body[1], g_body[2]])
            qdd[leg] = K.limb_acceleration(
                P, q1, q2, q3, qd[leg][0], qd[leg][1], qd[leg][2],
                torques[leg][0], torques[leg][1], torques[leg][2],
                f_limb[0], f_limb[1], f_limb[2],
                g_limb[0], g_limb[1], g_limb[2],
                arm,
            )
            total_f += f_w
            total_m += np.cross(p_w - position, f_w)
        accel = g_world + total_f / self.mass
        m_body = R.T @ total_m
        omega_dot = self.inertia_inv @ (m_body - np.cross(omega, self.inertia @ omega))
        return accel, omega_dot, qdd, forces, depths, new_anchors

    def _apply_torques(self, commands):
        """Impedance law + saturation, evaluated at the current state."""
        tau = np.zeros((4, 3))
        limit = self.actuator.max_output_torque
        st = self.state
        for leg, cmd in enumerate(commands):
            for j in range(3):
                t = (
                    cmd.kp[j] * (cmd.q_des[j] - st.q[leg][j])
                    + cmd.kd[j] * (cmd.qd_des[j] - st.qd[leg][j])
                    + cmd.tau_ff[j]
                )
                tau[leg][j] = min(max(t, -limit), limit)
        return tau

    def step(self, commands, dt=None):
        """Advance one physics step (kick-drift-kick velocity Verlet).

        ``commands`` is a 4-list of LegCommand (or None to apply zero
        torques).  Raises SimulationDiverged on non-finite state.
        """
        h = self.dt if dt is None else float(dt)
        if not (0.0 < h <= 2e-3):
            raise ValueError("dt must lie in (0, 2 ms]")
        st = self.state
        if commands is None:
            tau = np.zeros((4, 3))
        else:
            tau = self._apply_torques(commands)
        self.last_torques = tau

        a1, wd1, qdd1, _, _, _ = self._eval(
            st.position, st.quaternion, st.velocity, st.omega, st.q, st.qd, tau,
            self._anchors, h,
        )
        v_half = st.velocity + 0.5 * h * a1
        w_half = st.omega + 0.5 * h * wd1
        qd_half = st.qd + 0.5 * h * qdd1

        pos_new = st.position + h * v_half
        quat_new = quat_integrate(st.quaternion, w_half, h)
        q_new = st.q + h * qd_half

        a2, wd2, qdd2, forces, depths, new_anchors = self._eval(
            pos_new, quat_new, v_half, w_half, q_new, qd_half, tau,
            self._anchors, h,
        )
        v_new = v_half + 0.5 * h * a2
        w_new = w_half + 0.5 * h * wd2
        qd_new = qd_half + 0.5 * h * qdd2

        finite = (
            np.all(np.isfinite(pos_new))
            and np.all(np.isfinite(v_new))
            and np.all(np.isfinite(q_new))
            and np.all(np.isfinite(qd_new))
            and np.all(np.isfinite(w_new))
        )
        if not finite:
            raise SimulationDiverged(st.time, st.copy())

        st.position = pos_new
        st.quaternion = quat_new
        st.velocity = v_new
        st.omega = w_new
        st.q = q_new
        st.qd = qd_new
        st.time += h
        self.last_acceleration = 0.5 * (a1 + a2)
        gv = self.contact_params.ground_velocity
        for leg in range(4):
            a = new_anchors[leg]
            if a is not None and (gv[0] != 0.0 or gv[1] != 0.0):
                a = (a[0] + gv[0] * h, a[1] + gv[1] * h)
            self._anchors[leg] = a
        self.contact_state = ContactState(
            in_contact=forces[:, 2] > 0.0, depth=depths, force=forces
        )
        return self.state, self.contact_state

    # ---- sensing ----------------------------------------------------------

    def imu_read(self):
        """Body-frame specific force and angular rate at the current state."""
        R = quat_to_matrix(self.state.quaternion)
        g_world = np.array([0.0, 0.0, -self.gravity])
        accel = R.T @ (self.last_acceleration - g_world)
        gyro = self.state.omega.copy()
        n = self.imu_noise
        if n.accel_sigma > 0.0:
            accel = accel + self.rng.normal(0.0, n.accel_sigma, 3)
        if n.gyro_sigma > 0.0:
            gyro = gyro + self.rng.normal(0.0, n.gyro_sigma, 3)
        accel = accel + np.asarray(n.accel_bias, dtype=float)
        gyro = gyro + np.asarray(n.gyro_bias, dtype=float)
        return ImuSample(accel=accel, gyro=gyro, timestamp=self.state.time)

    def estimated_grf_world(self, calibration=None):
        """Per-leg GRF estimate mapped to the world frame.

        Uses the reaction torque convention (negated actuator torque);
        returns NaN rows at near-singular leg poses instead of raising.
        ``calibration`` is an optional (4, 3) or (3,) per-axis scale applied
        in the limb frame.
        """
        out = np.full((4, 3), np.nan)
        R = quat_to_matrix(self.state.quaternion)
        for leg in range(4):
            m = self.body.limbs[leg]
            cal = None
            if calibration is not None:
                c = np.asarray(calibration, dtype=float)
                cal = c[leg] if c.ndim == 2 else c
            try:
                est = estimate_grf(m, self.state.q[leg], -self.last_torques[leg], cal=cal)
            except SingularityError:
                continue
            f_limb = est.force
            s = self.sides[leg]
            out[leg] = R @ np.array([f_limb[0], s * f_limb[1], f_limb[2]])
        return out

    def actuator_power(self):
        """Signed electrical power per actuator, (4, 3) at the current state."""
        out = np.zeros((4, 3))
        for leg in range(4):
            for j in range(3):
                out[leg][j] = electrical_power(
                    self.actuator, self.last_torques[leg][j], self.state.qd[leg][j]
                ).power
        return out

    def mechanical_energy(self):
        """Total bookkept mechanical energy (trunk + limbs-in-trunk-frame)."""
        st = self.state
        R = quat_to_matrix(st.quaternion)
        ke = 0.5 * self.mass * float(st.velocity @ st.velocity)
        ke += 0.5 * float(st.omega @ (self.inertia @ st.omega))
        pe = self.mass * self.gravity * st.position[2]
        g_world = np.array([0.0, 0.0, -self.gravity])
        g_body = R.T @ g_world
        from .dynamics import mechanical_energy as limb_energy

        arm = self.actuator.reflected_inertia
        for leg in range(4):
            s = self.sides[leg]
            g_limb = np.array([g_body[0], s * g_body[1], g_body[2]])
            lke, lpe = limb_energy(self.models[leg], st.q[leg], st.qd[leg], g_limb)
            ke += lke + 0.5 * arm * float(st.qd[leg] @ st.qd[leg])
            pe += lpe
        return ke + pe


def standing_pose(body, height, gravity=GRAVITY, contact=None, settle_penetration=True):
    """Initial state standing at the given trunk height, feet under hips."""
    st = RobotState()
    pen = 0.0
    if settle_penetration:
        k = (contact.stiffness if contact is not None else ContactParams.stiffness)
        pen = body.total_mass * gravity / (4.0 * k)
    st.position = np.array([0.0, 0.0, float(height)])
    for leg in range(4):
        m = body.limbs[leg]
        target = np.array([0.0, m.lateral_offset, -(height + pen)])
        st.q[leg] = inverse_kinematics(m, target)
    return st


def simulate(world, controller, duration, log=None, control_dt=2e-3, log_hz=500.0):
    """Run the control + physics loop, logging at the given rate."""
    n_steps = int(round(duration / world.dt))
    control_every = max(1, int(round(control_dt / world.dt)))
    log_every = max(1, int(round(1.0 / (log_hz * world.dt))))
    commands = None
    for i in range(n_steps):
        if i % control_every == 0:
            commands = controller.control_tick(world.state)
        world.step(commands)
        if log is not None and (i + 1) % log_every == 0:
            log.append_from_world(world, controller)
    return log


def run_rotation_protocol(world, controller, axis, reps=6,
                          amplitude=math.radians(10.0), frequency=0.5,
                          settle=1.0, log=None, log_hz=500.0):
    """Sinusoidal trunk rotations about one axis while standing.

    Commands ``reps`` full rotations of +/- ``amplitude`` about the chosen
    axis ("roll", "pitch", or "yaw") around a fixed COM, logging estimated
    and ground-truth GRFs.  Raises ProtocolAborted if any foot fully unloads
    for more than 0.1 s during the rotation window.
    """
    axes = {"roll": np.array([1.0, 0.0, 0.0]),
            "pitch": np.array([0.0, 1.0, 0.0]),
            "yaw": np.array([0.0, 0.0, 1.0])}
    if axis not in axes:
        raise ValueError(f"axis must be one of {sorted(axes)}")
    unit = axes[axis]
    height = controller.standing_height

    def orientation_ref(t):
        if t < settle:
            return np.array([1.0, 0.0, 0.0, 0.0])
        angle = amplitude * math.sin(2.0 * math.pi * frequency * (t - settle))
        return quat_from_rotvec(unit * angle)

    def position_ref(t):
        return np.array([0.0, 0.0, height])

    controller.mode = "stand"
    controller.orientation_ref = orientation_ref
    controller.position_ref = position_ref
    controller.reset()
    duration = settle + reps / frequency
    from .telemetry import TrialLog

    if log is None:
        log = TrialLog()
    simulate(world, controller, duration, log=log, log_hz=log_hz)
    t = np.asarray(log.time)
    window = t >= settle
    unloaded = np.asarray(log.grf_true)[window].reshape(-1, 4, 3)[:, :, 2] <= 0.0
    if unloaded.size:
        # consecutive unloaded samples per foot
        max_run = 0
        for leg in range(4):
            run = 0
            for flag in unloaded[:, leg]:
                run = run + 1 if flag else 0
                max_run = max(max_run, run)
        if max_run * (1.0 / log_hz) > 0.1:
            raise ProtocolAborted(
                f"foot unloaded for {max_run / log_hz:.3f} s during {axis} rotations"
            )
    return log


def integrate_velocity(samples, initial_velocity=(0.0, 0.0, 0.0),
                       initial_quaternion=(1.0, 0.0, 0.0, 0.0), gravity=GRAVITY):
    """Dead-reckoned world-frame velocity from an IMU sample stream.

    Strapdown attitude from the gyros, gravity-compensated trapezoidal
    integration of the rotated specific force.  Returns (velocities (N, 3),
    speeds (N,)); speeds are Euclidean norms per sample.  Requires uniform
    timestamps.
    """
    samples = list(samples)
    if len(samples) < 2:
        raise ValueError("need at least two IMU samples")
    times = np.array([s.timestamp for s in samples])
    dts = np.diff(times)
    if np.any(dts <= 0) or (np.max(dts) - np.min(dts)) > 1e-9 + 1e-6 * np.max(dts):
        raise ValueError("IMU timestamps must be uniform and increasing")
    g_world = np.array([0.0, 0.0, -gravity])
    q = np.asarray(initial_quaternion, dtype=float)
    v = np.asarray(initial_velocity, dtype=float).copy()
    vels = np.zeros((len(samples), 3))
    vels[0] = v
    R_prev = quat_to_matrix(q)
    f_prev = np.asarray(samples[0].accel, dtype=float)
    for k in range(1, len(samples)):
        dt = dts[k - 1]
        gyro_mid = 0.5 * (np.asarray(samples[k - 1].gyro) + np.asarray(samples[k].gyro))
        q = quat_integrate(q, gyro_mid, dt)
        R = quat_to_matrix(q)
        f = np.asarray(samples[k].accel, dtype=float)
        accel_world = 0.5 * ((R_prev @ f_prev) + (R @ f)) + g_world
        v = v + dt * accel_world
        vels[k] = v
        R_prev, f_prev = R, f
    speeds = np.linalg.norm(vels, axis=1)
    return vels, speeds
