"""Trot gait scheduling, swing trajectories, and the stance/swing controller.

The controller follows the standard legged-robot split: stance legs transmit
QP-allocated contact forces as feedforward torques (tau = J^T applied to the
leg's share of the reaction, plus light joint damping), swing legs track a
quintic foot trajectory through closed-form IK and joint impedance.  Foot
placement uses a capture-style heuristic around the hip.  The controller is
a pure function of the state stream: rerunning an identical trial reproduces
identical commands bit for bit.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import WorkspaceError
from .kinematics import (
    forward_kinematics,
    inverse_kinematics,
    jacobian_foot,
)
from .morphology import LEG_NAMES, LEG_SIDE_SIGN
from .qpalloc import allocate_stance_forces
from .state import orientation_error, quat_to_matrix

__all__ = [
    "GaitSchedule",
    "LegPhase",
    "schedule_at",
    "SwingTrajectory",
    "swing_position",
    "swing_velocity",
    "LegCommand",
    "ControlGains",
    "Controller",
]

# diagonal trot pairs: (FR, HL) lead, (FL, HR) in antiphase
TROT_OFFSETS = (0.0, 0.5, 0.5, 0.0)


@dataclass
class GaitSchedule:
    period: float = 0.35
    duty_factor: float = 0.5
    offsets: tuple = TROT_OFFSETS

    def validate(self):
        out = []
        if not (self.period > 0 and math.isfinite(self.period)):
            out.append("gait.period: must be > 0")
        if not (0.0 < self.duty_factor < 1.0):
            out.append("gait.duty_factor: must lie strictly inside (0, 1)")
        if len(self.offsets) != 4:
            out.append("gait.offsets: need 4 entries")
        elif any(not (0.0 <= o < 1.0) for o in self.offsets):
            out.append("gait.offsets: must lie in [0, 1)")
        elif abs(self.offsets[0] - self.offsets[3]) > 1e-12 or abs(
            self.offsets[1] - self.offsets[2]
        ) > 1e-12:
            out.append("gait.offsets: diagonal pairs (FR,HL) and (FL,HR) must be synchronized")
        return out


@dataclass
class LegPhase:
    stance: np.ndarray  # bool (4,)
    phase: np.ndarray  # leg phase in [0, 1)
    swing_phase: np.ndarray  # progress through swing, 0 outside swing
    stance_phase: np.ndarray  # progress through stance, 0 outside stance


def schedule_at(gait, t):
    """Stance/swing flags and per-leg phases at time t >= 0."""
    if t < 0:
        raise ValueError("t must be >= 0")
    offsets = np.asarray(gait.offsets, dtype=float)
    phase = np.mod(t / gait.period - offsets, 1.0)
    stance = phase < gait.duty_factor
    swing_phase = np.where(
        stance, 0.0, (phase - gait.duty_factor) / (1.0 - gait.duty_factor)
    )
    stance_phase = np.where(stance, phase / gait.duty_factor, 0.0)
    return LegPhase(stance=stance, phase=phase, swing_phase=swing_phase, stance_phase=stance_phase)


def _smoothstep5(u):
    """Quintic 0->1 blend with zero velocity and acceleration at both ends."""
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u))


def _smoothstep5_d(u):
    return 30.0 * u * u * (1.0 + u * (-2.0 + u))


@dataclass
class SwingTrajectory:
    """Lift-off to touchdown arc with a specified apex clearance.

    Horizontal components blend with a quintic; the vertical component adds
    a two-segment quintic bump peaking at phase 0.5, `clearance` above the
    lift-off/touchdown line.  C1 everywhere (C2 at the apex), zero vertical
    velocity at the apex for level strides.
    """

    lift_off: np.ndarray
    touchdown: np.ndarray
    clearance: float

    def __post_init__(self):
        self.lift_off = np.asarray(self.lift_off, dtype=float)
        self.touchdown = np.asarray(self.touchdown, dtype=float)


def _bump(phase):
    if phase <= 0.5:
        return _smoothstep5(2.0 * phase)
    return _smoothstep5(2.0 * (1.0 - phase))


def _bump_d(phase):
    if phase <= 0.5:
        return 2.0 * _smoothstep5_d(2.0 * phase)
    return -2.0 * _smoothstep5_d(2.0 * (1.0 - phase))


def swing_position(traj, phase):
    """Foot position at swing phase in [0, 1]."""
    if not (0.0 <= phase <= 1.0):
        raise ValueError(f"swing phase {phase} outside [0, 1]")
    s = _smoothstep5(phase)
    p = traj.lift_off + (traj.touchdown - traj.lift_off) * s
    p = p.copy()
    p[2] += traj.clearance * _bump(phase)
    return p


def swing_velocity(traj, phase, swing_duration):
    """Foot velocity at swing phase (per second of wall time)."""
    if not (0.0 <= phase <= 1.0):
        raise ValueError(f"swing phase {phase} outside [0, 1]")
    ds = _smoothstep5_d(phase)
    v = (traj.touchdown - traj.lift_off) * ds
    v = v.copy()
    v[2] += traj.clearance * _bump_d(phase)
    return v / swing_duration


@dataclass
class LegCommand:
    """Joint-space command for one leg, applied by the actuator impedance law."""

    stance: bool
    q_des: np.ndarray
    qd_des: np.ndarray
    kp: np.ndarray
    kd: np.ndarray
    tau_ff: np.ndarray


@dataclass
class ControlGains:
    kp_height: float = 150.0  # 1/s^2, trunk height PD
    kd_height: float = 25.0  # 1/s
    kp_xy: float = 40.0  # 1/s^2, horizontal position hold (stand mode only)
    kd_velocity: float = 15.0  # 1/s, horizontal velocity tracking
    ki_velocity: float = 8.0  # 1/s^2, removes steady-state speed error
    velocity_integral_max: float = 0.5  # m/s, anti-windup clamp
    kp_orientation: float = 80.0  # N*m/rad
    kd_orientation: float = 10.0  # N*m*s/rad
    kp_swing: float = 150.0  # N*m/rad
    kd_swing: float = 3.0  # N*m*s/rad
    kd_stance: float = 1.0  # N*m*s/rad joint damping in stance
    capture_gain: float = 0.05  # s, foot placement feedback
    moment_weight: float = 2.0  # QP weighting of moment vs force rows
    qp_regularization: float = 1e-6


@dataclass
class Controller:
    """Stance-force + swing-trajectory controller for one robot.

    ``mode`` is "trot" or "stand".  In stand mode all legs are stance and
    the trunk tracks position/orientation references (used by the rotation
    protocol); in trot mode the gait schedule drives stance/swing and the
    trunk tracks commanded planar velocity at the target height.
    """

    body: object
    actuator: object
    gait: GaitSchedule = field(default_factory=GaitSchedule)
    gains: ControlGains = field(default_factory=ControlGains)
    mode: str = "trot"
    command_velocity: np.ndarray = field(default_factory=lambda: np.zeros(3))
    standing_height: float = 0.30
    clearance: float = 0.06
    friction: float = 0.6
    gravity: float = 9.81
    orientation_ref: object = None  # callable t -> quaternion, stand mode
    position_ref: object = None  # callable t -> xyz, stand mode
    velocity_profile: object = None  # callable t -> xyz, overrides command_velocity

    def __post_init__(self):
        self.command_velocity = np.asarray(self.command_velocity, dtype=float)
        self._mass = self.body.total_mass
        self._sides = np.array([LEG_SIDE_SIGN[n] for n in LEG_NAMES])
        self._liftoff = [None] * 4
        self._touchdown_target = [None] * 4
        self._last_stance = [True] * 4
        self._stand_feet = None
        self._v_err_int = np.zeros(2)
        self._last_tick_t = None

    # ---- helpers -------------------------------------------------------

    def _foot_world(self, state, leg, R):
        morph = self.body.limbs[leg]
        p_limb = forward_kinematics(morph, state.q[leg])
        mirrored = p_limb * np.array([1.0, self._sides[leg], 1.0])
        return state.position + R @ (self.body.hip_positions[leg] + mirrored)

    def _limb_target_from_world(self, state, leg, p_world, R):
        rel = R.T @ (p_world - state.position) - self.body.hip_positions[leg]
        return rel * np.array([1.0, self._sides[leg], 1.0])

    def reset(self):
        self._liftoff = [None] * 4
        self._touchdown_target = [None] * 4
        self._last_stance = [True] * 4
        self._stand_feet = None
        self._v_err_int = np.zeros(2)
        self._last_tick_t = None

    def commanded_velocity(self, t):
        if self.velocity_profile is not None:
            return np.asarray(self.velocity_profile(t), dtype=float)
        return self.command_velocity

    # ---- wrench reference ----------------------------------------------

    def _desired_wrench(self, state, t):
        g = self.gains
        R = state.rotation()
        accel = np.zeros(3)
        if self.mode == "stand":
            p_ref = self.position_ref(t) if self.position_ref is not None else np.array(
                [0.0, 0.0, self.standing_height]
            )
            accel[:2] = g.kp_xy * (p_ref[:2] - state.position[:2]) - g.kd_velocity * state.velocity[:2]
            accel[2] = g.kp_height * (p_ref[2] - state.position[2]) - g.kd_height * state.velocity[2]
            q_des = (
                self.orientation_ref(t)
                if self.orientation_ref is not None
                else np.array([1.0, 0.0, 0.0, 0.0])
            )
        else:
            v_cmd = self.commanded_velocity(t)
            v_err = v_cmd[:2] - state.velocity[:2]
            if self._last_tick_t is not None and t > self._last_tick_t:
                self._v_err_int += v_err * (t - self._last_tick_t)
                lim = g.velocity_integral_max
                self._v_err_int = np.clip(self._v_err_int, -lim, lim)
            accel[:2] = g.kd_velocity * v_err + g.ki_velocity * self._v_err_int
            accel[2] = g.kp_height * (self.standing_height - state.position[2]) - g.kd_height * state.velocity[2]
            q_des = np.array([1.0, 0.0, 0.0, 0.0])
        self._last_tick_t = t
        force = self._mass * (accel + np.array([0.0, 0.0, self.gravity]))
        e_rot = orientation_error(q_des, state.quaternion)
        omega_world = R @ state.omega
        moment = g.kp_orientation * e_rot - g.kd_orientation * omega_world
        return np.concatenate([force, moment])

    # ---- main tick -------------------------------------------------------

    def control_tick(self, state, t=None):
        """Per-leg joint commands for the current state.

        Returns a list of four LegCommand.  Workspace errors from swing IK
        propagate with the leg name attached.
        """
        if t is None:
            t = state.time
        R = state.rotation()
        if self.mode == "stand":
            stance = np.array([True] * 4)
            swing_phase = np.zeros(4)
        else:
            phases = schedule_at(self.gait, t)
            stance = phases.stance
            swing_phase = phases.swing_phase

        feet_world = [self._foot_world(state, leg, R) for leg in range(4)]
        commands = [None] * 4

        stance_ids = [i for i in range(4) if stance[i]]
        forces = {}
        if stance_ids:
            wrench = self._desired_wrench(state, t)
            rel = np.array([feet_world[i] - state.position for i in stance_ids])
            alloc = allocate_stance_forces(
                rel,
                wrench,
                mu=self.friction,
                reg=self.gains.qp_regularization,
                moment_weight=self.gains.moment_weight,
            )
            for k, i in enumerate(stance_ids):
                forces[i] = alloc.forces[k]

        swing_T = self.gait.period * (1.0 - self.gait.duty_factor)
        for leg in range(4):
            morph = self.body.limbs[leg]
            mirror = np.array([1.0, self._sides[leg], 1.0])
            if stance[leg]:
                f_world = forces[leg]
                f_limb = mirror * (R.T @ f_world)
                J = jacobian_foot(morph, state.q[leg])
                tau_ff = -J.T @ f_limb
                commands[leg] = LegCommand(
                    stance=True,
                    q_des=state.q[leg].copy(),
                    qd_des=np.zeros(3),
                    kp=np.zeros(3),
                    kd=np.full(3, self.gains.kd_stance),
                    tau_ff=tau_ff,
                )
                self._liftoff[leg] = None
            else:
                if self._liftoff[leg] is None:
                    self._liftoff[leg] = feet_world[leg].copy()
                    self._liftoff[leg][2] = max(self._liftoff[leg][2], 0.0)
                target = self._touchdown_heuristic(state, leg, R, swing_T, swing_phase[leg], t)
                traj = SwingTrajectory(
                    lift_off=self._liftoff[leg], touchdown=target, clearance=self.clearance
                )
                phase = min(max(float(swing_phase[leg]), 0.0), 1.0)
                p_world = swing_position(traj, phase)
                v_world = swing_velocity(traj, phase, swing_T)
                p_limb = self._limb_target_from_world(state, leg, p_world, R)
                try:
                    q_des = inverse_kinematics(morph, p_limb, seed=state.q[leg])
                except WorkspaceError as err:
                    q_des = inverse_kinematics(morph, err.nearest, seed=state.q[leg])
                v_limb = mirror * (R.T @ v_world)
                J = jacobian_foot(morph, q_des)
                det = np.linalg.det(J)
                if abs(det) > 1e-6:
                    qd_des = np.linalg.solve(J, v_limb)
                else:
                    qd_des = np.zeros(3)
                commands[leg] = LegCommand(
                    stance=False,
                    q_des=q_des,
                    qd_des=qd_des,
                    kp=np.full(3, self.gains.kp_swing),
                    kd=np.full(3, self.gains.kd_swing),
                    tau_ff=np.zeros(3),
                )
        self._last_stance = list(stance)
        return commands

    def _touchdown_heuristic(self, state, leg, R, swing_T, swing_phase, t):
        """Capture-style foot placement: symmetric stance point plus velocity
        error feedback, projected to the ground plane under the hip."""
        hip_world = state.position + R @ self.body.hip_positions[leg]
        t_remaining = (1.0 - swing_phase) * swing_T
        v = state.velocity.copy()
        v[2] = 0.0
        v_cmd = self.commanded_velocity(t).copy()
        v_cmd[2] = 0.0
        stance_T = self.gait.period * self.gait.duty_factor
        target = hip_world + v * t_remaining + 0.5 * stance_T * v + self.gains.capture_gain * (
            v - v_cmd
        )
        target[2] = 0.0
        # keep the target inside a conservative workspace disc under the hip
        reach = self.body.limbs[leg].reach
        lateral = R @ (
            np.array([0.0, self._sides[leg] * self.body.limbs[leg].lateral_offset, 0.0])
        )
        center = hip_world + lateral + v * t_remaining
        center[2] = 0.0
        offset = target[:2] - center[:2]
        max_r = 0.6 * reach
        norm = float(np.linalg.norm(offset))
        if norm > max_r:
            target[:2] = center[:2] + offset * (max_r / norm)
        return target
