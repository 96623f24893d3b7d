"""Serial-limb dynamics: inverse dynamics, swing-torque feasibility over
morphology space, and the pendulum-method moment-of-inertia oracle.

The equations of motion are evaluated by recursive Newton-Euler on the
three-joint serial approximation (see the kernel docs for the chain layout).
For four-link limbs the tarsus mass is lumped onto the distal end of the
tibia segment; the pose-exact analytics live in `morphology`.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .morphology import (
    LimbConfig,
    LimbMorphology,
    moment_of_inertia_about_hip,
    swinging_mass_properties,
)

__all__ = [
    "GRAVITY",
    "LimbDynamicsModel",
    "inverse_dynamics",
    "mass_matrix",
    "bias_torque",
    "limb_acceleration",
    "mechanical_energy",
    "SwingSpec",
    "make_swing_trajectory",
    "max_swing_torque",
    "FeasibilityMap",
    "feasibility_map",
    "pendulum_moi",
]

GRAVITY = 9.81


def _lump_point_mass(m, c, i_com, m_add, pos):
    """Merge a point mass at ``pos`` into a link (mass, COM, rod inertia)."""
    total = m + m_add
    if total <= 0:
        return m, c, i_com
    c_new = (m * c + m_add * pos) / total
    i_new = i_com + m * (c - c_new) ** 2 + m_add * (pos - c_new) ** 2
    return total, c_new, i_new


@dataclass
class LimbDynamicsModel:
    """Per-link mass properties flattened into the kernel parameter vector."""

    morph: LimbMorphology
    params: np.ndarray
    gravity: float = GRAVITY

    @classmethod
    def from_morphology(cls, morph, gravity=GRAVITY):
        a = morph.lateral_offset
        A = morph.effective_femur
        B = morph.l3
        links = []
        rod_axes = ("y", "z", "z")  # offset link along y, femur/tibia along z
        for i in range(3):
            m = morph.link_masses[i]
            c = morph.link_com_offsets[i]
            L = morph.link_lengths[i]
            i_rod = m * L * L / 12.0
            links.append([m, c, i_rod])
        if morph.config is LimbConfig.FOUR_LINK:
            m4 = morph.link_masses[3]
            # tarsus lumped at the distal end of the tibia segment
            links[2] = list(_lump_point_mass(*links[2], m4, B))
        am = morph.added_mass
        if am is not None and am.mass > 0:
            idx = am.link - 1
            if idx == 3:
                links[2] = list(_lump_point_mass(*links[2], am.mass, B))
            else:
                links[idx] = list(_lump_point_mass(*links[idx], am.mass, am.position))
        p = np.zeros(18)
        p[0], p[1], p[2] = a, A, B
        for i, (m, c, i_rod) in enumerate(links):
            base = 3 + 5 * i
            p[base] = m
            p[base + 1] = c
            if rod_axes[i] == "y":
                p[base + 2], p[base + 3], p[base + 4] = i_rod, 0.0, i_rod
            else:
                p[base + 2], p[base + 3], p[base + 4] = i_rod, i_rod, 0.0
        return cls(morph=morph, params=p, gravity=gravity)

    @property
    def total_mass(self):
        return float(self.params[3] + self.params[8] + self.params[13])

    def default_gravity_vector(self):
        return np.array([0.0, 0.0, -self.gravity])


def _gvec(model, g_vec):
    if g_vec is None:
        return model.default_gravity_vector()
    return np.asarray(g_vec, dtype=float)


def inverse_dynamics(model, q, qd, qdd, g_vec=None):
    """Joint torques satisfying the chain's equations of motion."""
    g = _gvec(model, g_vec)
    return np.array(
        K.rnea(
            model.params,
            float(q[0]), float(q[1]), float(q[2]),
            float(qd[0]), float(qd[1]), float(qd[2]),
            float(qdd[0]), float(qdd[1]), float(qdd[2]),
            g[0], g[1], g[2],
        )
    )


def bias_torque(model, q, qd, g_vec=None):
    """Coriolis/centrifugal + gravity torques (qdd = 0)."""
    return inverse_dynamics(model, q, qd, (0.0, 0.0, 0.0), g_vec)


def mass_matrix(model, q):
    """Joint-space mass matrix via unit-acceleration RNEA columns."""
    cols = [
        K.rnea(model.params, float(q[0]), float(q[1]), float(q[2]),
               0.0, 0.0, 0.0, *e, 0.0, 0.0, 0.0)
        for e in ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    ]
    return np.array(cols).T


def limb_acceleration(model, q, qd, tau, f_ext=None, g_vec=None):
    """Forward dynamics: qdd from torques and an optional limb-frame foot force."""
    g = _gvec(model, g_vec)
    f = (0.0, 0.0, 0.0) if f_ext is None else (float(f_ext[0]), float(f_ext[1]), float(f_ext[2]))
    return np.array(
        K.limb_acceleration(
            model.params,
            float(q[0]), float(q[1]), float(q[2]),
            float(qd[0]), float(qd[1]), float(qd[2]),
            float(tau[0]), float(tau[1]), float(tau[2]),
            f[0], f[1], f[2],
            g[0], g[1], g[2],
        )
    )


def _rot_x(t):
    c, s = math.cos(t), math.sin(t)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def _rot_y(t):
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def mechanical_energy(model, q, qd, g_vec=None):
    """(kinetic, potential) energy of the limb, by velocity kinematics.

    Independent of the RNEA path; used for power-balance checks and the
    simulator's energy bookkeeping.
    """
    g = _gvec(model, g_vec)
    p = model.params
    a, A = p[0], p[1]
    R1 = _rot_x(q[0])
    R2 = R1 @ _rot_y(-q[1])
    R3 = R2 @ _rot_y(-q[2])
    o2 = R1 @ np.array([0.0, a, 0.0])
    o3 = o2 + R2 @ np.array([0.0, 0.0, -A])
    w1 = qd[0] * np.array([1.0, 0.0, 0.0])
    w2 = w1 + qd[1] * (R1 @ np.array([0.0, -1.0, 0.0]))
    w3 = w2 + qd[2] * (R2 @ np.array([0.0, -1.0, 0.0]))
    coms = (
        R1 @ np.array([0.0, p[4], 0.0]),
        o2 + R2 @ np.array([0.0, 0.0, -p[9]]),
        o3 + R3 @ np.array([0.0, 0.0, -p[14]]),
    )
    vo2 = np.cross(w1, o2)
    vo3 = vo2 + np.cross(w2, o3 - o2)
    vcs = (
        np.cross(w1, coms[0]),
        vo2 + np.cross(w2, coms[1] - o2),
        vo3 + np.cross(w3, coms[2] - o3),
    )
    masses = (p[3], p[8], p[13])
    inertias = (np.diag(p[5:8]), np.diag(p[10:13]), np.diag(p[15:18]))
    rots = (R1, R2, R3)
    omegas = (w1, w2, w3)
    ke = 0.0
    pe = 0.0
    for m, inertia, R, w, c, vc in zip(masses, inertias, rots, omegas, coms, vcs):
        wl = R.T @ w
        ke += 0.5 * m * float(vc @ vc) + 0.5 * float(wl @ (inertia @ wl))
        pe -= m * float(g @ c)
    return ke, pe


@dataclass
class SwingSpec:
    """Sinusoidal joint sweep used for the torque-feasibility analysis.

    Defaults: hip sweep of +/-30 deg at the stride frequency of a 0.5 s trot
    period, knee sweep of +/-20 deg in antiphase, ab/ad held.  These are
    stated assumptions, echoed into all feasibility-map metadata.
    """

    amplitude: tuple = (0.0, math.radians(30.0), math.radians(20.0))
    frequency_hz: float = 2.0
    center: tuple = (0.0, 0.0, math.radians(40.0))
    phase: tuple = (0.0, 0.0, math.pi)
    samples: int = 120

    def describe(self):
        return {
            "amplitude_rad": list(self.amplitude),
            "frequency_hz": self.frequency_hz,
            "center_rad": list(self.center),
            "phase_rad": list(self.phase),
            "samples": self.samples,
        }


def make_swing_trajectory(spec):
    """Time, q, qd, qdd arrays for one period of the swing spec."""
    w = 2.0 * math.pi * spec.frequency_hz
    t = np.linspace(0.0, 1.0 / spec.frequency_hz, spec.samples, endpoint=False)
    amp = np.asarray(spec.amplitude)
    ctr = np.asarray(spec.center)
    ph = np.asarray(spec.phase)
    arg = w * t[:, None] + ph[None, :]
    q = ctr[None, :] + amp[None, :] * np.sin(arg)
    qd = amp[None, :] * w * np.cos(arg)
    qdd = -amp[None, :] * w * w * np.sin(arg)
    return t, q, qd, qdd


def max_swing_torque(model, trajectory, check_consistency=True):
    """Per-joint peak |torque| over a (t, q, qd, qdd) trajectory.

    Verifies that qd and qdd are consistent with q by central differences
    (tolerance scales with the sampling rate) unless disabled.
    """
    t, q, qd, qdd = trajectory
    t = np.asarray(t, dtype=float)
    q = np.asarray(q, dtype=float)
    qd = np.asarray(qd, dtype=float)
    qdd = np.asarray(qdd, dtype=float)
    if check_consistency and len(t) >= 3:
        dt = np.diff(t)
        if np.any(dt <= 0):
            raise ValueError("trajectory times must be strictly increasing")
        fd = (q[2:] - q[:-2]) / (t[2:] - t[:-2])[:, None]
        scale = max(1.0, float(np.max(np.abs(qd))))
        err = np.max(np.abs(fd - qd[1:-1])) / scale
        # central differences of a sampled sinusoid are 2nd-order accurate
        h = float(np.max(dt))
        wmax = math.sqrt(max(float(np.max(np.abs(qdd))) / scale, 1.0))
        tol = max(1e-6, 0.5 * (wmax * h) ** 2)
        if err > tol:
            raise ValueError(f"trajectory q/qd inconsistent (rel err {err:.2e} > {tol:.2e})")
    peaks = np.zeros(3)
    for qi, qdi, qddi in zip(q, qd, qdd):
        tau = inverse_dynamics(model, qi, qdi, qddi)
        peaks = np.maximum(peaks, np.abs(tau))
    return peaks


@dataclass
class FeasibilityMap:
    """Torque/speed feasibility of a swing motion over a limb-length grid."""

    femur_lengths: np.ndarray
    tibia_lengths: np.ndarray
    feasible: np.ndarray  # bool (n_femur, n_tibia)
    peak_torque: np.ndarray  # (n_femur, n_tibia, 3)
    metadata: dict = field(default_factory=dict)

    def contains(self, other):
        """True if this map's feasible region is a superset of the other's."""
        return bool(np.all(self.feasible | ~other.feasible))

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["femur_m", "tibia_m", "feasible", "peak_tau1_nm", "peak_tau2_nm", "peak_tau3_nm"]
            )
            for i, lf in enumerate(self.femur_lengths):
                for j, lt in enumerate(self.tibia_lengths):
                    writer.writerow(
                        [
                            repr(float(lf)),
                            repr(float(lt)),
                            int(self.feasible[i, j]),
                            repr(float(self.peak_torque[i, j, 0])),
                            repr(float(self.peak_torque[i, j, 1])),
                            repr(float(self.peak_torque[i, j, 2])),
                        ]
                    )


def feasibility_map(actuator, swing=None, femur_range=(0.05, 0.45), tibia_range=(0.05, 0.45),
                    resolution=50, linear_density=0.75, base_limb=None):
    """Evaluate swing feasibility over a (femur, tibia) length grid.

    A cell is feasible iff every per-joint torque peak stays within the
    actuator's output torque limit and the swing's peak joint speed stays
    within the output speed limit at the actuator's gear ratio.  Link masses
    scale with length at ``linear_density`` (kg/m, uniform printed links).
    """
    if swing is None:
        swing = SwingSpec()
    if base_limb is None:
        base_limb = LimbMorphology()
    traj = make_swing_trajectory(swing)
    femur = np.linspace(femur_range[0], femur_range[1], resolution)
    tibia = np.linspace(tibia_range[0], tibia_range[1], resolution)
    feasible = np.zeros((resolution, resolution), dtype=bool)
    peaks = np.zeros((resolution, resolution, 3))
    tau_limit = actuator.max_output_torque
    speed_limit = actuator.max_output_speed
    peak_speed = float(np.max(np.abs(traj[2])))
    speed_ok = peak_speed <= speed_limit
    for i, lf in enumerate(femur):
        for j, lt in enumerate(tibia):
            limb = LimbMorphology(
                config=base_limb.config,
                l1=base_limb.l1,
                l2=float(lf),
                l3=float(lt),
                l4=base_limb.l4,
                knee_direction=base_limb.knee_direction,
                link_masses=(
                    base_limb.link_masses[0],
                    linear_density * float(lf),
                    linear_density * float(lt),
                ),
                link_com_offsets=None,
            )
            model = LimbDynamicsModel.from_morphology(limb)
            p = max_swing_torque(model, traj, check_consistency=False)
            peaks[i, j] = p
            feasible[i, j] = speed_ok and bool(np.all(p <= tau_limit))
    meta = {
        "gear_ratio": actuator.gear_ratio,
        "max_output_torque_nm": tau_limit,
        "max_output_speed_rad_s": speed_limit,
        "peak_joint_speed_rad_s": peak_speed,
        "linear_density_kg_m": linear_density,
        "swing": swing.describe(),
        "assumptions": [
            "swing trajectory is an assumed sinusoidal sweep (not stated by hardware)",
            "link mass scales linearly with length (uniform printed links)",
            "gearbox efficiency 100%",
        ],
    }
    return FeasibilityMap(femur, tibia, feasible, peaks, meta)


def pendulum_moi(morph, amplitude=0.05, gravity=GRAVITY, cycles=6, dt=2e-4, pose=None):
    """Moment of inertia about the hip pitch axis by the pendulum method.

    Swings the rigid frozen limb assembly about the pitch joint from the
    given amplitude, detects zero crossings of the angle to measure the mean
    period T, and returns T^2 m g d / (4 pi^2).  Independent of the analytic
    parallel-axis computation except for the physical pendulum ODE itself.
    """
    if amplitude <= 0 or amplitude > 0.5:
        raise ValueError("amplitude must be in (0, 0.5] rad for the small-angle regime")
    i_true = moment_of_inertia_about_hip(morph, pose)
    m, d = swinging_mass_properties(morph, pose)
    if m <= 0 or d <= 0 or i_true <= 0:
        raise ValueError("degenerate limb: pendulum undefined for zero mass or COM at pivot")
    mgd = m * gravity * d

    def accel(theta):
        return -mgd / i_true * math.sin(theta)

    theta = amplitude
    omega = 0.0
    t = 0.0
    crossings = []
    prev_theta = theta
    t_max = cycles * 2.5 * 2.0 * math.pi * math.sqrt(i_true / mgd)
    while t < t_max and len(crossings) < 2 * cycles:
        # velocity-Verlet step
        acc = accel(theta)
        half = omega + 0.5 * dt * acc
        theta_new = theta + dt * half
        omega = half + 0.5 * dt * accel(theta_new)
        t += dt
        if prev_theta > 0.0 >= theta_new:
            # downward zero crossing; linear interpolation in time
            frac = prev_theta / (prev_theta - theta_new)
            crossings.append(t - dt + frac * dt)
        prev_theta = theta_new
        theta = theta_new
    if len(crossings) < 2:
        raise RuntimeError("pendulum simulation detected no oscillation")
    periods = np.diff(crossings)
    period = float(np.mean(periods))
    return period * period * mgd / (4.0 * math.pi * math.pi)
