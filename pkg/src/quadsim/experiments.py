"""Experiment harness: the three locomotion studies plus the feasibility map.

Experiment ids:
  grf-validation        torso-rotation protocol, estimated vs ground-truth
                        GRFs, per-limb per-axis RMSE table
  limb-ratio-kinematics foot trajectories across tibia:femur ratios at
                        equal total limb length and identical gait
  inertia-cot           cost of transport for unloaded / femur-loaded /
                        tibia-loaded payload placements
  feasibility-map       swing-torque feasibility over limb-length space at
                        two gear ratios

Every report embeds the fully resolved configuration, the seed, and all
assumed defaults; outputs are deterministic for a given (config, seed).
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels as K
from .dynamics import LimbDynamicsModel, feasibility_map, pendulum_moi
from .errors import SimulationDiverged
from .gait import Controller
from .kinematics import calibrate_axes
from .morphology import LEG_NAMES, AddedMass, BodyMorphology, LimbMorphology, moment_of_inertia_about_hip
from .telemetry import TrialLog
from .world import ImuSample, World, integrate_velocity, run_rotation_protocol, simulate, standing_pose

__all__ = [
    "EXPERIMENT_IDS",
    "ExperimentSpec",
    "TrialReport",
    "compute_cot",
    "run_experiment",
    "run_grf_validation",
    "run_limb_ratio_experiment",
    "run_inertia_cot_experiment",
    "run_feasibility_experiment",
    "REFERENCE_HARDWARE_RMSE_N",
    "REFERENCE_HARDWARE_TABLE",
]

EXPERIMENT_IDS = ("grf-validation", "limb-ratio-kinematics", "inertia-cot", "feasibility-map")

# Reference measurements from the physical platform, echoed alongside
# simulated results for comparison (hardware-specific; not reproduced).
REFERENCE_HARDWARE_RMSE_N = {
    "HR": (1.47, 2.51, 6.46),
    "HL": (2.86, 1.44, 5.49),
    "FR": (1.83, 2.83, 11.15),
    "FL": (1.29, 1.67, 6.84),
}
REFERENCE_HARDWARE_TABLE = {
    "peak_power_w": (9584.20, 18603.1, 21109.03),
    "mean_power_w": (5070.20, 9425.62, 9636.00),
    "peak_torque_nm": (21.59, 25.49, 27.70),
    "mean_torque_nm": (10.66, 13.19, 13.85),
    "cost_of_transport": (126.12, 135.57, 195.41),
    "moi_kgm2": (None, 0.062, 0.080),
}


@dataclass
class ExperimentSpec:
    experiment: str
    config: object
    seed: int = 0
    options: dict = field(default_factory=dict)

    def resolved_options(self):
        key = self.experiment.replace("-", "_")
        merged = dict(self.config.experiments.get(key, {}))
        merged.update(self.options)
        return merged


@dataclass
class TrialReport:
    name: str
    metrics: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    curves: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)


def _provenance(spec, assumptions):
    return {
        "experiment": spec.experiment,
        "seed": spec.seed,
        "options": spec.resolved_options(),
        "config": spec.config.to_dict(),
        "assumptions": list(assumptions),
        "kernel_backend": K.BACKEND,
    }


# ---------------------------------------------------------------------------
# shared trial machinery
# ---------------------------------------------------------------------------


def _make_world(cfg, body, seed):
    world = World(
        body,
        cfg.actuator,
        contact=cfg.contact,
        dt=cfg.sim.dt,
        gravity=cfg.sim.gravity,
        seed=seed,
        imu_noise=cfg.imu_noise(),
    )
    world.state = standing_pose(body, cfg.standing_height, cfg.sim.gravity, cfg.contact)
    return world


def _make_controller(cfg, body, mode="stand"):
    return Controller(
        body=body,
        actuator=cfg.actuator,
        gait=cfg.gait,
        gains=cfg.gains,
        mode=mode,
        standing_height=cfg.standing_height,
        clearance=cfg.clearance,
        friction=cfg.contact.friction,
        gravity=cfg.sim.gravity,
    )


def _trot_trial(cfg, body, seed, speed, travel_duration, settle=1.0, ramp=0.5):
    """Stand, then trot at the commanded speed; returns (world, ctrl, log)."""
    world = _make_world(cfg, body, seed)
    ctrl = _make_controller(cfg, body, mode="stand")
    log = TrialLog()
    simulate(world, ctrl, settle, log=log, control_dt=cfg.sim.control_dt, log_hz=cfg.sim.log_hz)
    t0 = world.state.time
    v_cmd = np.array([speed, 0.0, 0.0])
    ctrl.mode = "trot"
    ctrl.command_velocity = v_cmd
    ctrl.velocity_profile = lambda t: v_cmd * min(1.0, max(0.0, (t - t0) / ramp))
    ctrl.reset()
    simulate(
        world, ctrl, travel_duration, log=log, control_dt=cfg.sim.control_dt, log_hz=cfg.sim.log_hz
    )
    return world, ctrl, log


def _imu_samples_from_log(log):
    acc = log.array("imu_accel")
    gyr = log.array("imu_gyro")
    t = log.times()
    return [ImuSample(accel=acc[i], gyro=gyr[i], timestamp=t[i]) for i in range(len(t))]


def compute_cot(log, mass, speed_source="imu", gravity=9.81, window=None):
    """Cost of transport: mean summed positive electrical power over the
    analysis window divided by (mass * gravity * mean speed).

    ``speed_source`` selects the dead-reckoned IMU speed ("imu") or the
    logged trunk speed ("ground-truth").  Raises ValueError on an empty log
    or non-positive mean speed.
    """
    if len(log) == 0:
        raise ValueError("empty trial log")
    idx = np.arange(len(log)) if window is None else np.asarray(window)
    power = log.array("power")[idx]
    mean_power = float(np.clip(power, 0.0, None).sum(axis=1).mean())
    if speed_source == "imu":
        samples = _imu_samples_from_log(log)
        v0 = log.array("trunk_velocity")[0]
        q0 = log.array("trunk_quaternion")[0]
        _, speeds = integrate_velocity(samples, v0, q0, gravity)
        mean_speed = float(speeds[idx].mean())
    elif speed_source in ("ground-truth", "truth"):
        mean_speed = float(np.linalg.norm(log.array("trunk_velocity")[idx], axis=1).mean())
    else:
        raise ValueError(f"unknown speed source {speed_source!r}")
    if mean_speed <= 0.0:
        raise ValueError("mean speed must be positive to define cost of transport")
    return mean_power / (mass * gravity * mean_speed)


# ---------------------------------------------------------------------------
# GRF validation (rotation protocol)
# ---------------------------------------------------------------------------


def run_grf_validation(spec):
    """Rotation protocol on all three axes; per-limb per-axis RMSE table."""
    cfg = spec.config
    opts = spec.resolved_options()
    reps = int(opts.get("reps", 6))
    amplitude = float(opts.get("amplitude_deg", 10.0)) * math.pi / 180.0
    frequency = float(opts.get("frequency_hz", 0.5))
    settle = float(opts.get("settle_s", 1.0))
    axes = ("pitch", "yaw", "roll")

    est_parts = {leg: [] for leg in range(4)}
    true_parts = {leg: [] for leg in range(4)}
    curves = {}
    for axis in axes:
        world = _make_world(cfg, cfg.body, spec.seed)
        ctrl = _make_controller(cfg, cfg.body, mode="stand")
        log = run_rotation_protocol(
            world, ctrl, axis, reps=reps, amplitude=amplitude,
            frequency=frequency, settle=settle, log_hz=cfg.sim.log_hz,
        )
        t = log.times()
        win = t >= settle
        est = log.array("grf_est").reshape(len(t), 4, 3)[win]
        true = log.array("grf_true").reshape(len(t), 4, 3)[win]
        for leg in range(4):
            ok = np.all(np.isfinite(est[:, leg]), axis=1)
            est_parts[leg].append(est[ok, leg])
            true_parts[leg].append(true[ok, leg])
        curves[f"{axis}_front_right_z"] = {
            "series": {
                "estimated": (t[win], est[:, 0, 2]),
                "ground truth": (t[win], true[:, 0, 2]),
            },
            "xlabel": "time (s)",
            "ylabel": "vertical force (N)",
            "title": f"front-right GRF during {axis} rotations",
        }

    report = TrialReport(
        name="grf_validation",
        provenance=_provenance(
            spec,
            [
                f"rotation amplitude {math.degrees(amplitude):.1f} deg at {frequency} Hz (assumed)",
                "per-axis calibration fit on the same run (least squares, platform frame)",
            ],
        ),
        curves=curves,
    )
    rows = []
    for leg_idx, leg in enumerate(LEG_NAMES):
        est = np.vstack(est_parts[leg_idx])
        true = np.vstack(true_parts[leg_idx])
        uncal = np.sqrt(np.mean((est - true) ** 2, axis=0))
        scales = calibrate_axes((est, true))
        cal = np.sqrt(np.mean((est * scales - true) ** 2, axis=0))
        ref = REFERENCE_HARDWARE_RMSE_N[leg]
        for ax_i, ax in enumerate("xyz"):
            report.metrics[f"rmse_uncalibrated_{leg.lower()}_{ax}"] = float(uncal[ax_i])
            report.metrics[f"rmse_calibrated_{leg.lower()}_{ax}"] = float(cal[ax_i])
            report.metrics[f"calibration_scale_{leg.lower()}_{ax}"] = float(scales[ax_i])
            report.metrics[f"rmse_reference_hardware_{leg.lower()}_{ax}"] = float(ref[ax_i])
        rows.append(
            [leg, *(float(v) for v in uncal), *(float(v) for v in cal), *ref]
        )
    report.tables["rmse"] = {
        "headers": [
            "Leg",
            "X uncal (N)", "Y uncal (N)", "Z uncal (N)",
            "X cal (N)", "Y cal (N)", "Z cal (N)",
            "X ref (N)", "Y ref (N)", "Z ref (N)",
        ],
        "rows": rows,
    }
    return report


# ---------------------------------------------------------------------------
# limb-ratio kinematics
# ---------------------------------------------------------------------------


def _ratio_body(cfg, tibia_frac):
    """Body with every limb set to the given tibia fraction of the total
    articulated length; link masses unchanged (telescoping links)."""

    def remake(limb):
        total = limb.l2 + limb.l3
        return LimbMorphology(
            config=limb.config,
            l1=limb.l1,
            l2=(1.0 - tibia_frac) * total,
            l3=tibia_frac * total,
            l4=limb.l4,
            knee_direction=limb.knee_direction,
            link_masses=limb.link_masses,
            link_com_offsets=None,
            added_mass=limb.added_mass,
        )

    return BodyMorphology(
        trunk_mass=cfg.body.trunk_mass,
        trunk_inertia=cfg.body.trunk_inertia,
        hip_positions=cfg.body.hip_positions,
        limbs=tuple(remake(l) for l in cfg.body.limbs),
    )


def _hip_pitch_point_world(world, state, leg):
    from .state import quat_to_matrix

    m = world.body.limbs[leg]
    R = quat_to_matrix(state.quaternion)
    local = world.body.hip_positions[leg] + np.array(
        [0.0, world.sides[leg] * m.lateral_offset, 0.0]
    )
    return state.position + R @ local


def _stride_paths(world, log, period, marker_offset=0.0):
    """Per-leg foot paths over the last full stride, in the hip-anchored
    frame of the trajectory figures: x relative to the hip pitch axis,
    y = elevation above the ground plane."""
    t = log.times()
    t_end = t[-1]
    idx = np.nonzero((t > t_end - period - 1e-9))[0]
    q = log.array("q").reshape(len(t), 4, 3)
    pos = log.array("trunk_position")
    quat = log.array("trunk_quaternion")
    from .state import quat_to_matrix

    paths = {}
    for leg in range(4):
        m = world.body.limbs[leg]
        a_, A_, B_ = m.lateral_offset, m.effective_femur, m.l3
        s = world.sides[leg]
        xs, ys, closure_pts = [], [], []
        for i in idx:
            R = quat_to_matrix(quat[i])
            p = np.array(K.fk(a_, A_, B_, *q[i, leg]))
            foot_local = world.body.hip_positions[leg] + np.array([p[0], s * p[1], p[2]])
            foot_w = pos[i] + R @ foot_local
            if marker_offset > 0.0:
                from .kinematics import knee_position

                knee_local = knee_position(m, q[i, leg])
                knee_w = pos[i] + R @ (
                    world.body.hip_positions[leg]
                    + np.array([knee_local[0], s * knee_local[1], knee_local[2]])
                )
                d = knee_w - foot_w
                n = np.linalg.norm(d)
                if n > 1e-9:
                    foot_w = foot_w + marker_offset * d / n
            hip_w = pos[i] + R @ (
                world.body.hip_positions[leg] + np.array([0.0, s * a_, 0.0])
            )
            xs.append(foot_w[0] - hip_w[0])
            ys.append(foot_w[2])
            closure_pts.append(foot_w - hip_w)
        xs = np.array(xs)
        ys = np.array(ys)
        closure = float(np.linalg.norm(closure_pts[-1] - closure_pts[0]))
        apex = int(np.argmax(ys))
        x_span = float(xs.max() - xs.min())
        asym = 0.0
        if x_span > 1e-9:
            asym = float((xs[apex] - 0.5 * (xs.max() + xs.min())) / x_span)
        paths[LEG_NAMES[leg]] = {
            "x": xs,
            "y": ys,
            "peak_vertical": float(ys.max() - ys.min()),
            "excursion": x_span,
            "asymmetry": asym,
            "closure": closure,
        }
    return paths


def run_limb_ratio_experiment(spec):
    """Foot trajectories across tibia:femur ratios at equal total length."""
    cfg = spec.config
    opts = spec.resolved_options()
    ratios = opts.get("tibia_fractions", (0.45, 0.50, 0.55))
    speed = float(opts.get("speed_m_s", 0.1))
    strides = int(opts.get("strides", 14))
    settle = float(opts.get("settle_s", 1.0))
    marker_offset = float(opts.get("marker_offset_m", 0.0))
    duration = strides * cfg.gait.period

    report = TrialReport(
        name="limb_ratio_kinematics",
        provenance=_provenance(
            spec,
            [
                f"gait period {cfg.gait.period} s, duty {cfg.gait.duty_factor} (assumed defaults)",
                "foot paths are exact simulator positions"
                + (f" shifted {marker_offset} m along the tibia (marker transform)" if marker_offset else ""),
                "link masses held constant across ratios (telescoping links)",
            ],
        ),
    )
    hind_series = {}
    fore_series = {}
    for frac in ratios:
        label = f"{int(round(frac * 100))}:{int(round((1 - frac) * 100))}"
        body = _ratio_body(cfg, float(frac))
        try:
            world, ctrl, log = _trot_trial(
                cfg, body, spec.seed, speed, duration, settle=settle
            )
        except SimulationDiverged as exc:
            report.failures.append(f"ratio {label}: {exc}")
            continue
        paths = _stride_paths(world, log, cfg.gait.period, marker_offset)
        peaks = [paths[leg]["peak_vertical"] for leg in LEG_NAMES]
        closures = [paths[leg]["closure"] for leg in LEG_NAMES]
        key = label.replace(":", "_")
        report.metrics[f"peak_vertical_mean_m_{key}"] = float(np.mean(peaks))
        report.metrics[f"closure_max_m_{key}"] = float(np.max(closures))
        t = log.times()
        win = log.window(t_start=t[-1] - duration + settle)
        report.metrics[f"mean_speed_m_s_{key}"] = float(
            np.linalg.norm(log.array("trunk_velocity")[win][:, :2], axis=1).mean()
        )
        for leg in LEG_NAMES:
            p = paths[leg]
            lo = leg.lower()
            report.metrics[f"peak_vertical_m_{key}_{lo}"] = p["peak_vertical"]
            report.metrics[f"excursion_m_{key}_{lo}"] = p["excursion"]
            report.metrics[f"asymmetry_{key}_{lo}"] = p["asymmetry"]
            report.metrics[f"closure_m_{key}_{lo}"] = p["closure"]
        hind_series[label] = (paths["HR"]["x"], paths["HR"]["y"])
        fore_series[label] = (paths["FR"]["x"], paths["FR"]["y"])

    if hind_series:
        report.curves["hind_foot_path"] = {
            "series": hind_series,
            "xlabel": "x from hip pitch axis (m)",
            "ylabel": "elevation (m)",
            "title": "hind foot trajectory over one stride",
            "equal_axes": True,
        }
        report.curves["fore_foot_path"] = {
            "series": fore_series,
            "xlabel": "x from hip pitch axis (m)",
            "ylabel": "elevation (m)",
            "title": "fore foot trajectory over one stride",
            "equal_axes": True,
        }
    rows = []
    for frac in ratios:
        label = f"{int(round(frac * 100))}:{int(round((1 - frac) * 100))}"
        key = label.replace(":", "_")
        if f"peak_vertical_mean_m_{key}" in report.metrics:
            rows.append(
                [
                    label,
                    report.metrics[f"peak_vertical_mean_m_{key}"],
                    report.metrics[f"mean_speed_m_s_{key}"],
                    report.metrics[f"closure_max_m_{key}"],
                ]
            )
    report.tables["descriptors"] = {
        "headers": ["tibia:femur", "peak vertical (m)", "mean speed (m/s)", "max closure (m)"],
        "rows": rows,
    }
    return report


# ---------------------------------------------------------------------------
# inertia -> cost of transport
# ---------------------------------------------------------------------------


def _loaded_body(cfg, placement, added_mass):
    """Clone the configured body with a payload on all four limbs."""
    if placement == "unloaded" or added_mass <= 0.0:
        mass_spec = None
    elif placement == "femur":
        mass_spec = ("femur", added_mass)
    elif placement == "tibia":
        mass_spec = ("tibia", added_mass)
    else:
        raise ValueError(f"unknown placement {placement!r}")

    def remake(limb):
        if mass_spec is None:
            return replace(limb, added_mass=None)
        kind, m = mass_spec
        if kind == "femur":
            return replace(limb, added_mass=AddedMass(mass=m, link=2, position=0.5 * limb.l2))
        return replace(limb, added_mass=AddedMass(mass=m, link=3, position=0.5 * limb.l3))

    return BodyMorphology(
        trunk_mass=cfg.body.trunk_mass,
        trunk_inertia=cfg.body.trunk_inertia,
        hip_positions=cfg.body.hip_positions,
        limbs=tuple(remake(l) for l in cfg.body.limbs),
    )


def run_inertia_cot_experiment(spec):
    """Three runs differing only in payload placement; COT, power, torque,
    and measured MOIs, over exactly the configured number of analysis
    samples taken from the steady-state tail."""
    cfg = spec.config
    opts = spec.resolved_options()
    profile = opts.get("profile", "slow")
    if profile == "fast":
        speed = float(opts.get("speed_m_s", 1.0))
        travel_time = float(opts.get("travel_time_s", 2.0))
    else:
        speed = float(opts.get("speed_m_s", 0.3))
        distance = float(opts.get("distance_m", 3.0))
        travel_time = distance / speed
    added = float(opts.get("added_mass_kg", 0.5))
    n_samples = int(opts.get("analysis_samples", 1000))
    settle = float(opts.get("settle_s", 1.0))
    speed_source = opts.get("speed_source", "imu")

    report = TrialReport(
        name="inertia_cot",
        provenance=_provenance(
            spec,
            [
                f"profile '{profile}': {speed} m/s for {travel_time} s of travel",
                f"payload {added} kg at the link midpoint on all four limbs",
                f"analysis window: last {n_samples} logged samples",
                f"robot speed from {speed_source} integration",
            ],
        ),
    )
    placements = ("unloaded", "femur", "tibia")
    for i, placement in enumerate(placements):
        body = _loaded_body(cfg, placement, added)
        limb = body.limbs[0]
        moi = moment_of_inertia_about_hip(limb)
        report.metrics[f"moi_analytic_kgm2_{placement}"] = float(moi)
        report.metrics[f"moi_pendulum_kgm2_{placement}"] = float(pendulum_moi(limb))
        report.metrics[f"total_mass_kg_{placement}"] = float(body.total_mass)
        ref_cot = REFERENCE_HARDWARE_TABLE["cost_of_transport"][i]
        report.metrics[f"reference_hardware_cot_{placement}"] = float(ref_cot)
        try:
            world, ctrl, log = _trot_trial(
                cfg, body, spec.seed, speed, travel_time, settle=settle
            )
        except SimulationDiverged as exc:
            report.failures.append(f"{placement}: {exc}")
            continue
        window = log.window(last_n=n_samples)
        power = log.array("power")[window]
        tau = log.array("tau")[window]
        total_power = np.clip(power, 0.0, None).sum(axis=1)
        total_tau = np.abs(tau).sum(axis=1)
        cot = compute_cot(
            log, body.total_mass, speed_source=speed_source,
            gravity=cfg.sim.gravity, window=window,
        )
        report.metrics[f"cost_of_transport_{placement}"] = float(cot)
        report.metrics[f"peak_power_w_{placement}"] = float(total_power.max())
        report.metrics[f"mean_power_w_{placement}"] = float(total_power.mean())
        report.metrics[f"peak_torque_nm_{placement}"] = float(total_tau.max())
        report.metrics[f"mean_torque_nm_{placement}"] = float(total_tau.mean())
        report.metrics[f"analysis_samples_{placement}"] = int(len(window))
        report.metrics[f"mean_speed_truth_m_s_{placement}"] = float(
            np.linalg.norm(log.array("trunk_velocity")[window], axis=1).mean()
        )

    rows = []
    for name, label in (
        ("peak_power_w", "Peak Power (W)"),
        ("mean_power_w", "Mean Power (W)"),
        ("peak_torque_nm", "Peak Torque (Nm)"),
        ("mean_torque_nm", "Mean Torque (Nm)"),
        ("cost_of_transport", "Cost of Transport"),
        ("moi_analytic_kgm2", "Limb MOI (kg m^2)"),
    ):
        row = [label]
        for placement in placements:
            row.append(report.metrics.get(f"{name}_{placement}", float("nan")))
        rows.append(row)
    report.tables["performance"] = {
        "headers": ["", "Unloaded", "Femur", "Tibia"],
        "rows": rows,
    }
    return report


# ---------------------------------------------------------------------------
# feasibility map
# ---------------------------------------------------------------------------


def run_feasibility_experiment(spec):
    """Swing feasibility over limb-length space at two gear ratios."""
    cfg = spec.config
    opts = spec.resolved_options()
    resolution = int(opts.get("resolution", 50))
    lo = float(opts.get("length_min_m", 0.05))
    hi = float(opts.get("length_max_m", 0.45))
    ratios = opts.get("gear_ratios", (7.5, 15.0))
    density = float(opts.get("linear_density_kg_m", 0.75))

    report = TrialReport(
        name="feasibility_map",
        provenance=_provenance(
            spec,
            [
                "swing spec and torque limits are assumed defaults (see metadata)",
                "same motor behind both gear ratios",
            ],
        ),
    )
    maps = {}
    for ratio in ratios:
        act = cfg.actuator.with_gear_ratio(float(ratio))
        fmap = feasibility_map(
            act,
            femur_range=(lo, hi),
            tibia_range=(lo, hi),
            resolution=resolution,
            linear_density=density,
            base_limb=cfg.body.limbs[0],
        )
        maps[float(ratio)] = fmap
        key = f"{ratio:g}".replace(".", "p")
        report.metrics[f"feasible_cells_gear_{key}"] = int(fmap.feasible.sum())
        report.metrics[f"grid_cells_gear_{key}"] = int(fmap.feasible.size)
    sorted_ratios = sorted(maps)
    if len(sorted_ratios) >= 2:
        low, high = maps[sorted_ratios[0]], maps[sorted_ratios[-1]]
        report.metrics["high_ratio_contains_low"] = int(high.contains(low))
        report.metrics["high_ratio_strictly_larger"] = int(
            high.contains(low) and high.feasible.sum() > low.feasible.sum()
        )
        series = {}
        for ratio in sorted_ratios:
            fmap = maps[ratio]
            xs, ys = [], []
            for i, lf in enumerate(fmap.femur_lengths):
                feas = np.nonzero(fmap.feasible[i])[0]
                if len(feas):
                    xs.append(float(lf))
                    ys.append(float(fmap.tibia_lengths[feas[-1]]))
            series[f"gear {ratio:g}:1"] = (xs, ys)
        report.curves["feasible_boundary"] = {
            "series": series,
            "xlabel": "femur length (m)",
            "ylabel": "max feasible tibia length (m)",
            "title": "feasible limb-length boundary by gear ratio",
        }
    report._feasibility_maps = maps
    return report


_RUNNERS = {
    "grf-validation": run_grf_validation,
    "limb-ratio-kinematics": run_limb_ratio_experiment,
    "inertia-cot": run_inertia_cot_experiment,
    "feasibility-map": run_feasibility_experiment,
}


def run_experiment(spec):
    if spec.experiment not in _RUNNERS:
        raise ValueError(
            f"unknown experiment {spec.experiment!r}; expected one of {EXPERIMENT_IDS}"
        )
    return _RUNNERS[spec.experiment](spec)
