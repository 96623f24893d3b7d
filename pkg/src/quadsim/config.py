"""TOML configuration: morphology, actuator, gait, contact, simulation.

One structured document drives everything; every loaded value (and every
default filled in) is echoed into report provenance so a trial is fully
reproducible from its outputs.  See configs/default.toml for the schema.
"""

import sys
from dataclasses import dataclass, field

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .actuation import ActuatorParams
from .errors import ConfigError
from .gait import ControlGains, GaitSchedule
from .morphology import (
    AddedMass,
    BodyMorphology,
    KneeDirection,
    LimbConfig,
    LimbMorphology,
    box_inertia,
    validate,
)
from .world import ContactParams, ImuNoise

__all__ = ["SimulationParams", "SimConfig", "load_config", "default_config", "config_from_dict"]


@dataclass
class SimulationParams:
    dt: float = 1e-3
    control_dt: float = 2e-3
    log_hz: float = 500.0
    gravity: float = 9.81
    imu_accel_sigma: float = 0.02
    imu_gyro_sigma: float = 0.002


@dataclass
class SimConfig:
    body: BodyMorphology = field(default_factory=BodyMorphology)
    actuator: ActuatorParams = field(default_factory=ActuatorParams)
    gait: GaitSchedule = field(default_factory=GaitSchedule)
    gains: ControlGains = field(default_factory=ControlGains)
    contact: ContactParams = field(default_factory=ContactParams)
    sim: SimulationParams = field(default_factory=SimulationParams)
    standing_height: float = 0.30
    clearance: float = 0.06
    command_speed: float = 0.3
    experiments: dict = field(default_factory=dict)

    def imu_noise(self):
        return ImuNoise(
            accel_sigma=self.sim.imu_accel_sigma, gyro_sigma=self.sim.imu_gyro_sigma
        )

    def to_dict(self):
        """Full resolved echo for provenance blocks."""
        body = self.body
        limbs = {}
        from .morphology import LEG_NAMES

        for name, limb in zip(LEG_NAMES, body.limbs):
            entry = {
                "config": limb.config.value,
                "l1": limb.l1,
                "l2": limb.l2,
                "l3": limb.l3,
                "l4": limb.l4,
                "knee_direction": limb.knee_direction.value,
                "link_masses": list(limb.link_masses),
                "link_com_offsets": list(limb.link_com_offsets),
            }
            if limb.added_mass is not None:
                entry["added_mass"] = {
                    "mass": limb.added_mass.mass,
                    "link": limb.added_mass.link,
                    "position": limb.added_mass.position,
                }
            limbs[name] = entry
        return {
            "morphology": {
                "trunk_mass": body.trunk_mass,
                "trunk_inertia": np.asarray(body.trunk_inertia).tolist(),
                "hip_positions": np.asarray(body.hip_positions).tolist(),
                "total_mass": body.total_mass,
                "limbs": limbs,
            },
            "actuator": {
                "gear_ratio": self.actuator.gear_ratio,
                "torque_constant": self.actuator.torque_constant,
                "back_emf_constant": self.actuator.back_emf_constant,
                "phase_resistance": self.actuator.phase_resistance,
                "max_output_torque": self.actuator.max_output_torque,
                "max_output_speed": self.actuator.max_output_speed,
                "reflected_inertia": self.actuator.reflected_inertia,
            },
            "gait": {
                "period": self.gait.period,
                "duty_factor": self.gait.duty_factor,
                "offsets": list(self.gait.offsets),
                "standing_height": self.standing_height,
                "clearance": self.clearance,
                "command_speed": self.command_speed,
            },
            "contact": self.contact.describe(),
            "simulation": {
                "dt": self.sim.dt,
                "control_dt": self.sim.control_dt,
                "log_hz": self.sim.log_hz,
                "gravity": self.sim.gravity,
                "imu_accel_sigma": self.sim.imu_accel_sigma,
                "imu_gyro_sigma": self.sim.imu_gyro_sigma,
            },
            "experiments": self.experiments,
        }


def _limb_from_dict(d):
    base = {
        "config": LimbConfig(d.get("config", "three_link")),
        "l1": float(d.get("l1", 0.07)),
        "l2": float(d.get("l2", 0.2)),
        "l3": float(d.get("l3", 0.2)),
        "l4": float(d.get("l4", 0.03)),
        "knee_direction": KneeDirection(d.get("knee_direction", "backward")),
        "link_masses": tuple(d.get("link_masses", (0.10, 0.10, 0.06))),
    }
    if "link_com_offsets" in d:
        base["link_com_offsets"] = tuple(d["link_com_offsets"])
    am = d.get("added_mass")
    if am:
        base["added_mass"] = AddedMass(
            mass=float(am["mass"]), link=int(am["link"]), position=float(am["position"])
        )
    return LimbMorphology(**base)


def config_from_dict(raw, source="<dict>"):
    try:
        morph = raw.get("morphology", {})
        limb_default = morph.get("limb", {})
        limbs = []
        from .morphology import LEG_NAMES

        per_leg = morph.get("limbs", {})
        for name in LEG_NAMES:
            d = dict(limb_default)
            d.update(per_leg.get(name, {}))
            limbs.append(_limb_from_dict(d))
        trunk_mass = float(morph.get("trunk_mass", 8.96))
        if "trunk_inertia_box" in morph:
            dims = morph["trunk_inertia_box"]
            trunk_inertia = box_inertia(trunk_mass, *[float(v) for v in dims])
        elif "trunk_inertia" in morph:
            trunk_inertia = np.asarray(morph["trunk_inertia"], dtype=float)
        else:
            trunk_inertia = box_inertia(trunk_mass, 0.45, 0.12, 0.08)
        if "hip_positions" in morph:
            hips = np.asarray(morph["hip_positions"], dtype=float)
        else:
            hx = float(morph.get("hip_x", 0.19))
            hy = float(morph.get("hip_y", 0.06))
            hips = np.array([[hx, -hy, 0.0], [hx, hy, 0.0], [-hx, -hy, 0.0], [-hx, hy, 0.0]])
        body = BodyMorphology(
            trunk_mass=trunk_mass,
            trunk_inertia=trunk_inertia,
            hip_positions=hips,
            limbs=tuple(limbs),
        )

        act = raw.get("actuator", {})
        actuator = ActuatorParams(
            gear_ratio=float(act.get("gear_ratio", 7.5)),
            torque_constant=float(act.get("torque_constant", 0.1)),
            back_emf_constant=float(act.get("back_emf_constant", 0.1)),
            phase_resistance=float(act.get("phase_resistance", 0.1)),
            max_output_torque=float(act.get("max_output_torque", 18.0)),
            max_output_speed=float(act.get("max_output_speed", 40.0)),
            reflected_inertia=float(act.get("reflected_inertia", 4e-3)),
        )

        gt = raw.get("gait", {})
        gait = GaitSchedule(
            period=float(gt.get("period", 0.35)),
            duty_factor=float(gt.get("duty_factor", 0.5)),
            offsets=tuple(gt.get("offsets", (0.0, 0.5, 0.5, 0.0))),
        )

        ct = raw.get("contact", {})
        contact = ContactParams(
            stiffness=float(ct.get("stiffness", 2.0e4)),
            damping=float(ct.get("damping", 200.0)),
            friction=float(ct.get("friction", 0.6)),
            tangential_stiffness=float(ct.get("tangential_stiffness", 2.0e4)),
            damping_cap=float(ct.get("damping_cap", 0.5)),
            ground_velocity=tuple(ct.get("ground_velocity", (0.0, 0.0))),
        )

        sm = raw.get("simulation", {})
        sim = SimulationParams(
            dt=float(sm.get("dt", 1e-3)),
            control_dt=float(sm.get("control_dt", 2e-3)),
            log_hz=float(sm.get("log_hz", 500.0)),
            gravity=float(sm.get("gravity", 9.81)),
            imu_accel_sigma=float(sm.get("imu_accel_sigma", 0.02)),
            imu_gyro_sigma=float(sm.get("imu_gyro_sigma", 0.002)),
        )

        cfg = SimConfig(
            body=body,
            actuator=actuator,
            gait=gait,
            contact=contact,
            sim=sim,
            standing_height=float(gt.get("standing_height", 0.30)),
            clearance=float(gt.get("clearance", 0.06)),
            command_speed=float(gt.get("command_speed", 0.3)),
            experiments=dict(raw.get("experiments", {})),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{source}: malformed configuration ({exc})") from exc

    problems = [str(v) for v in validate(cfg.body)]
    problems += cfg.actuator.validate()
    problems += cfg.gait.validate()
    if not (0.0 < cfg.sim.dt <= 2e-3):
        problems.append("simulation.dt: must lie in (0, 2 ms]")
    if cfg.standing_height <= 0 or cfg.standing_height >= min(
        limb.reach for limb in cfg.body.limbs
    ):
        problems.append("gait.standing_height: must be positive and below the leg reach")
    if problems:
        raise ConfigError(f"{source}: " + "; ".join(problems))
    return cfg


def load_config(path):
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: invalid TOML ({exc})") from exc
    return config_from_dict(raw, source=str(path))


def default_config():
    return config_from_dict({}, source="<defaults>")
