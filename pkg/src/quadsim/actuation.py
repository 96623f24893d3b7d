"""Actuator electrical model, joint impedance law, and power accounting.

The electrical model follows the standard quasi-direct-drive equations:
motor current I = tau_motor / K_tau, winding voltage V = omega_motor * K_E
+ I * R (back-EMF plus resistive drop), electrical power P = I * V.  Only
positive power draw is counted toward energy totals (no regeneration).

Default parameter values are placeholders for a generic small QDD actuator;
they are echoed into every report's provenance block.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ActuatorParams",
    "ImpedanceGains",
    "PowerSample",
    "EnergyTotals",
    "current_from_torque",
    "electrical_power",
    "impedance_torque",
    "accumulate_energy",
]


@dataclass
class ActuatorParams:
    gear_ratio: float = 7.5
    torque_constant: float = 0.1  # N*m/A, motor side
    back_emf_constant: float = 0.1  # V*s/rad, motor side
    phase_resistance: float = 0.1  # ohm
    max_output_torque: float = 18.0  # N*m at the joint
    max_output_speed: float = 40.0  # rad/s at the joint
    reflected_inertia: float = 4e-3  # kg*m^2 at the joint (rotor * G^2)
    kt_ke_tolerance: float = 0.05

    def validate(self):
        out = []
        for name in ("gear_ratio", "torque_constant", "back_emf_constant",
                     "phase_resistance", "max_output_torque", "max_output_speed"):
            if getattr(self, name) <= 0:
                out.append(f"actuator.{name}: must be > 0")
        if self.reflected_inertia < 0:
            out.append("actuator.reflected_inertia: must be >= 0")
        kt, ke = self.torque_constant, self.back_emf_constant
        if abs(kt - ke) > self.kt_ke_tolerance * max(kt, ke):
            out.append(
                "actuator: torque and back-EMF constants differ beyond tolerance "
                "(equal in SI units for an ideal machine); raise kt_ke_tolerance to override"
            )
        return out

    def with_gear_ratio(self, ratio):
        """Same motor behind a different transmission ratio."""
        scale = ratio / self.gear_ratio
        return ActuatorParams(
            gear_ratio=ratio,
            torque_constant=self.torque_constant,
            back_emf_constant=self.back_emf_constant,
            phase_resistance=self.phase_resistance,
            max_output_torque=self.max_output_torque * scale,
            max_output_speed=self.max_output_speed / scale,
            reflected_inertia=self.reflected_inertia * scale * scale,
            kt_ke_tolerance=self.kt_ke_tolerance,
        )


@dataclass
class ImpedanceGains:
    stiffness: float = 0.0  # N*m/rad
    damping: float = 0.0  # N*m*s/rad
    feedforward: float = 0.0  # N*m


@dataclass
class PowerSample:
    current: float  # A
    voltage: float  # V
    power: float  # W (signed, I*V)
    clamped_power: float  # W, max(P, 0)
    timestamp: float = 0.0


def current_from_torque(p, tau_out):
    """Motor current for a joint-side torque: I = (tau/G) / K_tau."""
    return tau_out / p.gear_ratio / p.torque_constant


def electrical_power(p, tau_out, omega_out, timestamp=0.0):
    """Electrical power drawn for a joint-side torque and speed."""
    current = current_from_torque(p, tau_out)
    omega_motor = p.gear_ratio * omega_out
    voltage = omega_motor * p.back_emf_constant + current * p.phase_resistance
    power = current * voltage
    return PowerSample(
        current=current,
        voltage=voltage,
        power=power,
        clamped_power=max(power, 0.0),
        timestamp=timestamp,
    )


def impedance_torque(gains, q_des, q, qd_des, qd, tau_limit=math.inf):
    """Joint impedance law with saturation.

    Returns (torque, saturated): kp*(q_des-q) + kd*(qd_des-qd) + feedforward,
    clamped to +/- tau_limit.
    """
    tau = (
        gains.stiffness * (q_des - q)
        + gains.damping * (qd_des - qd)
        + gains.feedforward
    )
    if tau > tau_limit:
        return tau_limit, True
    if tau < -tau_limit:
        return -tau_limit, True
    return tau, False


@dataclass
class EnergyTotals:
    peak_power: float
    mean_power: float
    peak_torque: float
    mean_torque: float
    samples: int


def accumulate_energy(power, torque=None):
    """Totals over a trial: peak/mean of the power summed across actuators
    per sample (clamped to >= 0 per actuator first) and of summed |torque|.

    ``power`` is (T, n_actuators) signed electrical power in watts (a list
    of per-sample PowerSample sequences also works); ``torque`` matches its
    shape in N*m.  Raises ValueError on an empty stream.
    """
    rows = list(power) if not isinstance(power, np.ndarray) else power
    if len(rows) == 0:
        raise ValueError("empty power stream")
    if not isinstance(rows, np.ndarray):
        first = rows[0]
        if isinstance(first, (list, tuple)) and len(first) and isinstance(first[0], PowerSample):
            rows = [[s.power for s in row] for row in rows]
    p = np.atleast_2d(np.asarray(rows, dtype=float))
    if p.size == 0:
        raise ValueError("empty power stream")
    clamped = np.clip(p, 0.0, None)
    total_power = clamped.sum(axis=1)
    if torque is None:
        total_torque = np.zeros(len(total_power))
    else:
        tq = np.atleast_2d(np.asarray(torque, dtype=float))
        total_torque = np.abs(tq).sum(axis=1)
    return EnergyTotals(
        peak_power=float(total_power.max()),
        mean_power=float(total_power.mean()),
        peak_torque=float(total_torque.max()),
        mean_torque=float(total_torque.mean()),
        samples=int(len(total_power)),
    )
