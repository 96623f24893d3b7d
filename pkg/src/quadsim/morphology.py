"""Limb and body morphology: parameter space, validation, mass properties.

Lengths in meters, masses in kg, angles in radians throughout.  A limb is
either three articulated links (offset link, femur, tibia) or four (adding a
tarsus whose orientation is coupled parallel to the femur).  In the
three-link configuration ``l4`` is a fixed lateral foot offset (default 0)
that adds to the ``l1`` trunnion offset.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

__all__ = [
    "LimbConfig",
    "KneeDirection",
    "AddedMass",
    "LimbMorphology",
    "BodyMorphology",
    "Violation",
    "LEG_NAMES",
    "LEG_SIDE_SIGN",
    "validate",
    "limb_ratio",
    "moment_of_inertia_about_hip",
    "swinging_mass_properties",
    "box_inertia",
    "default_limb",
    "default_body",
]

LEG_NAMES = ("FR", "FL", "HR", "HL")
# limb frames have +y pointing laterally outward; right legs mirror the
# trunk's +y (left) axis
LEG_SIDE_SIGN = {"FR": -1.0, "FL": 1.0, "HR": -1.0, "HL": 1.0}


class LimbConfig(Enum):
    THREE_LINK = "three_link"
    FOUR_LINK = "four_link"


class KneeDirection(Enum):
    BACKWARD = "backward"
    FORWARD = "forward"


@dataclass
class AddedMass:
    """Experiment payload clamped to one link.

    ``link`` is 1-based (1 = offset link, 2 = femur, 3 = tibia, 4 = tarsus);
    ``position`` is the distance from the link's proximal joint along its
    axis.
    """

    mass: float
    link: int
    position: float


@dataclass
class LimbMorphology:
    config: LimbConfig = LimbConfig.THREE_LINK
    l1: float = 0.07
    l2: float = 0.2
    l3: float = 0.2
    l4: float = 0.03
    knee_direction: KneeDirection = KneeDirection.BACKWARD
    link_masses: tuple = (0.10, 0.10, 0.06)
    link_com_offsets: tuple = None
    added_mass: AddedMass | None = None

    def __post_init__(self):
        if self.link_com_offsets is None:
            # uniform links: COM at the geometric midpoint
            self.link_com_offsets = tuple(
                0.5 * L for L in self.link_lengths
            )
        self.link_masses = tuple(float(m) for m in self.link_masses)
        self.link_com_offsets = tuple(float(c) for c in self.link_com_offsets)

    @property
    def n_links(self):
        return 4 if self.config is LimbConfig.FOUR_LINK else 3

    @property
    def link_lengths(self):
        if self.config is LimbConfig.FOUR_LINK:
            return (self.l1, self.l2, self.l3, self.l4)
        return (self.l1, self.l2, self.l3)

    @property
    def lateral_offset(self):
        """Lateral distance from the ab/ad axis to the pitch plane."""
        if self.config is LimbConfig.FOUR_LINK:
            return self.l1
        return self.l1 + self.l4

    @property
    def effective_femur(self):
        """Femur length of the equivalent serial chain.

        With the tarsus held parallel to the femur the foot position equals
        that of a two-segment chain with segments (l2 + l4, l3).
        """
        if self.config is LimbConfig.FOUR_LINK:
            return self.l2 + self.l4
        return self.l2

    @property
    def reach(self):
        return self.effective_femur + self.l3

    @property
    def mass(self):
        m = sum(self.link_masses[: self.n_links])
        if self.added_mass is not None:
            m += self.added_mass.mass
        return m

    def with_added_mass(self, mass, link, position):
        return replace(self, added_mass=AddedMass(float(mass), int(link), float(position)))


@dataclass
class BodyMorphology:
    trunk_mass: float = 8.96
    trunk_inertia: np.ndarray = None
    hip_positions: np.ndarray = None
    limbs: tuple = None

    def __post_init__(self):
        if self.trunk_inertia is None:
            self.trunk_inertia = box_inertia(self.trunk_mass, 0.45, 0.12, 0.08)
        self.trunk_inertia = np.asarray(self.trunk_inertia, dtype=float)
        if self.hip_positions is None:
            self.hip_positions = np.array(
                [
                    [0.19, -0.06, 0.0],
                    [0.19, 0.06, 0.0],
                    [-0.19, -0.06, 0.0],
                    [-0.19, 0.06, 0.0],
                ]
            )
        self.hip_positions = np.asarray(self.hip_positions, dtype=float)
        if self.limbs is None:
            self.limbs = tuple(default_limb() for _ in LEG_NAMES)
        self.limbs = tuple(self.limbs)

    @property
    def total_mass(self):
        return float(self.trunk_mass + sum(limb.mass for limb in self.limbs))


@dataclass
class Violation:
    field: str
    rule: str

    def __str__(self):
        return f"{self.field}: {self.rule}"


def _validate_limb(limb, prefix, out):
    lengths = {"l1": limb.l1, "l2": limb.l2, "l3": limb.l3}
    for name, value in lengths.items():
        if not (math.isfinite(value) and value > 0):
            out.append(Violation(f"{prefix}.{name}", "length must be > 0"))
    if limb.config is LimbConfig.FOUR_LINK:
        if not (math.isfinite(limb.l4) and limb.l4 > 0):
            out.append(Violation(f"{prefix}.l4", "tarsus length must be > 0"))
    else:
        if not (math.isfinite(limb.l4) and limb.l4 >= 0):
            out.append(Violation(f"{prefix}.l4", "lateral foot offset must be >= 0"))
    n = limb.n_links
    if len(limb.link_masses) < n:
        out.append(Violation(f"{prefix}.link_masses", f"need {n} entries"))
    if len(limb.link_com_offsets) < n:
        out.append(Violation(f"{prefix}.link_com_offsets", f"need {n} entries"))
    lens = limb.link_lengths
    for i, m in enumerate(limb.link_masses[:n]):
        if not (math.isfinite(m) and m >= 0):
            out.append(Violation(f"{prefix}.link_masses[{i}]", "mass must be >= 0"))
    for i, c in enumerate(limb.link_com_offsets[:n]):
        if i < len(lens) and not (math.isfinite(c) and 0 <= c <= lens[i]):
            out.append(
                Violation(
                    f"{prefix}.link_com_offsets[{i}]",
                    "COM offset must lie within [0, link length]",
                )
            )
    am = limb.added_mass
    if am is not None:
        if not (math.isfinite(am.mass) and am.mass >= 0):
            out.append(Violation(f"{prefix}.added_mass.mass", "mass must be >= 0"))
        if not (1 <= am.link <= n):
            out.append(Violation(f"{prefix}.added_mass.link", f"link index must be in 1..{n}"))
        else:
            L = lens[am.link - 1]
            if not (math.isfinite(am.position) and 0 <= am.position <= L):
                out.append(
                    Violation(
                        f"{prefix}.added_mass.position",
                        f"position must lie within [0, {L}] on link {am.link}",
                    )
                )


def validate(body):
    """Check every morphology invariant; returns a list of violations.

    Total function: never raises, an empty list means the morphology is
    well-formed.  Accepts a BodyMorphology or a bare LimbMorphology.
    """
    out = []
    if isinstance(body, LimbMorphology):
        _validate_limb(body, "limb", out)
        return out
    if not (math.isfinite(body.trunk_mass) and body.trunk_mass > 0):
        out.append(Violation("trunk_mass", "must be > 0"))
    ti = np.asarray(body.trunk_inertia, dtype=float)
    if ti.shape != (3, 3):
        out.append(Violation("trunk_inertia", "must be 3x3"))
    else:
        if not np.all(np.isfinite(ti)):
            out.append(Violation("trunk_inertia", "must be finite"))
        elif not np.allclose(ti, ti.T, atol=1e-12):
            out.append(Violation("trunk_inertia", "must be symmetric"))
        elif np.any(np.linalg.eigvalsh(ti) <= 0):
            out.append(Violation("trunk_inertia", "must be positive definite"))
    hp = np.asarray(body.hip_positions, dtype=float)
    if hp.shape != (4, 3):
        out.append(Violation("hip_positions", "must be 4x3"))
    if len(body.limbs) != 4:
        out.append(Violation("limbs", "need exactly 4 limbs"))
    for name, limb in zip(LEG_NAMES, body.limbs):
        _validate_limb(limb, f"limbs.{name}", out)
    # mass consistency (derived total vs sum of parts)
    parts = body.trunk_mass + sum(limb.mass for limb in body.limbs)
    if abs(body.total_mass - parts) > 1e-12 * max(1.0, parts):
        out.append(Violation("total_mass", "must equal trunk + link + added masses"))
    return out


def limb_ratio(limb):
    """(tibia fraction, femur fraction) of the articulated l2+l3 length."""
    total = limb.l2 + limb.l3
    if total <= 0:
        raise ValueError("degenerate limb: l2 + l3 must be > 0")
    return limb.l3 / total, limb.l2 / total


def _swing_particles(limb, theta3):
    """Point masses and rod inertias of the assembly distal of the hip pitch
    joint, in the pitch plane at knee angle theta3.

    Returns a list of (mass, x, z, i_com) with coordinates relative to the
    pitch joint; x along the femur-swing direction, z along the leg.  Rod
    inertias are about the axis normal to the pitch plane.
    """
    s3 = math.sin(theta3)
    c3 = math.cos(theta3)
    out = []
    m2 = limb.link_masses[1]
    c2 = limb.link_com_offsets[1]
    # femur along -z at q2 = 0
    out.append((m2, 0.0, -c2, m2 * limb.l2 ** 2 / 12.0))
    knee = (0.0, -limb.l2)
    # tibia direction at knee angle theta3 (in-plane): (sin q3, -cos q3)
    m3 = limb.link_masses[2]
    c3off = limb.link_com_offsets[2]
    out.append((m3, knee[0] + s3 * c3off, knee[1] - c3 * c3off, m3 * limb.l3 ** 2 / 12.0))
    ankle = (knee[0] + s3 * limb.l3, knee[1] - c3 * limb.l3)
    if limb.config is LimbConfig.FOUR_LINK:
        m4 = limb.link_masses[3]
        c4 = limb.link_com_offsets[3]
        # tarsus parallel to the femur: direction (0, -1) at q2 = 0
        out.append((m4, ankle[0], ankle[1] - c4, m4 * limb.l4 ** 2 / 12.0))
    am = limb.added_mass
    if am is not None and am.mass > 0:
        if am.link == 2:
            out.append((am.mass, 0.0, -am.position, 0.0))
        elif am.link == 3:
            out.append((am.mass, knee[0] + s3 * am.position, knee[1] - c3 * am.position, 0.0))
        elif am.link == 4:
            out.append((am.mass, ankle[0], ankle[1] - am.position, 0.0))
        # payload on link 1 does not swing with the pitch joint
    return out


def moment_of_inertia_about_hip(limb, pose=None):
    """Limb moment of inertia about the hip pitch axis (kg m^2).

    Parallel-axis summation over the links distal of the pitch joint plus
    any payload; the lateral offset link rotates only with ab/adduction and
    therefore does not contribute.  ``pose`` gives the knee angle (scalar
    theta3, or a (theta1, theta2, theta3) triple); default is the fully
    extended pose.
    """
    theta3 = 0.0
    if pose is not None:
        arr = np.atleast_1d(np.asarray(pose, dtype=float))
        theta3 = float(arr[-1])
        if not np.all(np.isfinite(arr)):
            raise ValueError("pose must be finite")
    total = 0.0
    for m, x, z, i_com in _swing_particles(limb, theta3):
        total += i_com + m * (x * x + z * z)
    return total


def swinging_mass_properties(limb, pose=None):
    """(mass, COM distance from the pitch joint) of the swinging assembly."""
    theta3 = 0.0
    if pose is not None:
        arr = np.atleast_1d(np.asarray(pose, dtype=float))
        theta3 = float(arr[-1])
    parts = _swing_particles(limb, theta3)
    m = sum(p[0] for p in parts)
    if m <= 0:
        raise ValueError("degenerate limb: swinging mass is zero")
    cx = sum(p[0] * p[1] for p in parts) / m
    cz = sum(p[0] * p[2] for p in parts) / m
    return m, math.hypot(cx, cz)


def box_inertia(mass, lx, ly, lz):
    """Inertia tensor of a uniform box about its COM."""
    k = mass / 12.0
    return np.diag([k * (ly * ly + lz * lz), k * (lx * lx + lz * lz), k * (lx * lx + ly * ly)])


def default_limb():
    return LimbMorphology()


def default_body():
    return BodyMorphology()
