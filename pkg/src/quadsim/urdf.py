"""URDF-style robot description export and parser.

Emits the serial three-joint-per-leg simplification as a kinematic tree:
per leg an ab/adduction joint about the fore-aft axis, then two pitch
joints.  Four-link limbs add a tarsus link whose joint carries a ``mimic``
annotation (parallel to the femur: knee angle times -1).  The knee branch
is encoded in the knee joint's limit range (backward knees flex positive).
Foot contact points are collision spheres on the distal link, which is
where the fixed lateral foot offset of three-link limbs lives.

Exports are deterministic and round-trip exactly: parsing an exported
document and exporting the parse yields byte-identical text.
"""

import xml.etree.ElementTree as ET

import numpy as np

from .morphology import (
    AddedMass,
    BodyMorphology,
    KneeDirection,
    LEG_NAMES,
    LEG_SIDE_SIGN,
    LimbConfig,
    LimbMorphology,
)

__all__ = ["export_robot_description", "parse_robot_description"]

_FOOT_RADIUS = 0.02
_PI = repr(3.141592653589793)


def _f(x):
    return repr(float(x))


def _vec(*xs):
    return " ".join(_f(x) for x in xs)


class _Writer:
    def __init__(self):
        self.lines = ['<?xml version="1.0"?>']
        self.depth = 0

    def open(self, tag, **attrs):
        self.lines.append(self._fmt(tag, attrs, close=False))
        self.depth += 1

    def close(self, tag):
        self.depth -= 1
        self.lines.append("  " * self.depth + f"</{tag}>")

    def leaf(self, tag, **attrs):
        self.lines.append(self._fmt(tag, attrs, close=True))

    def _fmt(self, tag, attrs, close):
        parts = "".join(f' {k}="{v}"' for k, v in attrs.items())
        end = "/>" if close else ">"
        return "  " * self.depth + f"<{tag}{parts}{end}"

    def text(self):
        return "\n".join(self.lines) + "\n"


def _inertial(w, mass, com_xyz, inertia6):
    ixx, ixy, ixz, iyy, iyz, izz = inertia6
    w.open("inertial")
    w.leaf("origin", xyz=_vec(*com_xyz), rpy=_vec(0.0, 0.0, 0.0))
    w.leaf("mass", value=_f(mass))
    w.leaf(
        "inertia",
        ixx=_f(ixx), ixy=_f(ixy), ixz=_f(ixz), iyy=_f(iyy), iyz=_f(iyz), izz=_f(izz),
    )
    w.close("inertial")


def _rod_inertia(mass, length, axis):
    i = mass * length * length / 12.0
    if axis == "y":
        return (i, 0.0, 0.0, 0.0, 0.0, i)
    return (i, 0.0, 0.0, i, 0.0, 0.0)


def export_robot_description(body, name="quadsim", effort=18.0, velocity=40.0):
    """Serialize a BodyMorphology as URDF-style XML text."""
    w = _Writer()
    w.open("robot", name=name)

    ti = np.asarray(body.trunk_inertia, dtype=float)
    w.open("link", name="trunk")
    _inertial(
        w,
        body.trunk_mass,
        (0.0, 0.0, 0.0),
        (ti[0, 0], ti[0, 1], ti[0, 2], ti[1, 1], ti[1, 2], ti[2, 2]),
    )
    w.close("link")

    for leg, limb in zip(LEG_NAMES, body.limbs):
        lo = leg.lower()
        s = LEG_SIDE_SIGN[leg]
        hip = body.hip_positions[LEG_NAMES.index(leg)]
        four = limb.config is LimbConfig.FOUR_LINK
        back = limb.knee_direction is KneeDirection.BACKWARD

        w.open("joint", name=f"{lo}_abad", type="revolute")
        w.leaf("parent", link="trunk")
        w.leaf("child", link=f"{lo}_hip")
        w.leaf("origin", xyz=_vec(*hip), rpy=_vec(0.0, 0.0, 0.0))
        w.leaf("axis", xyz=_vec(s, 0.0, 0.0))
        w.leaf("limit", lower=f"-{_PI}", upper=_PI, effort=_f(effort), velocity=_f(velocity))
        w.close("joint")
        w.open("link", name=f"{lo}_hip")
        _inertial(
            w,
            limb.link_masses[0],
            (0.0, s * limb.link_com_offsets[0], 0.0),
            _rod_inertia(limb.link_masses[0], limb.l1, "y"),
        )
        w.close("link")

        w.open("joint", name=f"{lo}_hip_pitch", type="revolute")
        w.leaf("parent", link=f"{lo}_hip")
        w.leaf("child", link=f"{lo}_upper")
        w.leaf("origin", xyz=_vec(0.0, s * limb.l1, 0.0), rpy=_vec(0.0, 0.0, 0.0))
        w.leaf("axis", xyz=_vec(0.0, -1.0, 0.0))
        w.leaf("limit", lower=f"-{_PI}", upper=_PI, effort=_f(effort), velocity=_f(velocity))
        w.close("joint")
        w.open("link", name=f"{lo}_upper")
        _inertial(
            w,
            limb.link_masses[1],
            (0.0, 0.0, -limb.link_com_offsets[1]),
            _rod_inertia(limb.link_masses[1], limb.l2, "z"),
        )
        w.close("link")

        w.open("joint", name=f"{lo}_knee", type="revolute")
        w.leaf("parent", link=f"{lo}_upper")
        w.leaf("child", link=f"{lo}_lower")
        w.leaf("origin", xyz=_vec(0.0, 0.0, -limb.l2), rpy=_vec(0.0, 0.0, 0.0))
        w.leaf("axis", xyz=_vec(0.0, -1.0, 0.0))
        if back:
            w.leaf("limit", lower=_f(0.0), upper=_PI, effort=_f(effort), velocity=_f(velocity))
        else:
            w.leaf("limit", lower=f"-{_PI}", upper=_f(0.0), effort=_f(effort), velocity=_f(velocity))
        w.close("joint")
        w.open("link", name=f"{lo}_lower")
        _inertial(
            w,
            limb.link_masses[2],
            (0.0, 0.0, -limb.link_com_offsets[2]),
            _rod_inertia(limb.link_masses[2], limb.l3, "z"),
        )
        if not four:
            w.open("collision")
            w.leaf("origin", xyz=_vec(0.0, s * limb.l4, -limb.l3), rpy=_vec(0.0, 0.0, 0.0))
            w.open("geometry")
            w.leaf("sphere", radius=_f(_FOOT_RADIUS))
            w.close("geometry")
            w.close("collision")
        w.close("link")

        if four:
            w.open("joint", name=f"{lo}_tarsus", type="revolute")
            w.leaf("parent", link=f"{lo}_lower")
            w.leaf("child", link=f"{lo}_tarsus_link")
            w.leaf("origin", xyz=_vec(0.0, 0.0, -limb.l3), rpy=_vec(0.0, 0.0, 0.0))
            w.leaf("axis", xyz=_vec(0.0, -1.0, 0.0))
            w.leaf("limit", lower=f"-{_PI}", upper=_PI, effort=_f(0.0), velocity=_f(velocity))
            # tarsus held parallel to the femur by the four-bar coupling
            w.leaf("mimic", joint=f"{lo}_knee", multiplier=_f(-1.0), offset=_f(0.0))
            w.close("joint")
            w.open("link", name=f"{lo}_tarsus_link")
            _inertial(
                w,
                limb.link_masses[3],
                (0.0, 0.0, -limb.link_com_offsets[3]),
                _rod_inertia(limb.link_masses[3], limb.l4, "z"),
            )
            w.open("collision")
            w.leaf("origin", xyz=_vec(0.0, 0.0, -limb.l4), rpy=_vec(0.0, 0.0, 0.0))
            w.open("geometry")
            w.leaf("sphere", radius=_f(_FOOT_RADIUS))
            w.close("geometry")
            w.close("collision")
            w.close("link")

        am = limb.added_mass
        if am is not None:
            carrier = {1: "hip", 2: "upper", 3: "lower", 4: "tarsus_link"}[am.link]
            if am.link == 1:
                origin = (0.0, s * am.position, 0.0)
            else:
                origin = (0.0, 0.0, -am.position)
            w.open("joint", name=f"{lo}_payload_joint", type="fixed")
            w.leaf("parent", link=f"{lo}_{carrier}")
            w.leaf("child", link=f"{lo}_payload")
            w.leaf("origin", xyz=_vec(*origin), rpy=_vec(0.0, 0.0, 0.0))
            w.close("joint")
            w.open("link", name=f"{lo}_payload")
            _inertial(w, am.mass, (0.0, 0.0, 0.0), (0.0, 0.0, 0.0, 0.0, 0.0, 0.0))
            w.close("link")

    w.close("robot")
    return w.text()


def _parse_vec(text):
    return [float(v) for v in text.split()]


def parse_robot_description(text):
    """Reconstruct a BodyMorphology from exported URDF-style XML."""
    root = ET.fromstring(text)
    if root.tag != "robot":
        raise ValueError("not a robot description")
    joints = {j.get("name"): j for j in root.findall("joint")}
    links = {l.get("name"): l for l in root.findall("link")}

    def inertial_of(link_name):
        link = links[link_name]
        inertial = link.find("inertial")
        mass = float(inertial.find("mass").get("value"))
        com = _parse_vec(inertial.find("origin").get("xyz"))
        return mass, com

    trunk_mass, _ = inertial_of("trunk")
    ti = links["trunk"].find("inertial").find("inertia")
    trunk_inertia = np.array(
        [
            [float(ti.get("ixx")), float(ti.get("ixy")), float(ti.get("ixz"))],
            [float(ti.get("ixy")), float(ti.get("iyy")), float(ti.get("iyz"))],
            [float(ti.get("ixz")), float(ti.get("iyz")), float(ti.get("izz"))],
        ]
    )

    hips = []
    limbs = []
    for leg in LEG_NAMES:
        lo = leg.lower()
        s = LEG_SIDE_SIGN[leg]
        hips.append(_parse_vec(joints[f"{lo}_abad"].find("origin").get("xyz")))
        l1 = abs(_parse_vec(joints[f"{lo}_hip_pitch"].find("origin").get("xyz"))[1])
        l2 = abs(_parse_vec(joints[f"{lo}_knee"].find("origin").get("xyz"))[2])
        knee_limit = joints[f"{lo}_knee"].find("limit")
        back = float(knee_limit.get("lower")) >= 0.0
        four = f"{lo}_tarsus" in joints

        m1, com1 = inertial_of(f"{lo}_hip")
        m2, com2 = inertial_of(f"{lo}_upper")
        m3, com3 = inertial_of(f"{lo}_lower")
        masses = [m1, m2, m3]
        offsets = [abs(com1[1]), abs(com2[2]), abs(com3[2])]

        if four:
            l3 = abs(_parse_vec(joints[f"{lo}_tarsus"].find("origin").get("xyz"))[2])
            m4, com4 = inertial_of(f"{lo}_tarsus_link")
            foot = links[f"{lo}_tarsus_link"].find("collision")
            l4 = abs(_parse_vec(foot.find("origin").get("xyz"))[2])
            masses.append(m4)
            offsets.append(abs(com4[2]))
        else:
            foot = links[f"{lo}_lower"].find("collision")
            foot_xyz = _parse_vec(foot.find("origin").get("xyz"))
            l3 = abs(foot_xyz[2])
            l4 = abs(foot_xyz[1])

        added = None
        pj = joints.get(f"{lo}_payload_joint")
        if pj is not None:
            parent = pj.find("parent").get("link")
            carrier = {
                f"{lo}_hip": 1,
                f"{lo}_upper": 2,
                f"{lo}_lower": 3,
                f"{lo}_tarsus_link": 4,
            }[parent]
            xyz = _parse_vec(pj.find("origin").get("xyz"))
            position = abs(xyz[1]) if carrier == 1 else abs(xyz[2])
            pm, _ = inertial_of(f"{lo}_payload")
            added = AddedMass(mass=pm, link=carrier, position=position)

        limbs.append(
            LimbMorphology(
                config=LimbConfig.FOUR_LINK if four else LimbConfig.THREE_LINK,
                l1=l1,
                l2=l2,
                l3=l3,
                l4=l4,
                knee_direction=KneeDirection.BACKWARD if back else KneeDirection.FORWARD,
                link_masses=tuple(masses),
                link_com_offsets=tuple(offsets),
                added_mass=added,
            )
        )

    return BodyMorphology(
        trunk_mass=trunk_mass,
        trunk_inertia=trunk_inertia,
        hip_positions=np.array(hips),
        limbs=tuple(limbs),
    )
