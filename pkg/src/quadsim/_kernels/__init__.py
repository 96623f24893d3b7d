"""Kernel backend selection.

Imports the compiled extension when available, otherwise falls back to the
pure-Python implementation.  Set QUADSIM_PURE=1 to force the fallback (used
by the benchmark and the backend-equivalence tests).
"""

import os

from . import pure as _pure

if os.environ.get("QUADSIM_PURE", "") not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND_NAME

fk = _impl.fk
jacobian = _impl.jacobian
jacobian_det = _impl.jacobian_det
grf_from_torque = _impl.grf_from_torque
rnea = _impl.rnea
limb_acceleration = _impl.limb_acceleration
foot_apparent_mass = _impl.foot_apparent_mass
contact_force = _impl.contact_force

__all__ = [
    "BACKEND",
    "fk",
    "jacobian",
    "jacobian_det",
    "grf_from_torque",
    "rnea",
    "limb_acceleration",
    "foot_apparent_mass",
    "contact_force",
    "pure",
]
