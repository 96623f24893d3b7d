"""Exception types shared across the package."""

__all__ = [
    "QuadsimError",
    "ConfigError",
    "SingularityError",
    "WorkspaceError",
    "CalibrationError",
    "AllocationError",
    "SimulationDiverged",
    "ProtocolAborted",
]


class QuadsimError(Exception):
    """Base class for package-specific failures."""


class ConfigError(QuadsimError):
    """Invalid configuration file or morphology description."""


class SingularityError(QuadsimError):
    """Jacobian too close to singular for a force/torque inversion."""

    def __init__(self, rcond, message=None):
        self.rcond = float(rcond)
        super().__init__(message or f"near-singular configuration (rcond={rcond:.3e})")


class WorkspaceError(QuadsimError):
    """Target outside the reachable foot workspace."""

    def __init__(self, target, nearest, message=None):
        self.target = target
        self.nearest = nearest
        super().__init__(message or "target outside reachable workspace")


class CalibrationError(QuadsimError):
    """Calibration underdetermined on one or more axes."""


class AllocationError(QuadsimError):
    """Stance force allocation is infeasible (e.g. no stance feet)."""


class SimulationDiverged(QuadsimError):
    """Integration produced non-finite state; carries the last valid state."""

    def __init__(self, time, last_state, message=None):
        self.time = float(time)
        self.last_state = last_state
        super().__init__(message or f"simulation diverged at t={time:.4f} s")


class ProtocolAborted(QuadsimError):
    """An experiment protocol lost its preconditions mid-run."""
