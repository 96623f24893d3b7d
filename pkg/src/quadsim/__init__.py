"""Morphology-parametric quadruped locomotion simulator.

Kinematics, proprioceptive ground-reaction-force estimation, actuator energy
accounting, trot control with QP stance-force allocation, a deterministic
rigid-body world, and an experiment harness for morphology studies.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .actuation import (
    ActuatorParams,
    ImpedanceGains,
    PowerSample,
    accumulate_energy,
    current_from_torque,
    electrical_power,
    impedance_torque,
)
from .config import SimConfig, default_config, load_config
from .dynamics import (
    LimbDynamicsModel,
    feasibility_map,
    inverse_dynamics,
    max_swing_torque,
    pendulum_moi,
)
from .errors import (
    AllocationError,
    CalibrationError,
    ConfigError,
    ProtocolAborted,
    QuadsimError,
    SimulationDiverged,
    SingularityError,
    WorkspaceError,
)
from .experiments import ExperimentSpec, TrialReport, compute_cot, run_experiment
from .gait import Controller, GaitSchedule, SwingTrajectory, schedule_at, swing_position
from .kinematics import (
    GrfEstimate,
    calibrate_axes,
    estimate_grf,
    forward_kinematics,
    inverse_kinematics,
    jacobian_foot,
)
from .morphology import (
    AddedMass,
    BodyMorphology,
    KneeDirection,
    LimbConfig,
    LimbMorphology,
    limb_ratio,
    moment_of_inertia_about_hip,
    validate,
)
from .qpalloc import StanceAllocation, allocate_stance_forces
from .state import RobotState
from .telemetry import TrialLog
from .urdf import export_robot_description, parse_robot_description
from .world import ContactParams, World, integrate_velocity, simulate, standing_pose

__version__ = "0.1.0"
