"""attctl: rigid-body attitude dynamics and geometric control on SO(3).

Library layout:

  so3             group primitives (hat/vee, exp/log, projection)
  attitude_error  error function psi, error vectors, error Jacobian
  dynamics        Euler's equation and attitude kinematics
  commands        desired-trajectory generation
  controllers     control laws and Lyapunov gain certification
  integrators     variational (LGVI) and RK4 steppers
  simulate        scenario orchestration, CSV logging, comparisons
  cli             the `attctl` command
"""

from .attitude_error import (
    BOUNDARY_EPS,
    e_omega,
    e_r,
    e_r_baseline,
    error_jacobian,
    psi,
    psi_baseline,
)
from .commands import (
    AttitudeCommand,
    CommandSpec,
    body_rate_from_euler,
    command_function,
    euler_command,
    fixed_command,
)
from .controllers import (
    Certification,
    GainSet,
    RoaReport,
    baseline_control,
    best_certification,
    c2_bound,
    certify,
    lyapunov_value,
    roa_check,
    stabilization_alpha,
    stabilize_control,
    tracking_control,
)
from .dynamics import BodyState, InertiaMatrix, free_energy, omega_dot, r_dot
from .errors import (
    AtErrorBoundary,
    AttctlError,
    ConfigInvalid,
    ConfigMismatch,
    GimbalLockNear,
    NewtonDivergence,
    NotARotation,
    NotNearRotation,
    NotSkewSymmetric,
)
from .integrators import IntegratorConfig, StepResult, lgvi_step, rk4_step
from .simulate import (
    CSV_HEADER,
    ComparisonReport,
    GainCheck,
    RunSummary,
    ScenarioConfig,
    TrajectoryRecord,
    check_gains,
    compare,
    run_scenario,
    scenario_from_dict,
    scenario_from_json,
)
from .so3 import (
    exp_so3,
    hat,
    log_so3,
    orthogonality_error,
    project_to_so3,
    random_rotation,
    rotation_angle,
    rotation_matrix,
    vee,
)

__version__ = "0.1.0"
