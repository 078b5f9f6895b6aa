"""Non-iterative transformation solver for Blasius-type boundary value
problems on semi-infinite intervals.

Each supported problem (classic flat plate, moving wall, surface
gasification) is solved by a single initial value integration in scaled
"starred" variables followed by a stretching-group rescale; the physical
parameter emerges from the rescale instead of being shot for. The
package also locates the fold of the wall-driven branch (the critical
parameter), extracts dual solutions, root-finds prescribed physical
parameters, validates every solution against an independent residual
oracle, and proves exactly which families admit a compatible group.
"""

from .analysis import (
    CriticalResult,
    ResidualReport,
    SweepRow,
    bvp_residual,
    dual_solutions,
    find_critical_parameter,
    solve_for_target_P,
    solve_noniterative,
    sweep,
)
from .errors import (
    MaxIterationsError,
    NoExtremumError,
    NonFiniteError,
    NonPositiveRadicandError,
    NoSignChangeError,
    SolverError,
    StepLimitError,
    UnsupportedFamilyError,
)
from .families import Family, Sign, family_from_string, sign_from_string
from .invariance import (
    ExponentSystem,
    InvarianceReport,
    build_exponent_system,
    solve_exponent_system,
)
from .ode_core import (
    DEFAULT_CONFIG,
    IntegratorConfig,
    IvpState,
    OdeField,
    Trajectory,
    estimate_truncated_boundary,
    resample_uniform,
    integrate_ivp,
)
from .problems import (
    SimilarityProblem,
    half_speed_solution,
    recommended_sign,
    star_initial_conditions,
)
from .scaling import (
    BLASIUS_GROUP,
    GASIFICATION_GROUP,
    MOVING_WALL_GROUP,
    GroupExponents,
    ScaledSolution,
    apply_group,
    lambda_gasification,
    lambda_moving_wall,
    rescale_gasification,
    rescale_moving_wall,
)

__version__ = "0.1.0"

__all__ = [
    "Family",
    "Sign",
    "family_from_string",
    "sign_from_string",
    "SolverError",
    "NonFiniteError",
    "StepLimitError",
    "NonPositiveRadicandError",
    "UnsupportedFamilyError",
    "NoExtremumError",
    "NoSignChangeError",
    "MaxIterationsError",
    "OdeField",
    "IvpState",
    "IntegratorConfig",
    "Trajectory",
    "DEFAULT_CONFIG",
    "integrate_ivp",
    "estimate_truncated_boundary",
    "resample_uniform",
    "GroupExponents",
    "MOVING_WALL_GROUP",
    "GASIFICATION_GROUP",
    "BLASIUS_GROUP",
    "ScaledSolution",
    "lambda_moving_wall",
    "lambda_gasification",
    "apply_group",
    "rescale_moving_wall",
    "rescale_gasification",
    "SimilarityProblem",
    "star_initial_conditions",
    "recommended_sign",
    "half_speed_solution",
    "SweepRow",
    "CriticalResult",
    "ResidualReport",
    "solve_noniterative",
    "sweep",
    "find_critical_parameter",
    "solve_for_target_P",
    "dual_solutions",
    "bvp_residual",
    "ExponentSystem",
    "InvarianceReport",
    "build_exponent_system",
    "solve_exponent_system",
    "__version__",
]
