"""Exception types shared across the solver stack."""


class SolverError(Exception):
    """Base class for all solver failures."""


class NonFiniteError(SolverError):
    """Integration produced non-finite values (blow-up before the truncated
    boundary). Signals that no solution branch exists for this star
    parameter / sign combination."""


class StepLimitError(SolverError):
    """The integrator exceeded its step budget."""


class NonPositiveRadicandError(SolverError):
    """The group-parameter radicand is not positive: this star solution
    corresponds to no physical solution."""


class UnsupportedFamilyError(SolverError):
    """The requested operation is not defined for this problem family."""


class NoExtremumError(SolverError):
    """The scanned branch is monotone on the given bracket."""


class NoSignChangeError(SolverError):
    """The target residual does not change sign on the given bracket."""


class MaxIterationsError(SolverError):
    """Root finding failed to converge within its iteration cap."""
