"""Full one-shot solves, parameter sweeps, fold location and validation.

This module composes the starred integration with the group rescale into
the complete solution pipeline, then builds the parameter studies on top
of it: sweeps over P*, golden-section location of the critical physical
parameter (the fold below which no wall-driven solution exists), root
finding for a prescribed physical P, dual-solution extraction on the two
sides of the fold, and an independent finite-difference residual oracle.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    MaxIterationsError,
    NoExtremumError,
    NonPositiveRadicandError,
    NoSignChangeError,
    SolverError,
    UnsupportedFamilyError,
)
from .families import Family, Sign
from .ode_core import DEFAULT_CONFIG, IntegratorConfig, OdeField, integrate_ivp
from .problems import (
    SimilarityProblem,
    half_speed_solution,
    recommended_sign,
    star_initial_conditions,
)
from .scaling import (
    ScaledSolution,
    lambda_gasification,
    lambda_moving_wall,
    rescale_gasification,
    rescale_moving_wall,
)

__all__ = [
    "SweepRow",
    "CriticalResult",
    "ResidualReport",
    "solve_noniterative",
    "sweep",
    "find_critical_parameter",
    "solve_for_target_P",
    "dual_solutions",
    "bvp_residual",
]

_NAN = float("nan")

# CSV-friendly failure markers for sweep rows.
_STATUS_OK = "ok"
_STATUS_BY_ERROR = {
    "NonFiniteError": "non-finite",
    "StepLimitError": "step-limit",
    "NonPositiveRadicandError": "non-positive-radicand",
}


@dataclass(frozen=True)
class SweepRow:
    """One line of a parameter sweep, mirroring the summary-table layout
    (starred inputs, group parameter, recovered physical values). Failed
    solves carry the error kind in ``status`` and NaN numerics."""

    P_star: float
    sign: Sign
    df_star_inf: float
    lam: float
    P_physical: float
    f0: float
    d2f0: float
    eta_inf_used: float
    plateau_ok: bool
    status: str = _STATUS_OK

    @property
    def ok(self) -> bool:
        return self.status == _STATUS_OK


@dataclass(frozen=True)
class CriticalResult:
    """Fold location: the extremal physical parameter over a branch.

    ``scanned`` collects every successful (P*, P, f''(0)) evaluation of
    the search, sorted by P*, ready for branch plotting.
    """

    P_c: float
    P_star_at_Pc: float
    bracket: tuple[float, float]
    iterations: int
    solution: ScaledSolution
    scanned: tuple[tuple[float, float, float], ...]


@dataclass(frozen=True)
class ResidualReport:
    """Independent check of a solution against its boundary value
    problem: max interior ODE residual (with f''' reconstructed by
    finite differences) plus the deviation of each boundary condition."""

    ode_max: float
    bc_errors: tuple[float, ...]
    bc_labels: tuple[str, ...]

    @property
    def worst(self) -> float:
        return max(self.ode_max, *self.bc_errors)


def solve_noniterative(p: SimilarityProblem,
                       cfg: IntegratorConfig = DEFAULT_CONFIG,
                       eta_inf: float = 10.0) -> ScaledSolution:
    """Solve a boundary value problem by one starred IVP plus a rescale.

    The starred problem is integrated on [0, eta_inf] from its
    normalized initial data, the group parameter is computed from the
    terminal f' by the family's formula, and the rescaled solution is
    returned with the physical parameter it implies.

    Raises
    ------
    NonFiniteError, StepLimitError, NonPositiveRadicandError
        Each means this (P*, sign) combination rescales to no physical
        solution on this branch.
    """
    star = integrate_ivp(p.ode_field, star_initial_conditions(p), eta_inf, cfg)
    if p.family is Family.GASIFICATION:
        lam = lambda_gasification(star.df_terminal)
        return rescale_gasification(star, p.P_star, lam)
    lam = lambda_moving_wall(star.df_terminal, p.P_star)
    sol = rescale_moving_wall(star, p.P_star, lam)
    if p.family is Family.CLASSIC_BLASIUS:
        sol = replace(sol, family=Family.CLASSIC_BLASIUS)
    return sol


def _row_for(family: Family, p_star: float, sign: Sign,
             cfg: IntegratorConfig, eta_inf: float) -> SweepRow:
    resolved = Sign.PLUS if family is Family.GASIFICATION else sign
    try:
        sol = solve_noniterative(
            SimilarityProblem(family=family, P_star=p_star, sign=resolved),
            cfg, eta_inf)
    except SolverError as exc:
        status = _STATUS_BY_ERROR.get(type(exc).__name__, type(exc).__name__)
        return SweepRow(P_star=p_star, sign=resolved, df_star_inf=_NAN,
                        lam=_NAN, P_physical=_NAN, f0=_NAN, d2f0=_NAN,
                        eta_inf_used=eta_inf, plateau_ok=False, status=status)
    return SweepRow(
        P_star=p_star,
        sign=resolved,
        df_star_inf=sol.df_star_inf,
        lam=sol.lam,
        P_physical=sol.P_physical,
        f0=sol.f0,
        d2f0=sol.d2f0,
        eta_inf_used=eta_inf,
        plateau_ok=sol.trajectory.plateau_ok,
    )


def sweep(family: Family, P_star_values, sign=Sign.PLUS,
          cfg: IntegratorConfig = DEFAULT_CONFIG, eta_inf: float = 10.0,
          workers: int = 1) -> list[SweepRow]:
    """Solve one problem per P* value, returning rows in input order.

    ``sign`` is either one branch applied to every value or a sequence
    aligned with ``P_star_values``. Solver failures become rows with a
    failure marker in ``status`` instead of aborting, so a sweep across
    a branch boundary records where the branch dies. ``workers`` > 1
    distributes rows over a thread pool; row order is preserved.
    """
    values = [float(v) for v in P_star_values]
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"P_star values must be finite, got {v}")
    if isinstance(sign, Sign):
        signs = [sign] * len(values)
    else:
        signs = list(sign)
        if len(signs) != len(values):
            raise ValueError(
                f"got {len(signs)} signs for {len(values)} P_star values")
    if not values:
        return []
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(
                lambda args: _row_for(family, args[0], args[1], cfg, eta_inf),
                zip(values, signs)))
    return [_row_for(family, v, s, cfg, eta_inf) for v, s in zip(values, signs)]


_INVGOLD = (math.sqrt(5.0) - 1.0) / 2.0


def find_critical_parameter(family: Family = Family.MOVING_WALL,
                            sign: Sign = Sign.PLUS,
                            P_star_bracket: tuple[float, float] = (-1.5, -1.0),
                            cfg: IntegratorConfig = DEFAULT_CONFIG,
                            eta_inf: float = 10.0,
                            xtol: float = 1e-6) -> CriticalResult:
    """Locate the extremal physical parameter on a branch by minimizing
    P(P*) with a golden-section search to a P* tolerance of ``xtol``.

    The bracket must contain an interior minimum; if the best interior
    value never drops below both endpoint values the branch is monotone
    there and NoExtremum is raised. Endpoint evaluations that fail are
    treated as +inf (worse than any interior value).
    """
    a0, b0 = (float(P_star_bracket[0]), float(P_star_bracket[1]))
    if not a0 < b0:
        raise ValueError(f"bracket must be increasing, got {P_star_bracket}")
    if xtol <= 0.0:
        raise ValueError("xtol must be positive")

    scanned: list[tuple[float, float, float]] = []

    def objective(x: float) -> tuple[float, ScaledSolution]:
        sol = solve_noniterative(
            SimilarityProblem(family=family, P_star=x, sign=sign),
            cfg, eta_inf)
        scanned.append((x, sol.P_physical, sol.d2f0))
        return sol.P_physical, sol

    def endpoint_value(x: float) -> float:
        try:
            return objective(x)[0]
        except SolverError:
            return math.inf

    fa = endpoint_value(a0)
    fb = endpoint_value(b0)

    a, b = a0, b0
    x1 = b - _INVGOLD * (b - a)
    x2 = a + _INVGOLD * (b - a)
    f1, s1 = objective(x1)
    f2, s2 = objective(x2)
    best_x, best_f, best_sol = (x1, f1, s1) if f1 <= f2 else (x2, f2, s2)
    iterations = 0
    while b - a > xtol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVGOLD * (b - a)
            f1, s1 = objective(x1)
            if f1 < best_f:
                best_x, best_f, best_sol = x1, f1, s1
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVGOLD * (b - a)
            f2, s2 = objective(x2)
            if f2 < best_f:
                best_x, best_f, best_sol = x2, f2, s2
        iterations += 1

    if best_f >= min(fa, fb):
        raise NoExtremumError(
            f"P(P*) is monotone on [{a0:.6g}, {b0:.6g}]: interior minimum "
            f"{best_f:.6g} does not beat the endpoints")

    return CriticalResult(
        P_c=best_f,
        P_star_at_Pc=best_x,
        bracket=(a0, b0),
        iterations=iterations,
        solution=best_sol,
        scanned=tuple(sorted(scanned)),
    )


_FAIL = "fail"


def solve_for_target_P(family: Family, P_target: float,
                       sign: Sign | None = None,
                       P_star_bracket: tuple[float, float] | None = None,
                       cfg: IntegratorConfig = DEFAULT_CONFIG,
                       eta_inf: float = 10.0,
                       tol: float = 1e-6,
                       max_iter: int = 100) -> ScaledSolution:
    """Find the P* whose rescaled solution has a prescribed physical P.

    Root-finds P(P*) - P_target on the bracket by bisection until the
    bracket width falls below 1e-3, then switches to secant steps, and
    stops when |P - P_target| < ``tol``. A bracket endpoint on which the
    solve fails (blow-up, dead branch) is treated as lying beyond the
    branch boundary and bisected inward. Two closed-form shortcuts skip
    the search: P_target = 0 is the fixed point P* = 0, and the
    wall-driven P_target = 1/2 is the exact half-speed solution, which
    no +-1 branch reaches.

    Raises
    ------
    NoSignChangeError
        P(P*) - P_target has one sign over the whole feasible part of
        the bracket.
    MaxIterationsError
        More than ``max_iter`` solves without meeting ``tol``.
    """
    if family not in (Family.MOVING_WALL, Family.GASIFICATION):
        raise UnsupportedFamilyError(
            f"target solving needs a parametrized family, not {family.value}")
    if sign is None:
        sign = (Sign.PLUS if family is Family.GASIFICATION
                else recommended_sign(P_target))
    if family is Family.MOVING_WALL:
        if P_target == 0.0:
            return solve_noniterative(
                SimilarityProblem(family=family, P_star=0.0, sign=Sign.PLUS),
                cfg, eta_inf)
        if P_target == 0.5 or sign is Sign.DEGENERATE:
            return half_speed_solution(eta_inf)
    if P_star_bracket is None:
        raise ValueError("P_star_bracket is required away from the shortcuts")
    lo, hi = (float(P_star_bracket[0]), float(P_star_bracket[1]))
    if not lo < hi:
        raise ValueError(f"bracket must be increasing, got {P_star_bracket}")

    evals = 0

    def classify(x: float):
        nonlocal evals
        if evals >= max_iter:
            raise MaxIterationsError(
                f"no convergence to P = {P_target} within {max_iter} solves")
        evals += 1
        try:
            sol = solve_noniterative(
                SimilarityProblem(family=family, P_star=x, sign=sign),
                cfg, eta_inf)
        except SolverError:
            return _FAIL, None, None
        g = sol.P_physical - P_target
        return ("neg" if g < 0.0 else "pos"), g, sol

    ka, ga, sa = classify(lo)
    kb, gb, sb = classify(hi)
    if sa is not None and abs(ga) < tol:
        return sa
    if sb is not None and abs(gb) < tol:
        return sb
    if ka == _FAIL and kb == _FAIL:
        raise NoSignChangeError(
            f"both bracket endpoints [{lo:.6g}, {hi:.6g}] are infeasible")
    if ka == kb:
        raise NoSignChangeError(
            f"P - P_target keeps one sign on [{lo:.6g}, {hi:.6g}]")

    # Feasibility phase: shrink past a dead endpoint until the sign
    # change is bracketed by two successful solves. Near a branch
    # boundary P grows without bound, so the crossing survives inside.
    while ka == _FAIL or kb == _FAIL:
        if hi - lo < 1e-12:
            raise NoSignChangeError(
                f"feasible part of [{lo:.6g}, {hi:.6g}] shows no sign change")
        mid = 0.5 * (lo + hi)
        km, gm, sm = classify(mid)
        if sm is not None and abs(gm) < tol:
            return sm
        fail_is_lo = ka == _FAIL
        ok_kind = kb if fail_is_lo else ka
        if km == _FAIL:
            # still beyond the boundary: shrink the dead side
            if fail_is_lo:
                lo, ka, ga = mid, km, gm
            else:
                hi, kb, gb = mid, km, gm
        elif km == ok_kind:
            # same sign as the live end: the crossing, if any, hides
            # between the boundary and mid
            if fail_is_lo:
                hi, kb, gb = mid, km, gm
            else:
                lo, ka, ga = mid, km, gm
        else:
            # opposite sign: a genuine bracket between mid and the
            # live end
            if fail_is_lo:
                lo, ka, ga = mid, km, gm
            else:
                hi, kb, gb = mid, km, gm

    # True-bracket phase: bisect to width 1e-3, then secant with
    # bisection fallback whenever a step leaves the bracket.
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        km, gm, sm = classify(mid)
        if km == _FAIL:
            raise NoSignChangeError(
                f"interior point P* = {mid:.6g} is infeasible")
        if abs(gm) < tol:
            return sm
        if km == ka:
            lo, ga = mid, gm
        else:
            hi, gb = mid, gm

    x_prev, g_prev = lo, ga
    x_cur, g_cur = hi, gb
    while True:
        if g_cur != g_prev:
            x_next = x_cur - g_cur * (x_cur - x_prev) / (g_cur - g_prev)
        else:
            x_next = 0.5 * (lo + hi)
        if not lo < x_next < hi:
            x_next = 0.5 * (lo + hi)
        kn, gn, sn = classify(x_next)
        if kn == _FAIL:
            raise NoSignChangeError(
                f"interior point P* = {x_next:.6g} is infeasible")
        if abs(gn) < tol:
            return sn
        if kn == ka:
            lo, ga = x_next, gn
        else:
            hi, gb = x_next, gn
        x_prev, g_prev = x_cur, g_cur
        x_cur, g_cur = x_next, gn


def dual_solutions(P_target: float, *,
                   family: Family = Family.MOVING_WALL,
                   cfg: IntegratorConfig = DEFAULT_CONFIG,
                   eta_inf: float = 10.0,
                   crit_bracket: tuple[float, float] = (-1.5, -1.0),
                   ) -> tuple[ScaledSolution, ScaledSolution]:
    """Both solutions sharing one physical P in the dual window.

    For the wall-driven family the branch folds at the critical
    parameter: P(P*) falls to P_c and rises back toward 0, so every
    P_target strictly between P_c and 0 is attained twice. The fold is
    located first; each monotone sub-branch is then target-solved, the
    outer one after expanding its bracket by doubling until the sign
    change is captured. Returned in increasing P* order (outer
    sub-branch first); the two members agree on P_physical to the
    target tolerance and differ in d2f0.
    """
    if family is not Family.MOVING_WALL:
        raise UnsupportedFamilyError(
            f"dual solutions arise on the wall-driven fold, not in "
            f"{family.value}")
    crit = find_critical_parameter(family=family, sign=Sign.PLUS,
                                   P_star_bracket=crit_bracket,
                                   cfg=cfg, eta_inf=eta_inf)
    if not crit.P_c < P_target < 0.0:
        raise NoSignChangeError(
            f"P_target = {P_target:.6g} is outside the dual-solution "
            f"window ({crit.P_c:.6f}, 0)")

    def physical(x: float) -> float:
        return solve_noniterative(
            SimilarityProblem(family=family, P_star=x, sign=Sign.PLUS),
            cfg, eta_inf).P_physical

    # Outer sub-branch: P climbs back toward 0 as P* -> -inf, but so
    # slowly that targets very near 0 sit beyond any reasonable P*.
    step = 0.25
    left = crit.P_star_at_Pc - step
    while physical(left) <= P_target:
        step *= 2.0
        left = crit.P_star_at_Pc - step
        if left < -1000.0:
            raise NoSignChangeError(
                f"no sign change down to P* = {left:.6g}; the outer "
                f"sub-branch does not reach P = {P_target:.6g} at "
                "accessible P*")

    outer = solve_for_target_P(family, P_target, Sign.PLUS,
                               (left, crit.P_star_at_Pc), cfg, eta_inf)
    inner = solve_for_target_P(family, P_target, Sign.PLUS,
                               (crit.P_star_at_Pc, -1e-9), cfg, eta_inf)
    return outer, inner


def bvp_residual(sol: ScaledSolution,
                 p: SimilarityProblem | None = None) -> ResidualReport:
    """Check a solution against its boundary value problem from scratch.

    f''' is reconstructed at interior grid points by centered
    second-order differences of f'' on the nonuniform grid, keeping the
    check independent of the integrator's internal derivatives;
    ``ode_max`` is the largest |f''' + c f f''|. The boundary errors
    are the family's two wall conditions and the asymptotic condition
    at the truncated boundary.
    """
    traj = sol.trajectory
    if len(traj) < 3:
        raise ValueError("need at least 3 samples to reconstruct f'''")
    c = p.c if p is not None else (
        1.0 if sol.family is Family.GASIFICATION else 0.5)

    eta, f, df, d2f = traj.eta, traj.f, traj.df, traj.d2f
    h1 = eta[1:-1] - eta[:-2]
    h2 = eta[2:] - eta[1:-1]
    d3f = (h1 * h1 * d2f[2:] - h2 * h2 * d2f[:-2]
           + (h2 * h2 - h1 * h1) * d2f[1:-1]) / (h1 * h2 * (h1 + h2))
    ode_max = float(np.max(np.abs(d3f + c * f[1:-1] * d2f[1:-1])))

    f0 = float(f[0])
    df0 = float(df[0])
    d2f0 = float(d2f[0])
    df_inf = float(df[-1])
    if sol.family is Family.GASIFICATION:
        labels = ("wall f + P f''", "wall f'", "asymptotic f'")
        errs = (abs(f0 + sol.P_physical * d2f0), abs(df0), abs(df_inf - 1.0))
    elif sol.family is Family.MOVING_WALL:
        labels = ("wall f", "wall f' - P", "asymptotic f' - (1 - P)")
        errs = (abs(f0), abs(df0 - sol.P_physical),
                abs(df_inf - (1.0 - sol.P_physical)))
    else:
        labels = ("wall f", "wall f'", "asymptotic f'")
        errs = (abs(f0), abs(df0), abs(df_inf - 1.0))
    return ResidualReport(ode_max=ode_max, bc_errors=errs, bc_labels=labels)
