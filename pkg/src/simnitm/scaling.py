"""Scaling-group transformations between starred and physical solutions.

Each supported problem admits a one-parameter stretching group

    eta = lam * eta*,  f = f* / lam,  f' = f* ' / lam**2,  f'' = f* '' / lam**3

under which the governing equation and all wall conditions are invariant
while the remaining physics (the wall-speed or gasification parameter,
and the asymptotic speed ratio) transform by powers of lam. Solving the
starred IVP once with normalized initial data and then choosing lam to
satisfy the far-field condition turns the boundary value problem into a
single initial value problem; no shooting iteration is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonPositiveRadicandError
from .families import Family
from .ode_core import Trajectory

__all__ = [
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
]


@dataclass(frozen=True)
class GroupExponents:
    """Powers of the group parameter lam: the starred variables are
    eta* = lam**alpha_eta * eta, f* = lam**alpha_f * f,
    P* = lam**alpha_P * P."""

    alpha_eta: float
    alpha_f: float
    alpha_P: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha_eta, self.alpha_f, self.alpha_P)


# Derivatives pick up one extra (alpha_f - alpha_eta) per order, so
# these three exponents determine the whole transformation.
MOVING_WALL_GROUP = GroupExponents(alpha_eta=-1.0, alpha_f=1.0, alpha_P=2.0)
GASIFICATION_GROUP = GroupExponents(alpha_eta=-1.0, alpha_f=1.0, alpha_P=-2.0)
BLASIUS_GROUP = GroupExponents(alpha_eta=-1.0, alpha_f=1.0, alpha_P=0.0)


@dataclass(frozen=True)
class ScaledSolution:
    """A physical-variable solution produced by rescaling a starred run.

    ``lam`` is the group parameter that was applied and ``P_physical``
    the problem parameter it implies. ``f0``, ``df0``, ``d2f0`` are the
    recovered wall values (d2f0 is the skin-friction coefficient) and
    ``trajectory`` holds the rescaled grid.
    """

    lam: float
    P_physical: float
    f0: float
    df0: float
    d2f0: float
    trajectory: Trajectory
    family: Family

    @property
    def P_star(self) -> float:
        """Starred parameter recovered through the group law."""
        if self.family is Family.GASIFICATION:
            return self.P_physical / (self.lam * self.lam)
        return self.P_physical * self.lam * self.lam

    @property
    def df_star_inf(self) -> float:
        """Terminal f' of the underlying starred run."""
        if self.family is Family.GASIFICATION:
            return self.lam * self.lam
        return self.lam * self.lam - self.P_star


def lambda_moving_wall(df_star_inf: float, P_star: float) -> float:
    """Group parameter for the wall-driven family.

    The far-field condition f'(inf) = 1 - P combined with the group law
    fixes lam = sqrt(f*'(eta*_inf) + P*).
    """
    radicand = df_star_inf + P_star
    if radicand <= 0.0:
        raise NonPositiveRadicandError(
            f"f*'(inf) + P* = {radicand:.6g} must be positive; this "
            "(P*, sign) starred solution rescales to no physical solution")
    return math.sqrt(radicand)


def lambda_gasification(df_star_inf: float) -> float:
    """Group parameter for the gasification family.

    The far-field condition f'(inf) = 1 fixes lam = sqrt(f*'(eta*_inf)).
    """
    if df_star_inf <= 0.0:
        raise NonPositiveRadicandError(
            f"f*'(inf) = {df_star_inf:.6g} must be positive; this starred "
            "solution rescales to no physical solution")
    return math.sqrt(df_star_inf)


def _check_lam(lam: float) -> None:
    if not (lam > 0.0 and math.isfinite(lam)):
        raise ValueError(f"group parameter must be positive and finite, got {lam}")


def apply_group(star: Trajectory, lam: float) -> Trajectory:
    """Map a starred trajectory to physical variables pointwise:
    eta = lam*eta*, f = f*/lam, f' = f*'/lam**2, f'' = f*''/lam**3.

    The plateau flag is carried over unchanged; |f''| only shrinks under
    the map when lam > 1, so callers recheck it when that matters.
    """
    _check_lam(lam)
    inv = 1.0 / lam
    return Trajectory(
        eta=star.eta * lam,
        f=star.f * inv,
        df=star.df * inv * inv,
        d2f=star.d2f * inv * inv * inv,
        eta_inf=star.eta_inf * lam,
        df_terminal=star.df_terminal * inv * inv,
        plateau_ok=star.plateau_ok,
    )


def _check_star_start(star: Trajectory, f0: float, df0: float,
                      what: str) -> None:
    s = star.initial_state
    if not (math.isclose(s.f, f0, abs_tol=1e-12)
            and math.isclose(s.df, df0, abs_tol=1e-12)):
        raise ValueError(
            f"starred trajectory does not start from the {what} "
            f"normalized data (f*, f*')(0) = ({f0:.6g}, {df0:.6g}); "
            f"got ({s.f:.6g}, {s.df:.6g})")


def rescale_moving_wall(star: Trajectory, P_star: float,
                        lam: float) -> ScaledSolution:
    """Rescale a starred wall-driven run to physical variables.

    The starred run must start from (f*, f*', f*'')(0) = (0, P*, s) with
    s the sign branch. The recovered wall values are f'(0) = P*/lam**2
    and f''(0) = f*''(0)/lam**3; the physical parameter is P = P*/lam**2,
    so f'(0) = P holds by construction, and when lam came from
    ``lambda_moving_wall`` the terminal f' equals 1 - P within the
    plateau tolerance.
    """
    _check_lam(lam)
    _check_star_start(star, 0.0, P_star, "wall-driven")
    phys = apply_group(star, lam)
    inv2 = 1.0 / (lam * lam)
    p = P_star * inv2
    return ScaledSolution(
        lam=lam,
        P_physical=p,
        f0=0.0,
        df0=p,
        d2f0=star.initial_state.d2f * inv2 / lam,
        trajectory=phys,
        family=Family.MOVING_WALL,
    )


def rescale_gasification(star: Trajectory, P_star: float,
                         lam: float) -> ScaledSolution:
    """Rescale a starred gasification run to physical variables.

    The starred run must start from (f*, f*', f*'')(0) = (-P*, 0, 1).
    The physical parameter is P = P* * lam**2, the recovered wall values
    f(0) = -P*/lam and f''(0) = 1/lam**3; the coupled wall condition
    f(0) = -P * f''(0) therefore holds identically.
    """
    _check_lam(lam)
    _check_star_start(star, -P_star, 0.0, "gasification")
    phys = apply_group(star, lam)
    return ScaledSolution(
        lam=lam,
        P_physical=P_star * lam * lam,
        f0=-P_star / lam,
        df0=0.0,
        d2f0=star.initial_state.d2f / (lam * lam * lam),
        trajectory=phys,
        family=Family.GASIFICATION,
    )
