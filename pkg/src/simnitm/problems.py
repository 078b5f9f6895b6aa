"""Problem definitions for the supported similarity families.

Three families are solvable by the one-shot rescaling route:

* classic-blasius: f''' + c f f'' = 0 with an impermeable fixed wall,
  the historic flat-plate problem; both normalizations c = 1/2 and
  c = 1 are in use and either may be requested.
* moving-wall: c = 1/2 with the wall moving at speed ratio P and the
  stream at 1 - P; reduces to classic-blasius at P = 0.
* gasification: c = 1 with wall transpiration coupled to shear through
  f(0) = -P f''(0), P being the transfer number.

The wedge-flow family (falkner-skan) is representable for bookkeeping
but admits no compatible stretching group, so it cannot be solved here;
the invariance module proves that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedFamilyError
from .families import Family, Sign
from .ode_core import IvpState, OdeField, Trajectory
from .scaling import (
    BLASIUS_GROUP,
    GASIFICATION_GROUP,
    GroupExponents,
    MOVING_WALL_GROUP,
    ScaledSolution,
)

__all__ = [
    "SimilarityProblem",
    "star_initial_conditions",
    "recommended_sign",
    "half_speed_solution",
]

_DEFAULT_C = {
    Family.CLASSIC_BLASIUS: 0.5,
    Family.MOVING_WALL: 0.5,
    Family.GASIFICATION: 1.0,
}

_GROUPS = {
    Family.CLASSIC_BLASIUS: BLASIUS_GROUP,
    Family.MOVING_WALL: MOVING_WALL_GROUP,
    Family.GASIFICATION: GASIFICATION_GROUP,
}


@dataclass(frozen=True)
class SimilarityProblem:
    """One starred initial value problem, ready to integrate.

    ``P_star`` is the free parameter of the starred problem; the
    physical parameter emerges only after rescaling. ``sign`` selects
    the branch of the normalized wall shear where a choice exists
    (wall-driven only). ``c`` defaults to the family's convective
    coefficient and is pinned for the parametrized families;
    classic-blasius accepts either common normalization.
    """

    family: Family
    P_star: float = 0.0
    sign: Sign = Sign.PLUS
    c: float | None = None

    def __post_init__(self) -> None:
        if self.family is Family.FALKNER_SKAN:
            raise UnsupportedFamilyError(
                "the wedge-flow family is not solvable by the one-shot "
                "rescaling route; it admits no compatible stretching group")
        if not math.isfinite(self.P_star):
            raise ValueError("P_star must be finite")
        if self.family is Family.CLASSIC_BLASIUS and self.P_star != 0.0:
            raise ValueError(
                f"classic-blasius has no free parameter; P_star must be 0, "
                f"got {self.P_star}")
        if self.family is Family.GASIFICATION and self.sign is not Sign.PLUS:
            raise ValueError(
                "gasification fixes the normalized wall shear at +1")
        default_c = _DEFAULT_C[self.family]
        if self.c is None:
            object.__setattr__(self, "c", default_c)
        elif self.family is Family.CLASSIC_BLASIUS:
            if self.c <= 0.0:
                raise ValueError(f"coefficient c must be positive, got {self.c}")
        elif self.c != default_c:
            raise ValueError(
                f"{self.family.value} requires c = {default_c}, got {self.c}")

    @property
    def group(self) -> GroupExponents:
        return _GROUPS[self.family]

    @property
    def ode_field(self) -> OdeField:
        return OdeField(c=self.c, fs_term=False, P=0.0)


def star_initial_conditions(p: SimilarityProblem) -> IvpState:
    """Normalized initial data for the starred IVP.

    Wall-driven problems (and classic-blasius, their P* = 0 case) start
    from (0, P*, sign); gasification starts from (-P*, 0, +1), folding
    the coupled wall condition into the first component.
    """
    if p.family is Family.GASIFICATION:
        return IvpState(eta=0.0, f=-p.P_star, df=0.0, d2f=1.0)
    return IvpState(eta=0.0, f=0.0, df=p.P_star, d2f=float(int(p.sign)))


def recommended_sign(P_physical_estimate: float) -> Sign:
    """Branch of the normalized wall shear for a physical speed ratio.

    Below the half-speed point the shear at the wall is positive, above
    it negative; exactly at P = 0.5 the shear vanishes identically and
    no unit normalization exists.
    """
    if P_physical_estimate < 0.5:
        return Sign.PLUS
    if P_physical_estimate > 0.5:
        return Sign.MINUS
    return Sign.DEGENERATE


def half_speed_solution(eta_inf: float = 10.0, n: int = 2001) -> ScaledSolution:
    """Closed form at P = 0.5: f = eta / 2, so f' = 1/2 and f'' = 0.

    Both boundary values equal the mid-speed 1 - P = P = 1/2 and the
    equation is satisfied exactly; zero wall shear here does not mark
    separation, so the case is a valid solution rather than an error.
    """
    if eta_inf <= 0.0:
        raise ValueError(f"eta_inf must be positive, got {eta_inf}")
    if n < 2:
        raise ValueError(f"need at least 2 grid points, got {n}")
    eta = np.linspace(0.0, eta_inf, n)
    traj = Trajectory(
        eta=eta,
        f=eta / 2.0,
        df=np.full(n, 0.5),
        d2f=np.zeros(n),
        eta_inf=eta_inf,
        df_terminal=0.5,
        plateau_ok=True,
    )
    return ScaledSolution(
        lam=1.0,
        P_physical=0.5,
        f0=0.0,
        df0=0.5,
        d2f0=0.0,
        trajectory=traj,
        family=Family.MOVING_WALL,
    )
