"""Exact applicability test for the one-shot scaling route.

A family is solvable by the rescaling method only if its governing
equation and wall conditions admit a stretching group

    eta~ = lam**a1 * eta,  f~ = lam**a2 * f,  P~ = lam**a3 * P

with the asymptotic condition transforming non-invariantly (that is
what lets the group parameter absorb the far-field condition). Each
term of the transformed equation picks up lam to a power that is linear
in (a1, a2, a3); form-invariance forces all term exponents equal, and
each non-homogeneous wall condition adds one more equality. The
resulting homogeneous linear system is solved exactly over the
rationals: a trivial nullspace means no group exists, which is how the
wedge-flow family is excluded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .families import Family

__all__ = [
    "ExponentSystem",
    "InvarianceReport",
    "build_exponent_system",
    "solve_exponent_system",
]

Vec = tuple[Fraction, Fraction, Fraction]


def _vec(a1, a2, a3) -> Vec:
    return (Fraction(a1), Fraction(a2), Fraction(a3))


def _sub(u: Vec, v: Vec) -> Vec:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


# lam-exponent of each term as a linear form in (a1, a2, a3). A k-th
# derivative of f contributes a2 - k*a1; products add their exponents.
_TERM_EXPONENTS: dict[str, Vec] = {
    "f'''": _vec(-3, 1, 0),
    "f f''": _vec(-2, 2, 0),
    "P": _vec(0, 0, 1),
    "P (f')^2": _vec(-2, 2, 1),
    "f' (wall)": _vec(-1, 1, 0),
    "P (wall)": _vec(0, 0, 1),
    "f (wall)": _vec(0, 1, 0),
    "P f'' (wall)": _vec(-2, 1, 1),
}

# The asymptotic condition constrains f' at infinity, which transforms
# with exponent a2 - a1; the method needs this to be nonzero.
_ASYMPTOTIC: Vec = _vec(-1, 1, 0)


@dataclass(frozen=True)
class ExponentSystem:
    """Homogeneous constraints on the group exponents (a1, a2, a3).

    Each row equates the lam-exponents of two terms that invariance
    forces to scale alike; ``labels`` names the pair. Wall conditions
    whose both sides are zero (f(0) = 0, f'(0) = 0) constrain nothing
    and contribute no row. ``asymptotic`` is the linear form giving the
    exponent of the far-field condition.
    """

    rows: tuple[Vec, ...]
    labels: tuple[str, ...]
    asymptotic: Vec = _ASYMPTOTIC


@dataclass(frozen=True)
class InvarianceReport:
    """Nullspace of an exponent system with the applicability verdict.

    ``applicable`` holds when a nontrivial group exists and at least
    one basis direction moves the asymptotic condition; the per-vector
    far-field exponents are listed alongside.
    """

    nullspace_dim: int
    basis: tuple[Vec, ...]
    applicable: bool
    asymptotic_exponents: tuple[Fraction, ...]


def _pair(t1: str, t2: str) -> tuple[Vec, str]:
    return _sub(_TERM_EXPONENTS[t1], _TERM_EXPONENTS[t2]), f"{t1} ~ {t2}"


def build_exponent_system(family: Family) -> ExponentSystem:
    """Invariance constraints of a family's equation and wall conditions.

    Consecutive terms of the governing equation are paired row by row;
    the wall-driven speed condition f'(0) = P and the gasification
    coupling f(0) = -P f''(0) each add one row. The wedge-flow family
    pairs all four of its equation terms and has homogeneous wall
    conditions, so it contributes exactly three rows.
    """
    if family is Family.FALKNER_SKAN:
        pairs = [_pair("f'''", "f f''"), _pair("f f''", "P"),
                 _pair("P", "P (f')^2")]
    elif family is Family.MOVING_WALL:
        pairs = [_pair("f'''", "f f''"), _pair("f' (wall)", "P (wall)")]
    elif family is Family.GASIFICATION:
        pairs = [_pair("f'''", "f f''"), _pair("f (wall)", "P f'' (wall)")]
    else:
        raise ValueError(
            f"no exponent system for {family.value}; analyze moving-wall "
            "or gasification (classic-blasius is their P* = 0 case)")
    rows = tuple(r for r, _ in pairs)
    labels = tuple(l for _, l in pairs)
    return ExponentSystem(rows=rows, labels=labels)


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    mat = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(3):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    return mat, pivots


def _canonicalize(v: Vec) -> Vec:
    lead = next(x for x in v if x != 0)
    scaled = tuple(x / abs(lead) for x in v)
    # orient so the f exponent is positive when present, matching the
    # f~ = lam * f convention of the hard-coded groups
    ref = scaled[1] if scaled[1] != 0 else next(x for x in scaled if x != 0)
    if ref < 0:
        scaled = tuple(-x for x in scaled)
    return scaled


def solve_exponent_system(system: ExponentSystem) -> InvarianceReport:
    """Exact nullspace of the constraint system.

    Gaussian elimination over the rationals, so the reported dimension
    is a theorem about the family rather than a numerical judgement.
    Basis vectors are canonicalized (leading magnitude 1, f exponent
    positive), making the result independent of row order.
    """
    mat, pivots = _rref([list(r) for r in system.rows])
    free = [c for c in range(3) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * 3
        v[fc] = Fraction(1)
        for pr, pc in enumerate(pivots):
            v[pc] = -mat[pr][fc]
        basis.append(_canonicalize(tuple(v)))
    asym = tuple(
        sum(a * x for a, x in zip(system.asymptotic, v)) for v in basis)
    applicable = len(basis) >= 1 and any(e != 0 for e in asym)
    return InvarianceReport(
        nullspace_dim=len(basis),
        basis=tuple(basis),
        applicable=applicable,
        asymptotic_exponents=tuple(asym),
    )
