"""Problem-family and sign tags used throughout the package."""

from __future__ import annotations

import enum


class Family(str, enum.Enum):
    """The similarity-equation families handled by the solver.

    ``FALKNER_SKAN`` is constructible for invariance analysis only; the
    solve paths reject it.
    """

    CLASSIC_BLASIUS = "classic-blasius"
    MOVING_WALL = "moving-wall"
    GASIFICATION = "gasification"
    FALKNER_SKAN = "falkner-skan"

    def __str__(self) -> str:
        return self.value


class Sign(enum.IntEnum):
    """Normalization sign of the star second derivative at the wall.

    ``DEGENERATE`` marks the wall speed exactly half the stream speed,
    where no unit normalization exists (the solution is linear there).
    """

    PLUS = 1
    MINUS = -1
    DEGENERATE = 0

    def __str__(self) -> str:
        return {Sign.PLUS: "+1", Sign.MINUS: "-1", Sign.DEGENERATE: "0"}[self]


def family_from_string(name: str) -> Family:
    try:
        return Family(name)
    except ValueError:
        valid = ", ".join(f.value for f in Family)
        raise ValueError(f"unknown family {name!r}; expected one of: {valid}") from None


def sign_from_string(text: str) -> Sign:
    mapping = {"+1": Sign.PLUS, "1": Sign.PLUS, "plus": Sign.PLUS,
               "-1": Sign.MINUS, "minus": Sign.MINUS}
    try:
        return mapping[text.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown sign {text!r}; expected +1 or -1") from None
