"""Adaptive integration of third-order boundary-layer similarity ODEs.

The governing family is

    f''' + c * f * f'' + P * (1 - f'**2) * chi = 0

on a truncated interval [0, eta_inf], where ``chi`` toggles the
wedge-flow forcing term. Integration uses an embedded Dormand-Prince
5(4) pair with PI step-size control; every accepted step is recorded so
downstream rescaling can map the grid pointwise. The terminal value of
f' serves as the estimate of its asymptotic limit, certified by a
plateau criterion on |f''| at the truncated boundary.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import NonFiniteError, StepLimitError

__all__ = [
    "OdeField",
    "IvpState",
    "IntegratorConfig",
    "Trajectory",
    "DEFAULT_CONFIG",
    "integrate_ivp",
    "estimate_truncated_boundary",
    "resample_uniform",
]


@dataclass(frozen=True)
class OdeField:
    """Right-hand side descriptor: f''' = -c*f*f'' - P*(1 - f'**2)*chi.

    ``c`` is the coefficient of the convective term (1/2 or 1 for the
    supported families; any non-negative value is accepted, and c = 0 is
    a test hook that reduces the equation to f''' = 0). ``P`` only
    enters when ``fs_term`` is set.
    """

    c: float
    fs_term: bool = False
    P: float = 0.0

    def __post_init__(self) -> None:
        if self.c < 0.0:
            raise ValueError(f"coefficient c must be >= 0, got {self.c}")


@dataclass(frozen=True)
class IvpState:
    """Point sample (eta, f, f', f'') of a similarity solution."""

    eta: float
    f: float
    df: float
    d2f: float

    def is_finite(self) -> bool:
        return (math.isfinite(self.eta) and math.isfinite(self.f)
                and math.isfinite(self.df) and math.isfinite(self.d2f))


@dataclass(frozen=True)
class IntegratorConfig:
    """Error control and work bounds for the adaptive stepper.

    ``plateau_tol`` is the threshold on |f''(eta_inf)| below which f' is
    considered flattened, i.e. the truncated boundary is far enough out.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-10
    initial_step: float = 1e-3
    max_steps: int = 1_000_000
    plateau_tol: float = 1e-6

    def __post_init__(self) -> None:
        for name in ("rel_tol", "abs_tol", "initial_step", "plateau_tol"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if self.max_steps <= 0:
            raise ValueError("max_steps must be positive")


DEFAULT_CONFIG = IntegratorConfig()


@dataclass
class Trajectory:
    """Accepted-step record of one IVP integration.

    The four column arrays are aligned; ``eta`` is strictly increasing,
    starts at 0 and ends at ``eta_inf``. ``df_terminal`` is the value of
    f' at the last sample and stands in for f'(infinity) whenever
    ``plateau_ok`` is set.
    """

    eta: np.ndarray
    f: np.ndarray
    df: np.ndarray
    d2f: np.ndarray
    eta_inf: float
    df_terminal: float
    plateau_ok: bool

    def __len__(self) -> int:
        return self.eta.size

    def __getitem__(self, i: int) -> IvpState:
        return IvpState(float(self.eta[i]), float(self.f[i]),
                        float(self.df[i]), float(self.d2f[i]))

    @property
    def initial_state(self) -> IvpState:
        return self[0]

    @property
    def terminal_state(self) -> IvpState:
        return self[-1]


# Dormand-Prince 5(4) tableau. The last stage row doubles as the 5th
# order weights (FSAL); E holds the 5th-minus-4th order weight gap used
# for the embedded error estimate.
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

# PI controller constants (order-5 pair).
_SAFETY = 0.9
_ALPHA = 0.7 / 5.0
_BETA = 0.4 / 5.0
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


def _rhs(field: OdeField, f: float, df: float, d2f: float) -> tuple[float, float, float]:
    d3f = -field.c * f * d2f
    if field.fs_term:
        d3f -= field.P * (1.0 - df * df)
    return df, d2f, d3f


def integrate_ivp(field: OdeField, y0: IvpState, eta_inf: float,
                  cfg: IntegratorConfig = DEFAULT_CONFIG) -> Trajectory:
    """Integrate the similarity ODE from ``y0`` up to ``eta_inf``.

    Parameters
    ----------
    field : OdeField
        Right-hand side coefficients.
    y0 : IvpState
        Initial state; ``y0.eta`` must be 0.
    eta_inf : float
        Truncated boundary (> 0). The final accepted step lands on it
        exactly.
    cfg : IntegratorConfig
        Tolerances, initial step and work bound.

    Returns
    -------
    Trajectory
        All accepted steps, including the initial state.

    Raises
    ------
    NonFiniteError
        The solution left the finite range (or the step size underflowed
        while approaching a singularity) before ``eta_inf``.
    StepLimitError
        ``cfg.max_steps`` step attempts were exhausted.
    """
    if y0.eta != 0.0:
        raise ValueError(f"initial state must start at eta = 0, got {y0.eta}")
    if not y0.is_finite():
        raise NonFiniteError("initial state is not finite")
    if eta_inf <= 0.0:
        raise ValueError(f"eta_inf must be positive, got {eta_inf}")

    eta = 0.0
    y = (y0.f, y0.df, y0.d2f)
    k1 = _rhs(field, *y)

    etas = [0.0]
    cols = [[y0.f], [y0.df], [y0.d2f]]

    h = min(cfg.initial_step, eta_inf)
    err_prev = 1.0
    attempts = 0

    while eta < eta_inf:
        if attempts >= cfg.max_steps:
            raise StepLimitError(
                f"exceeded {cfg.max_steps} step attempts at eta = {eta:.6g}")
        attempts += 1

        h = min(h, eta_inf - eta)
        if h <= 1e-14 * max(1.0, abs(eta)):
            raise NonFiniteError(
                f"step size underflow near eta = {eta:.6g}; "
                "the solution is approaching a singularity")

        ks = [k1]
        bad = False
        for s in range(1, 7):
            a = _DP_A[s]
            ys = tuple(
                y[i] + h * sum(a[j] * ks[j][i] for j in range(s))
                for i in range(3)
            )
            if not all(math.isfinite(v) for v in ys):
                bad = True
                break
            ks.append(_rhs(field, *ys))
        if not bad:
            y_new = ys  # stage 7 uses the 5th order weights (FSAL)
            err_terms = tuple(
                h * sum(_DP_E[j] * ks[j][i] for j in range(7))
                for i in range(3)
            )
            bad = not all(math.isfinite(v) for v in y_new + err_terms)

        if bad:
            h *= _MIN_FACTOR
            continue

        err = 0.0
        for i in range(3):
            scale = cfg.abs_tol + cfg.rel_tol * max(abs(y[i]), abs(y_new[i]))
            err += (err_terms[i] / scale) ** 2
        err = math.sqrt(err / 3.0)

        if err <= 1.0:
            eta += h
            y = y_new
            k1 = ks[6]  # FSAL: last stage is the first of the next step
            etas.append(eta)
            for i in range(3):
                cols[i].append(y[i])
            if err == 0.0:
                factor = _MAX_FACTOR
            else:
                factor = _SAFETY * err ** (-_ALPHA) * err_prev ** _BETA
                factor = min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
            err_prev = err
            h *= factor
        else:
            h *= min(1.0, max(_MIN_FACTOR, _SAFETY * err ** (-0.2)))

    d2f_last = cols[2][-1]
    return Trajectory(
        eta=np.asarray(etas),
        f=np.asarray(cols[0]),
        df=np.asarray(cols[1]),
        d2f=np.asarray(cols[2]),
        eta_inf=eta_inf,
        df_terminal=cols[1][-1],
        plateau_ok=abs(d2f_last) < cfg.plateau_tol,
    )


def resample_uniform(traj: Trajectory, n: int) -> Trajectory:
    """Resample a trajectory onto ``n`` uniform points for plot output.

    f is interpolated by cubic Hermite from the (f, f') node data and f'
    from (f', f''); f'' is the exact derivative of the f' interpolant,
    so the three columns stay mutually consistent. Accuracy is
    interpolation-limited; keep quantitative work on the accepted-step
    grid.
    """
    if n < 2:
        raise ValueError(f"need at least 2 resample points, got {n}")
    if len(traj) < 2:
        raise ValueError("trajectory too short to resample")
    x = np.linspace(traj.eta[0], traj.eta[-1], n)
    i = np.clip(np.searchsorted(traj.eta, x, side="right") - 1, 0, len(traj) - 2)
    h = traj.eta[i + 1] - traj.eta[i]
    t = (x - traj.eta[i]) / h
    u = 1.0 - t

    def hermite(y, dy):
        return (y[i] * (1.0 + 2.0 * t) * u * u
                + dy[i] * h * t * u * u
                + y[i + 1] * t * t * (3.0 - 2.0 * t)
                - dy[i + 1] * h * t * t * u)

    def hermite_deriv(y, dy):
        return (6.0 * t * u * (y[i + 1] - y[i]) / h
                + dy[i] * u * (1.0 - 3.0 * t)
                + dy[i + 1] * t * (3.0 * t - 2.0))

    f = hermite(traj.f, traj.df)
    df = hermite(traj.df, traj.d2f)
    d2f = hermite_deriv(traj.df, traj.d2f)
    return Trajectory(eta=x, f=f, df=df, d2f=d2f, eta_inf=traj.eta_inf,
                      df_terminal=float(df[-1]), plateau_ok=traj.plateau_ok)


def estimate_truncated_boundary(field: OdeField, y0: IvpState,
                                cfg: IntegratorConfig,
                                eta_candidates: list[float]) -> float:
    """Pick the smallest candidate boundary at which f' has flattened.

    A candidate qualifies when its integration meets the plateau
    criterion and moving to the next candidate changes the terminal f'
    by less than ``cfg.plateau_tol``. If no candidate qualifies, the
    largest one is returned with a warning.
    """
    if not eta_candidates:
        raise ValueError("eta_candidates must be nonempty")
    if any(b <= a for a, b in zip(eta_candidates, eta_candidates[1:])):
        raise ValueError("eta_candidates must be strictly increasing")

    prev = integrate_ivp(field, y0, eta_candidates[0], cfg)
    for i in range(1, len(eta_candidates)):
        cur = integrate_ivp(field, y0, eta_candidates[i], cfg)
        if prev.plateau_ok and abs(cur.df_terminal - prev.df_terminal) < cfg.plateau_tol:
            return eta_candidates[i - 1]
        prev = cur
    warnings.warn(
        "no candidate boundary met the plateau criterion; "
        f"falling back to {eta_candidates[-1]}", stacklevel=2)
    return eta_candidates[-1]
