"""Command-line front end.

Subcommands: solve (one starred parameter to a physical solution),
sweep (a table of solves), critical (fold location on a branch), target
(root-find a prescribed physical parameter) and invariance (exact
applicability test). Tables are written as CSV/TSV with UTF-8, LF line
endings, a single header line, and shortest round-trip float formatting,
so identical inputs produce byte-identical files.

Exit codes: 0 success, 1 usage error, 2 solver failure, 3 scaling group
not applicable (invariance verdict).
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .analysis import (
    bvp_residual,
    find_critical_parameter,
    solve_for_target_P,
    solve_noniterative,
    sweep,
)
from .errors import SolverError
from .families import Family, Sign, family_from_string, sign_from_string
from .invariance import build_exponent_system, solve_exponent_system
from .ode_core import (
    IntegratorConfig,
    estimate_truncated_boundary,
    resample_uniform,
)
from .problems import SimilarityProblem, recommended_sign, star_initial_conditions

__all__ = ["main"]

_ETA_CANDIDATES = (5.0, 10.0, 15.0, 20.0)


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings of one solve- or target-mode invocation."""

    family: Family
    sign: Sign
    eta_inf: float
    cfg: IntegratorConfig
    outdir: Path
    fmt: str
    P_star: float | None = None
    target_P: float | None = None
    resample: int = 0


def _fmt_value(x) -> str:
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _write_table(path: Path, fmt: str, header, rows) -> None:
    delim = "\t" if fmt == "tsv" else ","
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter=delim, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt_value(v) for v in row])


def _integrator_config(args) -> IntegratorConfig:
    return IntegratorConfig(
        rel_tol=args.rel_tol,
        abs_tol=args.abs_tol,
        initial_step=args.initial_step,
        max_steps=args.max_steps,
        plateau_tol=args.plateau_tol,
    )


def _resolve_eta_inf(spec: str, problem: SimilarityProblem,
                     cfg: IntegratorConfig,
                     fallback: float | None = None) -> float:
    """Fixed boundary, or the smallest candidate at which f' flattens.

    ``fallback`` is used when the probe problem itself has no solution
    (an infeasible bracket endpoint, say); commands that probe at an
    arbitrary point pass one instead of failing the whole run.
    """
    if spec != "auto":
        value = float(spec)
        if value <= 0.0:
            raise ValueError(f"eta-inf must be positive, got {value}")
        return value
    try:
        return estimate_truncated_boundary(
            problem.ode_field, star_initial_conditions(problem), cfg,
            list(_ETA_CANDIDATES))
    except SolverError:
        if fallback is None:
            raise
        return fallback


def _resolve_sign(spec: str, family: Family, p_star: float,
                  cfg: IntegratorConfig, eta_inf: float) -> Sign:
    if spec != "auto":
        return sign_from_string(spec)
    if family is not Family.MOVING_WALL:
        return Sign.PLUS
    # pilot on the positive-shear branch; fall back to the other one
    # when that branch has no solution for this P*
    try:
        pilot = solve_noniterative(
            SimilarityProblem(family=family, P_star=p_star, sign=Sign.PLUS),
            cfg, eta_inf)
    except SolverError:
        return Sign.MINUS
    resolved = recommended_sign(pilot.P_physical)
    return Sign.PLUS if resolved is Sign.DEGENERATE else resolved


def _emit_solution(sol, run: RunConfig) -> float:
    """Write solution and summary tables; return the oracle residual."""
    report = bvp_residual(sol)
    traj = sol.trajectory
    if run.resample:
        traj = resample_uniform(traj, run.resample)
    run.outdir.mkdir(parents=True, exist_ok=True)
    ext = run.fmt
    _write_table(
        run.outdir / f"solution.{ext}", run.fmt,
        ("eta", "f", "df", "d2f"),
        zip((float(v) for v in traj.eta), (float(v) for v in traj.f),
            (float(v) for v in traj.df), (float(v) for v in traj.d2f)))
    _write_table(
        run.outdir / f"summary.{ext}", run.fmt,
        ("family", "p_star", "sign", "df_star_inf", "lambda", "P", "f0",
         "df0", "d2f0", "eta_inf", "ode_max_residual"),
        [(sol.family.value, sol.P_star, str(_solution_sign(sol)),
          sol.df_star_inf, sol.lam, sol.P_physical, sol.f0, sol.df0,
          sol.d2f0, traj.eta_inf, report.ode_max)])
    return report.ode_max


def _solution_sign(sol) -> Sign:
    star_d2f0 = sol.d2f0 * sol.lam ** 3
    if star_d2f0 > 0.5:
        return Sign.PLUS
    if star_d2f0 < -0.5:
        return Sign.MINUS
    return Sign.DEGENERATE


def cmd_solve(args) -> int:
    family = family_from_string(args.family)
    cfg = _integrator_config(args)
    if args.sign != "auto":
        sign = sign_from_string(args.sign)
        problem = SimilarityProblem(family=family, P_star=args.pstar,
                                    sign=sign)
        eta_inf = _resolve_eta_inf(args.eta_inf, problem, cfg)
    else:
        # the boundary estimate must run on the branch actually solved,
        # so pilot on the plus branch first, then re-estimate if needed
        pilot = SimilarityProblem(family=family, P_star=args.pstar,
                                  sign=Sign.PLUS)
        eta_pilot = _resolve_eta_inf(args.eta_inf, pilot, cfg, fallback=10.0)
        sign = _resolve_sign("auto", family, args.pstar, cfg, eta_pilot)
        problem = SimilarityProblem(family=family, P_star=args.pstar,
                                    sign=sign)
        if sign is Sign.PLUS:
            eta_inf = eta_pilot
        else:
            eta_inf = _resolve_eta_inf(args.eta_inf, problem, cfg,
                                       fallback=eta_pilot)
    run = RunConfig(family=family, sign=sign, eta_inf=eta_inf, cfg=cfg,
                    outdir=Path(args.outdir), fmt=args.format,
                    P_star=args.pstar, resample=args.resample)
    sol = solve_noniterative(problem, cfg, eta_inf)
    ode_max = _emit_solution(sol, run)
    print(f"family = {family.value}  P* = {_fmt_value(args.pstar)}  "
          f"sign = {sign}")
    print(f"lambda = {_fmt_value(sol.lam)}  P = {_fmt_value(sol.P_physical)}")
    print(f"f(0) = {_fmt_value(sol.f0)}  f'(0) = {_fmt_value(sol.df0)}  "
          f"f''(0) = {_fmt_value(sol.d2f0)}")
    print(f"eta_inf = {_fmt_value(sol.trajectory.eta_inf)}  "
          f"ode_max_residual = {_fmt_value(ode_max)}")
    print(f"wrote {run.outdir / f'solution.{run.fmt}'} and "
          f"{run.outdir / f'summary.{run.fmt}'}")
    return 0


def _read_pstar_values(args) -> list[float]:
    if args.pstar_values is not None:
        items = [s for s in args.pstar_values.split(",") if s.strip()]
    else:
        text = Path(args.pstar_file).read_text(encoding="utf-8")
        items = [line.strip() for line in text.splitlines()
                 if line.strip() and not line.lstrip().startswith("#")]
    try:
        return [float(s) for s in items]
    except ValueError as exc:
        raise ValueError(f"unreadable P* value: {exc}") from None


def _worker_count(args) -> int:
    cap = os.environ.get("SIMNITM_THREADS")
    workers = args.workers
    if cap is not None:
        try:
            workers = min(workers, max(1, int(cap)))
        except ValueError:
            raise ValueError(
                f"SIMNITM_THREADS must be an integer, got {cap!r}") from None
    return workers


def cmd_sweep(args) -> int:
    family = family_from_string(args.family)
    cfg = _integrator_config(args)
    values = _read_pstar_values(args)
    probe_sign = (Sign.PLUS if args.sign == "auto"
                  else sign_from_string(args.sign))
    probe = SimilarityProblem(family=family,
                              P_star=values[0] if values else 0.0,
                              sign=probe_sign)
    eta_inf = _resolve_eta_inf(args.eta_inf, probe, cfg, fallback=10.0)
    if args.sign == "auto":
        signs = [_resolve_sign("auto", family, v, cfg, eta_inf)
                 for v in values]
    else:
        signs = sign_from_string(args.sign)
    rows = sweep(family, values, signs, cfg, eta_inf,
                 workers=_worker_count(args))
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / f"sweep.{args.format}"
    _write_table(
        path, args.format,
        ("p_star", "sign", "df_star_inf", "lambda", "P", "f0", "d2f0",
         "eta_inf_used", "plateau_ok", "status"),
        [(r.P_star, str(r.sign), r.df_star_inf, r.lam, r.P_physical, r.f0,
          r.d2f0, r.eta_inf_used, r.plateau_ok, r.status) for r in rows])
    failures = sum(1 for r in rows if not r.ok)
    print(f"wrote {path} ({len(rows)} rows, {failures} failed)")
    return 0


def cmd_critical(args) -> int:
    family = family_from_string(args.family)
    cfg = _integrator_config(args)
    sign = Sign.PLUS if args.sign == "auto" else sign_from_string(args.sign)
    probe = SimilarityProblem(
        family=family, P_star=0.5 * (args.bracket[0] + args.bracket[1]),
        sign=sign)
    eta_inf = _resolve_eta_inf(args.eta_inf, probe, cfg, fallback=10.0)
    crit = find_critical_parameter(
        family=family, sign=sign,
        P_star_bracket=(args.bracket[0], args.bracket[1]),
        cfg=cfg, eta_inf=eta_inf)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / f"branch.{args.format}"
    # sorted along the branch parameter so the fold plots as one curve
    _write_table(path, args.format, ("P", "d2f0"),
                 [(p, d) for _, p, d in sorted(crit.scanned)])
    print(f"P_c = {_fmt_value(crit.P_c)}")
    print(f"P_star_at_Pc = {_fmt_value(crit.P_star_at_Pc)}")
    print(f"bracket = [{_fmt_value(crit.bracket[0])}, "
          f"{_fmt_value(crit.bracket[1])}]  iterations = {crit.iterations}")
    print(f"wrote {path} ({len(crit.scanned)} branch points)")
    return 0


def cmd_target(args) -> int:
    family = family_from_string(args.family)
    cfg = _integrator_config(args)
    sign = None if args.sign == "auto" else sign_from_string(args.sign)
    probe_sign = (sign if family is Family.MOVING_WALL and sign is not None
                  else Sign.PLUS)
    probe_pstar = 0.5 * (args.bracket[0] + args.bracket[1]) \
        if args.bracket else 0.0
    probe = SimilarityProblem(family=family, P_star=probe_pstar,
                              sign=probe_sign)
    eta_inf = _resolve_eta_inf(args.eta_inf, probe, cfg, fallback=10.0)
    bracket = tuple(args.bracket) if args.bracket else None
    sol = solve_for_target_P(family, args.target_p, sign, bracket,
                             cfg, eta_inf)
    run = RunConfig(family=family, sign=_solution_sign(sol), eta_inf=eta_inf,
                    cfg=cfg, outdir=Path(args.outdir), fmt=args.format,
                    target_P=args.target_p, resample=args.resample)
    ode_max = _emit_solution(sol, run)
    print(f"family = {family.value}  target P = {_fmt_value(args.target_p)}")
    print(f"P* = {_fmt_value(sol.P_star)}  lambda = {_fmt_value(sol.lam)}  "
          f"P = {_fmt_value(sol.P_physical)}")
    print(f"f(0) = {_fmt_value(sol.f0)}  f'(0) = {_fmt_value(sol.df0)}  "
          f"f''(0) = {_fmt_value(sol.d2f0)}")
    print(f"ode_max_residual = {_fmt_value(ode_max)}")
    print(f"wrote {run.outdir / f'solution.{run.fmt}'} and "
          f"{run.outdir / f'summary.{run.fmt}'}")
    return 0


def cmd_invariance(args) -> int:
    family = family_from_string(args.family)
    system = build_exponent_system(family)
    report = solve_exponent_system(system)
    print(f"family = {family.value}")
    for row, label in zip(system.rows, system.labels):
        coeffs = ", ".join(str(c) for c in row)
        print(f"  constraint {label}: ({coeffs}) . (a1, a2, a3) = 0")
    print(f"nullspace dimension = {report.nullspace_dim}")
    for vec, exp in zip(report.basis, report.asymptotic_exponents):
        triple = ", ".join(str(c) for c in vec)
        print(f"  basis ({triple})  far-field exponent {exp}")
    if report.applicable:
        print("applicable: the group rescales the far-field condition")
        return 0
    if report.nullspace_dim == 0:
        print("not applicable: nullspace is trivial "
              "(only the identity scaling survives)")
    else:
        print("not applicable: every group direction leaves the "
              "far-field condition invariant")
    return 3


def _add_common(p: argparse.ArgumentParser, *, workers: bool = False,
                resample: bool = False) -> None:
    p.add_argument("--eta-inf", default="auto",
                   help="truncated boundary for the starred run; a number "
                        "or 'auto' (default) to grow it until f' flattens")
    p.add_argument("--rel-tol", type=float, default=1e-10)
    p.add_argument("--abs-tol", type=float, default=1e-10)
    p.add_argument("--initial-step", type=float, default=1e-3)
    p.add_argument("--max-steps", type=int, default=1_000_000)
    p.add_argument("--plateau-tol", type=float, default=1e-6)
    p.add_argument("--outdir", default=".",
                   help="directory for output tables (default: cwd)")
    p.add_argument("--format", choices=("csv", "tsv"), default="csv")
    if workers:
        p.add_argument("--workers", type=int, default=1,
                       help="thread count for independent rows; the "
                            "SIMNITM_THREADS environment variable caps it")
    if resample:
        p.add_argument("--resample", type=int, default=0, metavar="N",
                       help="write the solution table on N uniform grid "
                            "points instead of the accepted steps "
                            "(plot-friendly; 0 = off)")


_SOLVABLE = ("classic-blasius", "moving-wall", "gasification", "falkner-skan")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="simnitm",
        description="Boundary value problems of Blasius type solved by one "
                    "initial value integration plus a scaling-group rescale.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser(
        "solve", help="solve one starred parameter and rescale")
    p_solve.add_argument("--family", required=True, choices=_SOLVABLE)
    p_solve.add_argument("--pstar", type=float, required=True,
                         help="starred parameter P*")
    p_solve.add_argument("--sign", choices=("+1", "-1", "auto"),
                         default="auto",
                         help="normalized wall-shear branch (wall-driven)")
    _add_common(p_solve, resample=True)
    p_solve.set_defaults(func=cmd_solve)

    p_sweep = sub.add_parser("sweep", help="solve a list of P* values")
    p_sweep.add_argument("--family", required=True, choices=_SOLVABLE)
    src = p_sweep.add_mutually_exclusive_group(required=True)
    src.add_argument("--pstar-file",
                     help="file with one P* per line ('#' comments allowed)")
    src.add_argument("--pstar-values",
                     help="comma-separated P* values")
    p_sweep.add_argument("--sign", choices=("+1", "-1", "auto"),
                         default="auto")
    _add_common(p_sweep, workers=True)
    p_sweep.set_defaults(func=cmd_sweep)

    p_crit = sub.add_parser(
        "critical", help="locate the fold of P(P*) on a branch")
    p_crit.add_argument("--family", default="moving-wall", choices=_SOLVABLE)
    p_crit.add_argument("--bracket", type=float, nargs=2, required=True,
                        metavar=("LO", "HI"),
                        help="P* bracket containing the extremum")
    p_crit.add_argument("--sign", choices=("+1", "-1", "auto"),
                        default="+1")
    _add_common(p_crit)
    p_crit.set_defaults(func=cmd_critical)

    p_target = sub.add_parser(
        "target", help="root-find the P* giving a prescribed physical P")
    p_target.add_argument("--family", required=True, choices=_SOLVABLE)
    p_target.add_argument("--target-p", type=float, required=True)
    p_target.add_argument("--bracket", type=float, nargs=2,
                          metavar=("LO", "HI"),
                          help="P* bracket with a sign change of P - target")
    p_target.add_argument("--sign", choices=("+1", "-1", "auto"),
                          default="auto")
    _add_common(p_target, resample=True)
    p_target.set_defaults(func=cmd_target)

    p_inv = sub.add_parser(
        "invariance", help="exact test for a compatible scaling group")
    p_inv.add_argument("--family", required=True,
                       choices=("moving-wall", "gasification",
                                "falkner-skan"))
    p_inv.set_defaults(func=cmd_invariance)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
