"""Command-line front end.

Subcommands::

    eval      evaluate wright | mainardi | erf | erfc | gamma at a point
    solve     solve a front-coefficient equation (eta | xi | classical | eta0)
    profile   tabulate (x, temperature, flux) across the melted region
    residual  check a governing equation: pde | stefan-caputo | stefan-rl
    sweep     run a verification sweep: limits | ordering | convergence | figure

Exit codes: 0 success / all checks pass, 2 invalid input, 3 series
non-convergence, 4 solver bracket failure, 5 a sweep flag or residual
verdict failed.

Defaults may be placed in a flat ``key=value`` config file passed with
``--config`` or named by the ``FRACSTEFAN_CONFIG`` environment variable;
command-line flags win over the file.  Output is deterministic: the same
command with the same config produces byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace

import numpy as np

from . import verify
from .equations import RootKind, RootProblem, solve
from .errors import (
    ExtrapolationUnstableError,
    FracStefanError,
    InvalidParameterError,
    MaxIterationsError,
    NeedsMoreGridError,
    NoSignChangeError,
    NonConvergentError,
    OutOfDomainError,
    PoleError,
)
from .specfun import Alpha, SeriesAccuracy, WrightEval, erf, erfc, gamma
from .stefan import (
    caputo_solution,
    classical_solution,
    pde_residual_caputo,
    riemann_liouville_solution,
    stefan_condition_residual_caputo,
    stefan_condition_residual_rl,
)

CONFIG_ENV_VAR = "FRACSTEFAN_CONFIG"

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NONCONVERGENT = 3
EXIT_BRACKET = 4
EXIT_CHECK_FAILED = 5

# residual verdict tolerances (CLI-level defaults; the acceptance suite pins
# the same numbers)
PDE_TOL = 1e-2
PDE_TOL_CLASSICAL = 1e-6
STEFAN_CAPUTO_TOL = 1e-10
STEFAN_RL_TOL = 5e-2


@dataclass(frozen=True)
class RunConfig:
    """Reproducible run settings; every field has a config-file key."""

    series_tol: float = 1e-12
    series_max_terms: int = 500
    solver_lo: float = 1e-4
    solver_hi: float = 5.0
    solver_tol: float = 1e-12
    grid_n: int = 4096
    alphas: tuple[float, ...] = (0.5, 0.75, 0.9, 0.99, 0.999)
    x_max: float = 3.0
    x_points: int = 301
    format: str = "csv"
    out: str = ""
    limit_final_gap: float = 1e-2
    convergence_final_gap: float = 5e-3
    figure_gauss_gap: float = 5e-2

    def accuracy(self) -> SeriesAccuracy:
        return SeriesAccuracy(tol=self.series_tol, max_terms=self.series_max_terms)

    def thresholds(self) -> dict:
        return {
            "limit_final_gap": self.limit_final_gap,
            "convergence_final_gap": self.convergence_final_gap,
            "figure_gauss_gap": self.figure_gauss_gap,
        }


def _parse_config_value(key: str, raw: str):
    if key not in {f.name for f in fields(RunConfig)}:
        raise InvalidParameterError(f"unknown config key {key!r}")
    if key == "alphas":
        vals = tuple(float(v) for v in raw.split(",") if v.strip())
        if not vals:
            raise InvalidParameterError("alphas must list at least one order")
        return vals
    if key in ("series_max_terms", "grid_n", "x_points"):
        return int(raw)
    if key in ("format", "out"):
        return raw
    return float(raw)


def load_config(path: str | None) -> RunConfig:
    """Read a flat key=value file (``#`` comments allowed) into a RunConfig."""
    cfg = RunConfig()
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR) or None
    if path is None:
        return cfg
    updates = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InvalidParameterError(
                    f"{path}:{lineno}: expected key=value, got {line!r}"
                )
            key, raw = (part.strip() for part in line.split("=", 1))
            updates[key] = _parse_config_value(key, raw)
    cfg = replace(cfg, **updates)
    if cfg.format not in ("csv", "json"):
        raise InvalidParameterError(f"format must be csv or json, got {cfg.format!r}")
    return cfg


def _emit(text: str, out_path: str) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- eval ---------------------------------------------------------------------

_EVAL_ARITY = {"wright": 3, "mainardi": 2, "erf": 1, "erfc": 1, "gamma": 1}


def cmd_eval(args, cfg: RunConfig) -> int:
    name = args.function
    vals = args.values
    if len(vals) != _EVAL_ARITY[name]:
        raise InvalidParameterError(
            f"{name} takes {_EVAL_ARITY[name]} argument(s), got {len(vals)}"
        )
    acc = cfg.accuracy() if args.tol is None else SeriesAccuracy(
        tol=args.tol, max_terms=cfg.series_max_terms
    )
    if name == "wright":
        res = WrightEval(vals[0], vals[1], vals[2], acc).evaluate()
    elif name == "mainardi":
        rho, x = vals
        if not (0.0 < rho < 1.0):
            raise InvalidParameterError(f"mainardi needs 0 < rho < 1, got {rho}")
        res = WrightEval(-x, -rho, 1.0 - rho, acc).evaluate()
    else:
        fn = {"erf": erf, "erfc": erfc, "gamma": gamma}[name]
        print("%.15g" % float(fn(vals[0])))
        return EXIT_OK
    print("%.15g" % res.value)
    print("truncation_bound %.3e terms %d" % (res.tail_bound, res.terms))
    return EXIT_OK


# -- solve --------------------------------------------------------------------

_SOLVE_KINDS = {
    "eta": RootKind.ETA_FRACTIONAL,
    "xi": RootKind.XI_FRACTIONAL,
    "classical": RootKind.ETA_CLASSICAL,
    "eta0": RootKind.ETA_ZERO_DERIV,
}


def cmd_solve(args, cfg: RunConfig) -> int:
    kind = _SOLVE_KINDS[args.kind]
    alpha = None
    if kind.is_fractional:
        if args.alpha is None:
            raise InvalidParameterError(f"solve {args.kind} requires --alpha")
        alpha = Alpha(args.alpha)
    problem = RootProblem(
        kind,
        alpha,
        bracket=(cfg.solver_lo, cfg.solver_hi),
        tol=cfg.solver_tol if args.tol is None else args.tol,
    )
    fc = solve(problem)
    print("value %.15g" % fc.value)
    print("residual %.3e" % fc.residual)
    print("iterations %d" % fc.iterations)
    print("bracket %.17g %.17g" % fc.bracket)
    return EXIT_OK


# -- profile ------------------------------------------------------------------

def _solution_for(kind: str, alpha: float | None, tol: float):
    if kind == "classical":
        if alpha is not None and alpha != 1.0:
            raise InvalidParameterError("classical profile has alpha = 1")
        return classical_solution(tol=tol)
    if alpha is None:
        raise InvalidParameterError(f"kind {kind!r} requires --alpha")
    if kind == "caputo":
        return caputo_solution(alpha, tol=tol)
    return riemann_liouville_solution(alpha, tol=tol)


def cmd_profile(args, cfg: RunConfig) -> int:
    sol = _solution_for(args.kind, args.alpha, cfg.solver_tol)
    t = args.t
    if args.points < 2:
        raise InvalidParameterError("need at least 2 profile points")
    xs = np.linspace(0.0, sol.front(t), args.points)
    temp = sol.temperature(xs, t)
    flx = sol.flux(xs, t)
    columns = ["x", "temperature", "flux"]
    rows = list(zip(xs, temp, flx))
    out_format = args.format or cfg.format
    if out_format == "csv":
        lines = [",".join(columns)]
        lines += [",".join("%.17g" % v for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(
            {
                "schema": "fracstefan.profile/1",
                "config": {
                    "kind": args.kind,
                    "alpha": sol.alpha.value,
                    "t": t,
                    "points": args.points,
                },
                "columns": columns,
                "rows": [["%.17g" % v for v in row] for row in rows],
            },
            indent=2,
        ) + "\n"
    _emit(text, args.out or cfg.out)
    return EXIT_OK


# -- residual -----------------------------------------------------------------

def cmd_residual(args, cfg: RunConfig) -> int:
    alpha = args.alpha
    if alpha is None:
        raise InvalidParameterError("residual checks require --alpha")
    n = args.n or cfg.grid_n
    which = args.which

    if which == "pde":
        if args.x is None:
            raise InvalidParameterError("residual pde requires --x")
        if alpha == 1.0:
            sol = classical_solution(tol=cfg.solver_tol)
            tol = PDE_TOL_CLASSICAL
        else:
            sol = caputo_solution(alpha, tol=cfg.solver_tol)
            tol = PDE_TOL
        value = pde_residual_caputo(sol, args.x, args.t, n)
        passed = value <= tol
        label = "PASS" if passed else "FAIL"
    elif which == "stefan-caputo":
        sol = (
            classical_solution(tol=cfg.solver_tol)
            if alpha == 1.0
            else caputo_solution(alpha, tol=cfg.solver_tol)
        )
        tol = STEFAN_CAPUTO_TOL
        value = stefan_condition_residual_caputo(sol, args.t)
        passed = value <= tol
        label = "PASS" if passed else "FAIL"
    else:  # stefan-rl
        tol = STEFAN_RL_TOL
        if args.negative_control:
            # the Caputo solution must violate the RL interface condition
            sol = caputo_solution(alpha, tol=cfg.solver_tol)
            value = stefan_condition_residual_rl(sol, args.t, n)
            passed = value > tol
            label = "PASS(control)" if passed else "FAIL(control)"
        else:
            sol = riemann_liouville_solution(alpha, tol=cfg.solver_tol)
            value = stefan_condition_residual_rl(sol, args.t, n)
            passed = value <= tol
            label = "PASS" if passed else "FAIL"

    print("residual %.6e" % value)
    print("tolerance %.6e" % tol)
    print("verdict %s" % label)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


# -- sweep --------------------------------------------------------------------

def cmd_sweep(args, cfg: RunConfig) -> int:
    thr = cfg.thresholds()
    x_grid = np.linspace(0.0, cfg.x_max, cfg.x_points)
    if args.name == "limits":
        ladder = cfg.alphas if cfg.alphas[-1] == 1.0 else cfg.alphas + (1.0,)
        report = verify.limit_sweep(ladder, x_grid, thresholds=thr)
    elif args.name == "ordering":
        report = verify.ordering_sweep()
    elif args.name == "convergence":
        report = verify.convergence_sweep(
            cfg.alphas, thresholds=thr, solver_tol=cfg.solver_tol
        )
    else:  # figure
        report = verify.figure_data(
            args.alpha if args.alpha is not None else 0.75,
            x_grid,
            thresholds=thr,
        )

    out_format = args.format or cfg.format
    text = report.to_csv() if out_format == "csv" else report.to_json()
    _emit(text, args.out or cfg.out)
    for name, ok in report.flags.items():
        print("flag %s %s" % (name, "pass" if ok else "FAIL"), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracstefan",
        description="Fractional Stefan problems: Wright-function numerics, "
        "front coefficients, self-similar solutions, verification sweeps.",
    )
    parser.add_argument("--config", help="flat key=value config file "
                        f"(default from ${CONFIG_ENV_VAR})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a special function")
    p.add_argument("function", choices=sorted(_EVAL_ARITY))
    p.add_argument("values", nargs="+", type=float,
                   help="wright: z rho beta | mainardi: rho x | erf/erfc/gamma: x")
    p.add_argument("--tol", type=float, help="series truncation tolerance")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("solve", help="solve a front-coefficient equation")
    p.add_argument("kind", choices=sorted(_SOLVE_KINDS))
    p.add_argument("--alpha", type=float, help="fractional order in (0, 1)")
    p.add_argument("--tol", type=float, help="residual and bracket tolerance")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("profile", help="tabulate temperature and flux")
    p.add_argument("kind", choices=["caputo", "rl", "classical"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("residual", help="check a governing equation")
    p.add_argument("which", choices=["pde", "stefan-caputo", "stefan-rl"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--n", type=int, help="quadrature grid intervals")
    p.add_argument("--negative-control", action="store_true",
                   help="stefan-rl only: expect the Caputo solution to fail")
    p.set_defaults(func=cmd_residual)

    p = sub.add_parser("sweep", help="run a verification sweep")
    p.add_argument("name", choices=["limits", "ordering", "convergence", "figure"])
    p.add_argument("--alpha", type=float, help="figure sweep order")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except NonConvergentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENT
    except (NoSignChangeError, MaxIterationsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BRACKET
    except ExtrapolationUnstableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (
        InvalidParameterError,
        PoleError,
        OutOfDomainError,
        NeedsMoreGridError,
        FracStefanError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
