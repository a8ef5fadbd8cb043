"""Command-line interface: ``finalbonus {optimal,curve,sweep,belief,simulate}``.

Exit status is 0 on success, 2 for usage or validation errors and 3 for
numerical failures such as a root bracket that does not straddle zero.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .asymptotic import asymptotic_optimal
from .beta import PriorParams
from .errors import BracketError, DomainError, InvalidConfigError
from .oracle import brute_force_optimal, surprise_curve
from .simulator import belief_trace, simulate
from .solution import BonusSolution, MatchConfig
from .solvers import CertainParams, certain_optimal, linear_scan_optimal, symmetric_optimal

ORACLE_MAX_N = 2000
EXIT_USAGE = 2
EXIT_NUMERIC = 3
PARALLEL_MIN_CELLS = 64


class UsageError(Exception):
    pass


def fmt(v) -> str:
    """Shortest round-trip text for CSV cells."""
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _write(args, text: str) -> None:
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _prior_from_args(args) -> tuple[PriorParams, float | None]:
    """Prior from ``--alpha/--beta`` or from ``--p`` (near-certain with ``--lam``)."""
    p = getattr(args, "p", None)
    has_ab = args.alpha is not None or args.beta is not None
    if p is not None and has_ab:
        raise UsageError("--p cannot be combined with --alpha/--beta")
    if p is not None:
        return PriorParams.certain(p, args.lam), p
    if args.alpha is None or args.beta is None:
        raise UsageError("give both --alpha and --beta, or --p")
    return PriorParams(args.alpha, args.beta), None


def _oracle_guard(n: int) -> None:
    if n > ORACLE_MAX_N:
        raise UsageError(f"n={n} exceeds the oracle cap of {ORACLE_MAX_N}; use --method linear")


def solve(args) -> BonusSolution:
    prior, p = _prior_from_args(args)
    n, method = args.n, args.method
    if method == "auto":
        if p is not None and n >= 2:
            method = "certain"
        elif prior.symmetric and n >= 2:
            method = "symmetric"
        else:
            method = "linear"
    if method == "certain":
        if p is None:
            raise UsageError("--method certain needs --p")
        swapped = p < 0.5
        sol = certain_optimal(CertainParams(1.0 - p if swapped else p, n))
        if swapped:
            sol = BonusSolution(sol.x_star, sol.method, sol.x_tilde, sol.objective, True)
        return sol
    if method == "symmetric":
        if not prior.symmetric:
            raise UsageError("--method symmetric needs --alpha equal to --beta")
        return symmetric_optimal(prior.alpha, n)
    if method == "oracle":
        _oracle_guard(n)
        return brute_force_optimal(prior, n)
    return linear_scan_optimal(prior, n)


def cmd_optimal(args) -> None:
    sol = solve(args)
    d = sol.to_dict()
    if args.format == "csv":
        _write(args, _csv_text(list(d), [list(d.values())]))
    else:
        _write(args, _json_text(d))


def cmd_curve(args) -> None:
    prior, _ = _prior_from_args(args)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.n > ORACLE_MAX_N:
        raise UsageError(
            f"n={args.n} exceeds the oracle cap of {ORACLE_MAX_N}; use `optimal --method linear`"
        )
    curve = surprise_curve(prior, args.n)
    best = curve.argmax
    rounds = [f"round_{r}" for r in range(1, args.n + 1)]
    if args.format == "json":
        rows = [
            {
                "x": int(x),
                "expected_surprise": float(t),
                "per_round": [float(v) for v in pr],
                "optimal": int(x) == best,
            }
            for x, t, pr in zip(curve.xs, curve.totals, curve.per_round)
        ]
        _write(args, _json_text({"n": args.n, "x_star": best, "rows": rows}))
        return
    rows = [
        [int(x), float(t), *[float(v) for v in pr], int(x) == best]
        for x, t, pr in zip(curve.xs, curve.totals, curve.per_round)
    ]
    _write(args, _csv_text(["x", "expected_surprise", *rounds, "optimal"], rows))


def _axis_points(lo: float, hi: float, res: int) -> list[float]:
    step = (hi - lo) / res
    return [lo + (k + 0.5) * step for k in range(res)]


def _cell_params(axes: str, a1: float, a2: float) -> tuple[float, float]:
    if axes == "alpha-beta":
        return a1, a2
    # skewness s = (a - b)/(a + b), uncertainty u = 1/(a + b)
    return (1.0 + a1) / (2.0 * a2), (1.0 - a1) / (2.0 * a2)


def _sweep_cell(job):
    axes, mode, n, i, k, a1, a2 = job
    alpha, beta = _cell_params(axes, a1, a2)
    cell = {"row": i, "col": k, "axis1": a1, "axis2": a2, "alpha": alpha, "beta": beta,
            "status": "ok", "value": None}
    if not (beta >= 1.0 and alpha >= beta):
        cell["status"] = "out_of_domain"
        return cell
    prior = PriorParams(alpha, beta)
    try:
        if mode == "finite":
            cell["value"] = linear_scan_optimal(prior, n).x_star
        else:
            cell["value"] = asymptotic_optimal(prior, n).mu_star
    except (BracketError, ArithmeticError):
        cell["status"] = "numeric_failure"
    return cell


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"range must look like LO,HI, got {text!r}") from None
    if not lo < hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


_DEFAULT_RANGES = {
    "alpha-beta": ("1,11", "1,11"),
    "skew-uncertainty": ("0,1", "0,1"),
}


def sweep_cells(axes: str, mode: str, n: int, resolution: int, range1, range2, jobs: int = 1):
    if resolution < 1:
        raise UsageError("--resolution must be >= 1")
    if jobs < 0:
        raise UsageError("--jobs must be >= 0")
    ax1 = _axis_points(*range1, resolution)
    ax2 = _axis_points(*range2, resolution)
    work = [(axes, mode, n, i, k, a1, a2) for i, a1 in enumerate(ax1) for k, a2 in enumerate(ax2)]
    if jobs == 0:
        jobs = min(os.cpu_count() or 1, 8) if len(work) >= PARALLEL_MIN_CELLS else 1
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_cell, work, chunksize=max(1, len(work) // (4 * jobs))))
    return [_sweep_cell(w) for w in work]


def cmd_sweep(args) -> None:
    d1, d2 = _DEFAULT_RANGES[args.axes]
    r1 = _parse_range(args.range1 or d1)
    r2 = _parse_range(args.range2 or d2)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    cells = sweep_cells(args.axes, args.mode, args.n, args.resolution, r1, r2, args.jobs)
    names = ("skewness", "uncertainty") if args.axes == "skew-uncertainty" else ("alpha", "beta")
    value_name = "x_star" if args.mode == "finite" else "mu_star"
    if args.format == "json":
        out = {
            "n": args.n,
            "mode": args.mode,
            "axes": args.axes,
            "axis1": {"name": names[0], "range": list(r1)},
            "axis2": {"name": names[1], "range": list(r2)},
            "resolution": args.resolution,
            "cells": [{**{k: v for k, v in c.items() if k != "value"}, value_name: c["value"]}
                      for c in cells],
        }
        _write(args, _json_text(out))
        return
    if args.axes == "alpha-beta":
        header = ["row", "col", "alpha", "beta", "status", value_name]
        rows = [[c["row"], c["col"], c["alpha"], c["beta"], c["status"], c["value"]] for c in cells]
    else:
        header = ["row", "col", names[0], names[1], "alpha", "beta", "status", value_name]
        rows = [[c["row"], c["col"], c["axis1"], c["axis2"], c["alpha"], c["beta"], c["status"],
                 c["value"]] for c in cells]
    _write(args, _csv_text(header, rows))


def cmd_belief(args) -> None:
    prior, _ = _prior_from_args(args)
    cfg = MatchConfig(args.n, args.x)
    _oracle_guard(cfg.n)
    rows = belief_trace(prior, cfg, args.seed, args.trial)
    header = ["round", "winner", "belief", "surprise_increment"]
    if args.format == "json":
        _write(args, _json_text([dict(zip(header, r)) for r in rows]))
    else:
        _write(args, _csv_text(header, rows))


def cmd_simulate(args) -> None:
    prior, _ = _prior_from_args(args)
    cfg = MatchConfig(args.n, args.x)
    _oracle_guard(cfg.n)
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    rep = simulate(prior, cfg, args.trials, args.seed)
    d = rep.to_dict()
    if args.format == "csv":
        rounds = [f"round_{r}" for r in range(1, cfg.n + 1)]
        header = ["trials", "mean_surprise", "std_error", "seed", *rounds]
        _write(args, _csv_text(header, [[d["trials"], d["mean_surprise"], d["std_error"], d["seed"],
                                         *d["mean_per_round"]]]))
    else:
        _write(args, _json_text(d))


def _add_prior(p: argparse.ArgumentParser, with_p: bool = True) -> None:
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    if with_p:
        p.add_argument("--p", type=float, help="known per-round win probability (certain case)")
    p.add_argument("--lam", type=float, default=1e6,
                   help="concentration used when --p stands in for a Beta prior (default 1e6)")


def build_parser() -> argparse.ArgumentParser:
    # accepted before or after the subcommand; SUPPRESS keeps the subparser
    # from overwriting a value given at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default=argparse.SUPPRESS)
    common.add_argument("--output", default=argparse.SUPPRESS, help="file path, or - for stdout")

    ap = argparse.ArgumentParser(prog="finalbonus", description="Surprise-maximizing final-round bonus.")
    ap.add_argument("--format", choices=["csv", "json"])
    ap.add_argument("--output", default="-", help="file path, or - for stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimal", parents=[common], help="optimal bonus for one prior")
    _add_prior(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["auto", "oracle", "linear", "symmetric", "certain"],
                   default="auto")
    p.set_defaults(func=cmd_optimal, default_format="json")

    p = sub.add_parser("curve", parents=[common], help="exact surprise for every bonus")
    _add_prior(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_curve, default_format="csv")

    p = sub.add_parser("sweep", parents=[common], help="optimal bonus over a prior grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--axes", choices=["alpha-beta", "skew-uncertainty"], default="skew-uncertainty")
    p.add_argument("--resolution", type=int, default=20)
    p.add_argument("--mode", choices=["finite", "asymptotic"], default="finite")
    p.add_argument("--range1", help="LO,HI for the first axis")
    p.add_argument("--range2", help="LO,HI for the second axis")
    p.add_argument("--jobs", type=int, default=0, help="worker processes (0 = automatic)")
    p.set_defaults(func=cmd_sweep, default_format="csv")

    p = sub.add_parser("belief", parents=[common], help="belief curve of one simulated match")
    _add_prior(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trial", type=int, default=0)
    p.set_defaults(func=cmd_belief, default_format="csv")

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo surprise estimate")
    _add_prior(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate, default_format="json")
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        args.func(args)
    except (UsageError, DomainError, InvalidConfigError) as exc:
        print(f"finalbonus {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BracketError, ArithmeticError) as exc:
        print(f"finalbonus {args.command}: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


if __name__ == "__main__":
    sys.exit(main())
