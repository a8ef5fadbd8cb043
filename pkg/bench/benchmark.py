"""Compare the compiled and pure-Python kernels on full surprise curves.

    python3 bench/benchmark.py [--sizes 100 300 1000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from finalbonus._backend import get_kernels
from finalbonus.solution import admissible_bonuses
from finalbonus.solvers import linear_scan_optimal
from finalbonus.beta import PriorParams


def curve_time(kern, alpha, beta, n):
    t0 = time.perf_counter()
    P = kern.state_prob_table(alpha, beta, n)
    totals = [kern.round_surprise(alpha, beta, n, x, P).sum() for x in admissible_bonuses(n)]
    return time.perf_counter() - t0, np.array(totals)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 300, 1000])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--alpha", type=float, default=3.0)
    ap.add_argument("--beta", type=float, default=2.0)
    args = ap.parse_args()

    py = get_kernels("python")
    try:
        cy = get_kernels("cython")
    except ImportError:
        cy = None
        print("compiled kernels unavailable; timing the fallback only")

    print(f"{'n':>6} {'python s':>10} {'cython s':>10} {'speedup':>8} {'max diff':>10} {'linear s':>10}")
    for n in args.sizes:
        tp, vp = min((curve_time(py, args.alpha, args.beta, n) for _ in range(args.repeat)), key=lambda r: r[0])
        if cy is not None:
            tc, vc = min((curve_time(cy, args.alpha, args.beta, n) for _ in range(args.repeat)),
                         key=lambda r: r[0])
            diff = float(np.max(np.abs(vp - vc)))
            cols = f"{tc:10.4f} {tp / tc:8.1f} {diff:10.1e}"
        else:
            cols = f"{'-':>10} {'-':>8} {'-':>10}"
        t0 = time.perf_counter()
        linear_scan_optimal(PriorParams(args.alpha, args.beta), n)
        tl = time.perf_counter() - t0
        print(f"{n:6d} {tp:10.4f} {cols} {tl:10.5f}")


if __name__ == "__main__":
    main()
