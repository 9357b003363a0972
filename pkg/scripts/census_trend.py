#!/usr/bin/env python3
"""Sweep the census ratio N / (lambda^l * P^k) over a geometric y grid.

The interesting question at desk scale is how fast the ratio settles near 1
and whether the reference error bound ever binds.  Prints one row per y.

    python3 scripts/census_trend.py --k 2 --ell 1 --y-start 100 --steps 8
"""

import argparse
import sys
import time

from sunitlab.tuple_census import CensusParams, count_exact


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--ell", type=int, default=1)
    ap.add_argument("--y-start", type=float, default=100.0)
    ap.add_argument("--factor", type=float, default=2.0, help="grid ratio between consecutive y")
    ap.add_argument("--steps", type=int, default=8)
    args = ap.parse_args()

    print(f"# census trend, k={args.k}, ell={args.ell}")
    print(f"{'y':>12} {'N':>12} {'main':>14} {'ratio':>10} {'|err|<=bound':>13} {'secs':>7}")
    y = args.y_start
    for _ in range(args.steps):
        t0 = time.perf_counter()
        res = count_exact(CensusParams(y, args.k, args.ell))
        dt = time.perf_counter() - t0
        if res.empty_interval:
            print(f"{y:>12.0f} {'-':>12}  (empty modulus interval)")
        else:
            err = abs(res.count - float(res.main_term))
            bounded = err <= res.error_bound.value if res.error_bound.applicable else None
            ratio = f"{res.ratio:.6f}" if res.ratio is not None else "-"
            print(
                f"{y:>12.0f} {res.count:>12} {float(res.main_term):>14.3f} "
                f"{ratio:>10} {str(bounded):>13} {dt:>7.2f}"
            )
        y *= args.factor
    return 0


if __name__ == "__main__":
    sys.exit(main())
