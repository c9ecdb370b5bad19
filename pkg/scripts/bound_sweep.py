#!/usr/bin/env python3
"""Sweep random pencils and tabulate total Betti numbers against the 2n bound.

Example:
    python scripts/bound_sweep.py --per-n 50 --n-min 2 --n-max 8 --seed 0
"""

import argparse
import time

import numpy as np

from quadrics.applications import extremal_family
from quadrics.betti import analyze, check_bounds
from quadrics.circle import PlanarCone
from quadrics.fixtures import random_pencil


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-n", type=int, default=50)
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cone = PlanarCone.zero()
    print(f"{'n':>3} {'count':>6} {'max b(X)':>9} {'bound':>6} "
          f"{'extremal':>9} {'empties':>8} {'sec':>6}")
    for n in range(args.n_min, args.n_max + 1):
        rng = np.random.default_rng(args.seed + n)
        t0 = time.monotonic()
        worst = 0
        empties = 0
        for _ in range(args.per_n):
            res = analyze(random_pencil(rng, n + 1), cone)
            worst = max(worst, res.report.total)
            empties += res.report.empty
            violations = check_bounds(res.report)
            if violations:
                raise SystemExit(f"bound violated at n={n}: {violations}")
        sharp = analyze(extremal_family(n), cone).report.total
        dt = time.monotonic() - t0
        print(f"{n:>3} {args.per_n:>6} {worst:>9} {2 * n:>6} "
              f"{sharp:>9} {empties:>8} {dt:>6.1f}")


if __name__ == "__main__":
    main()
