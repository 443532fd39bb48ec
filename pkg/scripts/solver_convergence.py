#!/usr/bin/env python3
"""Fixed-point solver convergence study across latitude angles.

The solver's contraction ratio approaches 1 as the latitude angle approaches
pi/6, so iteration counts stretch; this script reports the distribution of
residuals and timings that motivated the extrapolation safeguard.
"""

import argparse
import math
import time

import numpy as np

from spherefib.fibration import hopf_fibration, latitude_fibration, solve_fiber_through_point
from spherefib.quaternions import geodesic_distance, sample_uniform


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=300)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    print(f"{'alpha':>10s} {'median ms':>10s} {'p99 ms':>10s} {'worst resid':>12s}")
    for alpha in (0.0, math.pi / 24, math.pi / 12, math.pi / 8, math.pi / 6):
        fib = latitude_fibration(alpha) if alpha > 0 else hopf_fibration()
        pts = sample_uniform(args.seed, 2 * args.points)
        times, worst = [], 0.0
        for i in range(args.points):
            x, y = pts[2 * i], pts[2 * i + 1]
            t0 = time.perf_counter()
            p = solve_fiber_through_point(fib, (x, y))
            times.append(1e3 * (time.perf_counter() - t0))
            worst = max(worst, geodesic_distance(y, fib.fiber(p).image_of(x)))
        arr = np.array(times)
        print(f"{alpha:10.5f} {np.median(arr):10.3f} {np.percentile(arr, 99):10.3f} {worst:12.2e}")


if __name__ == "__main__":
    main()
