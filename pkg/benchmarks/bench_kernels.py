"""Numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--points 200000] [--repeat 7]

Per-kernel timings use both implementations side by side in one process.
The end-to-end row builds the 3-D two-Gaussian rule (tol 1e-6) in a fresh
interpreter per backend, selected with ADAQUAD_DISABLE_NUMBA.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from adaquad import _kernels_numpy as npk
from adaquad._accel import numba_installed

E2E = """
import time
from adaquad import AdaptiveConfig, BACKEND, Parallelepiped, build_adaptive_rule, gaussian_bump
fns = [gaussian_bump(10, 100, [0, 0, 0]), gaussian_bump(100, 200, [0.81, 0.62, 0.73])]
cell = Parallelepiped.unit_cube(3)
t0 = time.perf_counter()
build_adaptive_rule(cell, fns, AdaptiveConfig(tol=1e-2))
first = time.perf_counter() - t0
best = float("inf")
for _ in range({repeat}):
    t0 = time.perf_counter()
    res = build_adaptive_rule(cell, fns, AdaptiveConfig(tol=1e-6))
    best = min(best, time.perf_counter() - t0)
print(BACKEND, res.rule.count, first, best)
"""


def best_of(fn, args, repeat):
    fn(*args)  # warm-up (and JIT compile for numba)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(npts, rng):
    x2 = rng.uniform(0, 1, (npts, 2))
    x3 = rng.uniform(0, 1, (npts, 3))
    ncells = max(1, npts // 125)
    ref = rng.uniform(0, 1, (125, 3))
    bases = rng.uniform(0, 1, (ncells, 3))
    edges = np.broadcast_to(np.eye(3) * 0.1, (ncells, 3, 3)).copy()
    values = rng.uniform(0, 1, (ncells, 125))
    weights = rng.uniform(0, 1, 125)
    center = np.array([0.81, 0.62, 0.73])
    kinked = np.array([[0.55, 0.0], [0.45, 0.5], [0.62, 1.0]])
    return [
        ("map_points", (ref, bases, edges)),
        ("weighted_sums", (values, weights)),
        ("gaussian", (x3, 100.0, 200.0, center)),
        ("radial_distance", (x3, center)),
        ("heaviside", (rng.uniform(-0.2, 0.2, npts), 0.085)),
        ("line_distance", (x2, np.array([0.55, 0.0]), np.array([0.98058068, 0.19611614]))),
        ("polyline_distance", (x2, kinked)),
        ("parabola_distance", (x2, 0.5, 0.5, 0.3)),
    ]


def end_to_end(flag, repeat):
    env = dict(os.environ, ADAQUAD_DISABLE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", E2E.format(repeat=repeat)], env=env,
                         capture_output=True, text=True, check=True).stdout.split()
    return out[0], int(out[1]), float(out[2]), float(out[3])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=7)
    args = ap.parse_args()

    print(f"{'kernel':<20}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    if numba_installed:
        from adaquad import _kernels_numba as nbk
    for name, call_args in cases(args.points, np.random.default_rng(0)):
        t_np = best_of(getattr(npk, name), call_args, args.repeat)
        if numba_installed:
            t_nb = best_of(getattr(nbk, name), call_args, args.repeat)
            print(f"{name:<20}{t_np * 1e3:>12.2f}{t_nb * 1e3:>12.2f}{t_np / t_nb:>10.1f}")
        else:
            print(f"{name:<20}{t_np * 1e3:>12.2f}{'n/a':>12}{'':>10}")

    print()
    print(f"{'end-to-end rule':<20}{'points':>8}{'first s':>10}{'best s':>10}")
    for flag in ("1", "0") if numba_installed else ("1",):
        backend, count, first, best = end_to_end(flag, args.repeat)
        print(f"{backend:<20}{count:>8}{first:>10.3f}{best:>10.4f}")


if __name__ == "__main__":
    main()
