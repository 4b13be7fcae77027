"""Timing comparison of the compiled and pure kernel backends.

Usage:  python benchmarks/bench_kernels.py [--repeat 5]

Times the two hot kernels (Lambert W and the marginal-likelihood
quadrature) on identical workloads for each available backend and
prints per-call times with the speedup of the compiled twin.
"""

import argparse
import math
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from bayesflip._kernels import load_backend  # noqa: E402
from bayesflip._kernels import pure  # noqa: E402

try:
    core = load_backend("compiled")
except ImportError:
    core = None


def lambert_workload(backend):
    xs = [math.exp(-1.0 + 0.002 * i) - 0.3 for i in range(2000)]
    f = backend.lambert_w0

    def run():
        for x in xs:
            f(x, 1e-12, 64)

    return len(xs), run


def marginal_workload(backend, kind):
    grid = [(z, n, s)
            for z in (0.5, 1.96, 2.0, 3.0)
            for n in (10.0, 50.0, 5000.0)
            for s in (0.05, 0.6, 1.0)]
    f = backend.marginal_loglik

    def run():
        for z, n, s in grid:
            f(z, n, kind, s, 1e-12, 48)

    return len(grid), run


def best_time(run, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        run()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    workloads = [
        ("lambert_w0", lambert_workload, ()),
        ("marginal (normal prior)", marginal_workload, (pure.PRIOR_NORMAL,)),
        ("marginal (cauchy prior)", marginal_workload, (pure.PRIOR_CAUCHY,)),
    ]

    print(f"{'kernel':28s} {'pure us/call':>14s} {'compiled us/call':>18s} {'speedup':>9s}")
    for label, make, extra in workloads:
        n_calls, run_pure = make(pure, *extra)
        t_pure = best_time(run_pure, args.repeat) / n_calls * 1e6
        if core is None:
            print(f"{label:28s} {t_pure:14.2f} {'(not built)':>18s} {'-':>9s}")
            continue
        _, run_core = make(core, *extra)
        t_core = best_time(run_core, args.repeat) / n_calls * 1e6
        print(f"{label:28s} {t_pure:14.2f} {t_core:18.2f} {t_pure / t_core:8.1f}x")

    if core is None:
        print("\ncompiled backend not built; run `python setup.py build_ext --inplace`")


if __name__ == "__main__":
    main()
