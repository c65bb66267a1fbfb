"""Benchmark the compiled kernels against the pure-Python fallback.

Times the batch infidelity kernel (the sweep hot loop) and the scalar
sequence propagator on identical seeded workloads, then reports the speedup.

    python benchmarks/benchmark_backends.py [--sizes 1000,10000,100000] [--repeat 5]
"""

import argparse
import math
import time

import numpy as np

from pulseforge import backend_name
from pulseforge.backend import load_backend


def _best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def run(sizes, repeat):
    kernels_py = load_backend("python")
    try:
        kernels_cy = load_backend("compiled")
    except ImportError:
        kernels_cy = None
        print("compiled kernels not built; timing the python backend only\n")

    rng = np.random.default_rng(20260810)
    target = kernels_py.propagator(1.0, 0.3, 0.0)

    print(f"active package backend: {backend_name()}")
    print(f"{'n':>8}  {'kernel':<22}  {'python':>10}  {'cython':>10}  {'speedup':>8}")
    for n in sizes:
        thetas = rng.uniform(0.05, 4.0 * math.pi, size=(n, 3))
        phis = rng.uniform(0.0, 2.0 * math.pi, size=(n, 3))

        t_py = _best_time(lambda: kernels_py.batch_gate_infidelity(thetas, phis, 0.1, target), repeat)
        if kernels_cy is not None:
            t_cy = _best_time(lambda: kernels_cy.batch_gate_infidelity(thetas, phis, 0.1, target), repeat)
            print(f"{n:>8}  {'batch_gate_infidelity':<22}  {t_py * 1e3:>8.2f}ms  {t_cy * 1e3:>8.2f}ms  {t_py / t_cy:>7.1f}x")
        else:
            print(f"{n:>8}  {'batch_gate_infidelity':<22}  {t_py * 1e3:>8.2f}ms  {'-':>10}  {'-':>8}")

    # scalar path: one propagator product per call, python-call-bound
    thetas = rng.uniform(0.05, 4.0 * math.pi, size=(2000, 3))
    phis = rng.uniform(0.0, 2.0 * math.pi, size=(2000, 3))

    def scalar_loop(kernels):
        def body():
            for row_t, row_p in zip(thetas, phis):
                kernels.sequence_propagator(row_t, row_p, 0.1)
        return body

    t_py = _best_time(scalar_loop(kernels_py), repeat)
    if kernels_cy is not None:
        t_cy = _best_time(scalar_loop(kernels_cy), repeat)
        print(f"{2000:>8}  {'sequence_propagator':<22}  {t_py * 1e3:>8.2f}ms  {t_cy * 1e3:>8.2f}ms  {t_py / t_cy:>7.1f}x")
    else:
        print(f"{2000:>8}  {'sequence_propagator':<22}  {t_py * 1e3:>8.2f}ms  {'-':>10}  {'-':>8}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="1000,10000,100000",
                        help="comma-separated batch sizes")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    run(sizes, args.repeat)


if __name__ == "__main__":
    main()
