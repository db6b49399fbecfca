"""Compare the compiled and pure-Python kernels on the hot paths.

Run with ``python3 benchmarks/bench_kernels.py [n]``. Both backends are
imported directly, so the comparison does not depend on DGH_WAVES_PURE_PYTHON.
"""
import sys
import timeit

import numpy as np

from dgh_waves import _pykernels

try:
    from dgh_waves import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def cases(n, seed=0):
    rng = np.random.default_rng(seed)
    s = rng.uniform(-3, 3, n)
    A = rng.uniform(-5, 5, n)
    B = rng.uniform(-5, 5, n)
    m = rng.uniform(-3, 3, n)
    M = m + rng.uniform(0, 3, n)
    z0 = rng.uniform(-4, 4, n)
    t = np.sort(rng.uniform(0, 1, 4096))
    return s, A, B, m, M, z0, t, np.sin(7 * t)


def bench(mod, data, repeat=3):
    s, A, B, m, M, z0, t, f = data
    jobs = {
        "solve_cubic_batch": lambda: mod.solve_cubic_batch(s, A, B, 1e-9),
        "classify_batch": lambda: mod.classify_batch(s, A, B, 3.0, True, 0.0, 1e-9),
        "classify_roles_batch": lambda: mod.classify_roles_batch(m, M, z0, 3.0, True, 0.0, 1e-9),
        "fd_first_derivative": lambda: mod.fd_first_derivative(t, f, 3),
    }
    return {k: min(timeit.repeat(fn, number=1, repeat=repeat)) for k, fn in jobs.items()}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    n = int(argv[0]) if argv else 20000
    data = cases(n)
    py = bench(_pykernels, data)
    if _ckernels is None:
        print("compiled backend unavailable; pure-Python timings only")
    cy = bench(_ckernels, data) if _ckernels is not None else {}
    print(f"{'kernel':24s} {'python [s]':>12s} {'cython [s]':>12s} {'speed-up':>10s}")
    for k, tp in py.items():
        tc = cy.get(k)
        if tc is None:
            print(f"{k:24s} {tp:12.4f} {'-':>12s} {'-':>10s}")
        else:
            print(f"{k:24s} {tp:12.4f} {tc:12.4f} {tp / tc:10.1f}")


if __name__ == "__main__":
    main()
