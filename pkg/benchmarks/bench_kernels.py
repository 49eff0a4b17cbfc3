"""Time the compiled kernels against the NumPy fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--sizes 513 2048] [--repeats 3]

Prints one row per (kernel, size) with the best wall time of each backend
and the speedup.  Both backends are checked to agree before timing.
"""
import argparse
import sys
import time

import numpy as np

from stftinv import _backend
from stftinv.windows import make_window

GL_X, GL_W = np.polynomial.legendre.leggauss(8)


def best_time(fun, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fun()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(n, rng):
    L = 16.0
    x = np.linspace(-L, L, n)
    dx = x[1] - x[0]
    a = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * dx
    omega = np.linspace(-np.pi / dx, np.pi / dx, n)
    gauss = make_window("gaussian", 1.0)
    hann = make_window("hann", 2.0)
    return {
        "dft": lambda b: _backend.dft(a, x, omega, -1, backend=b),
        "dirichlet": lambda b: _backend.dirichlet(a, x, x, 8.0, backend=b),
        "kernel_trapezoid": lambda b: _backend.kernel_trapezoid(a, x, x, gauss, 8.0, 8.0, backend=b),
        "kernel_panels": lambda b: _backend.kernel_panels(a / dx, x[0], dx, x, hann, 8.0, 8.0,
                                                          GL_X, GL_W, backend=b),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[513, 2048])
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    if "cython" not in _backend.available():
        print("compiled kernels are not built; only the NumPy fallback is available", file=sys.stderr)
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<18}{'N':>6}{'cython ms':>12}{'python ms':>12}{'speedup':>9}")
    for n in args.sizes:
        for name, run in cases(n, rng).items():
            c, p = run("cython"), run("python")
            if not np.allclose(c, p, rtol=1e-9, atol=1e-9 * np.max(np.abs(p))):
                print(f"{name}: backends disagree", file=sys.stderr)
                return 1
            tc = best_time(lambda: run("cython"), args.repeats)
            tp = best_time(lambda: run("python"), args.repeats)
            print(f"{name:<18}{n:>6}{tc * 1e3:>12.2f}{tp * 1e3:>12.2f}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
