"""Compare the compiled and numpy convexity scans.

    python benchmarks/bench_scan.py [--grids 17 33 65 129] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from lfhh import kernels
from lfhh.convexity import check_generalized_convex
from lfhh.functions import AlphaPoly, Interval


def scan_inputs(n, alpha=0.5, seed=0):
    rng = np.random.default_rng(seed)
    values = np.cumsum(rng.normal(size=n * (n - 1) + 1)) ** 2
    lam = np.arange(1, n) / n
    return values, lam**alpha, (1 - lam) ** alpha


def best_of(fn, repeat):
    timer = timeit.Timer(fn)
    loops, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=loops)) / loops


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grids", type=int, nargs="+", default=[17, 33, 65, 129])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    have_c = kernels.scan_convexity_c is not None
    print(f"default backend: {kernels.BACKEND}")
    print(f"{'grid':>6} {'triples':>10} {'python ms':>11} {'cython ms':>11} {'speedup':>8}  agree")
    for n in args.grids:
        values, wl, wr = scan_inputs(n)
        t_py = best_of(lambda: kernels.scan_convexity(values, wl, wr, n, 1e-9, backend="python"), args.repeat)
        if have_c:
            t_c = best_of(lambda: kernels.scan_convexity(values, wl, wr, n, 1e-9, backend="cython"), args.repeat)
            agree = kernels.scan_convexity(values, wl, wr, n, 1e-9, backend="python") == kernels.scan_convexity(
                values, wl, wr, n, 1e-9, backend="cython"
            )
            print(f"{n:>6} {n * n * (n - 1):>10} {t_py * 1e3:>11.3f} {t_c * 1e3:>11.3f} {t_py / t_c:>7.1f}x  {agree}")
        else:
            print(f"{n:>6} {n * n * (n - 1):>10} {t_py * 1e3:>11.3f} {'-':>11} {'-':>8}  -")

    # end to end, including function evaluation on the fine grid
    f = AlphaPoly((1.0, 2.0, 3.0, 0.0, 1.0))
    iv = Interval(0.5, 2.0)
    print("\nfull check_generalized_convex, grid 65:")
    for backend in ("python", "cython") if have_c else ("python",):
        t = best_of(lambda: check_generalized_convex(f, iv, 0.7, grid_n=65, backend=backend), args.repeat)
        print(f"  {backend:>7}: {t * 1e3:.3f} ms")


if __name__ == "__main__":
    main()
