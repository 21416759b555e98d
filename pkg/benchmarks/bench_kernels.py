"""Time the ribbon configuration-map kernel with numba and with numpy.

Usage: python3 benchmarks/bench_kernels.py [--group s3] [--length 8] [--codes 200000]
"""
import argparse
import time

import numpy as np

from qdouble import kernels
from qdouble.engine import Frame, ribbon_tables
from qdouble.group_core import builtin_group
from qdouble.lattice_geometry import make_patch, random_ribbon, random_start


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", default="s3")
    ap.add_argument("--length", type=int, default=8)
    ap.add_argument("--codes", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    G = builtin_group(args.group)
    patch = make_patch(10, 10, "open")
    r = random_ribbon(patch, random_start(patch, args.seed), args.length, args.seed)
    frame = Frame(G, r.support)
    kinds, cases, place = ribbon_tables(r, frame)
    rng = np.random.default_rng(args.seed)
    codes = rng.integers(0, frame.size, args.codes, dtype=np.int64)
    labels = np.arange(G.order)

    def run(use_numba):
        return kernels.ribbon_map(codes, G.cayley, G.inverse, kinds, cases, place, labels,
                                  use_numba=use_numba)

    results = {}
    if kernels._HAVE_NUMBA:
        run(True)  # compile
        results["numba"] = best_of(lambda: run(True), args.repeat)
    results["numpy"] = best_of(lambda: run(False), args.repeat)
    if "numba" in results:
        t_nb, g_nb = run(True)
        t_np, g_np = run(False)
        assert np.array_equal(t_nb, t_np) and np.array_equal(g_nb, g_np)

    print(f"group {G.name}, ribbon length {len(r)}, {args.codes} codes x {G.order} labels")
    for name, t in results.items():
        print(f"  {name:6s} {t * 1e3:9.2f} ms")
    if len(results) == 2:
        print(f"  speedup {results['numpy'] / results['numba']:.1f}x")


if __name__ == "__main__":
    main()
