"""Compare the numba and numpy kernel backends on the classification hot path.

Both implementations are importable side by side, so this calls them
directly instead of toggling ROLLE_DISABLE_NUMBA. Each timing is the best of
``--repeat`` runs after one warm-up call (which also triggers JIT compilation).

    python3 benchmarks/bench_kernels.py --n 5 --count 100000
"""
import argparse
import time

import numpy as np

from rolle.kernels import GAP_EXPONENTIAL, REFINE_TOL, SEP_TOL, jit, row_labels, vec


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--count", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    labels = row_labels(args.n)
    uu = np.linspace(-0.5, 0.5, args.count)
    vv = uu[::-1].copy()
    stages = {
        "sample_batch": lambda m: m.sample_batch(GAP_EXPONENTIAL, args.n, 5.0, args.seed, 0, args.count),
    }
    roots = vec.sample_batch(GAP_EXPONENTIAL, args.n, 5.0, args.seed, 0, args.count)
    values = vec.arrangement_batch(roots, REFINE_TOL)
    stages["arrangement_batch"] = lambda m: m.arrangement_batch(roots, REFINE_TOL)
    stages["words_batch"] = lambda m: m.words_batch(values, labels, SEP_TOL)
    stages["anderson_batch"] = lambda m: m.anderson_batch(uu, vv)

    print(f"n={args.n} count={args.count} repeat={args.repeat}")
    print(f"{'kernel':<20}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, stage in stages.items():
        t_vec = best_of(lambda: stage(vec), args.repeat)
        t_jit = best_of(lambda: stage(jit), args.repeat)
        print(f"{name:<20}{t_vec:>12.4f}{t_jit:>12.4f}{t_vec / t_jit:>9.1f}x")


if __name__ == "__main__":
    main()
