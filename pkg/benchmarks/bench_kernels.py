"""Compare the compiled F_p kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 64 128 256] [--repeat 3]

Both backends must return identical results; the script exits non-zero otherwise.
"""
import argparse
import sys
import timeit

import numpy as np

from eptl import _kernels_py as fallback

try:
    from eptl import _kernels as compiled
except ImportError:
    compiled = None

P = 2147483629  # a prime below 2^31, the size used by the split-prime embeddings


def bench(mod, name, A, B, repeat):
    fns = {
        "matmul_mod": lambda: mod.matmul_mod(A, B, P),
        "rref_mod": lambda: mod.rref_mod(A, P),
        "rank_mod": lambda: mod.rank_mod(A, P),
    }
    return {k: min(timeit.repeat(f, number=1, repeat=repeat)) for k, f in fns.items()}


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[32, 64, 128, 256])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    ok = True
    print("%6s  %-11s %12s %12s %8s" % ("n", "kernel", "numpy [s]", "cython [s]", "speedup"))
    for n in args.sizes:
        A = rng.integers(0, P, size=(n, n), dtype=np.int64)
        A[:, n // 2] = (2 * A[:, 0]) % P  # force a rank drop so rref does real pivoting work
        B = rng.integers(0, P, size=(n, n), dtype=np.int64)
        t_py = bench(fallback, "numpy", A, B, args.repeat)
        if compiled is None:
            for k, t in t_py.items():
                print("%6d  %-11s %12.5f %12s %8s" % (n, k, t, "n/a", "n/a"))
            continue
        t_cy = bench(compiled, "cython", A, B, args.repeat)
        same = (np.array_equal(fallback.matmul_mod(A, B, P), compiled.matmul_mod(A, B, P))
                and fallback.rank_mod(A, P) == compiled.rank_mod(A, P)
                and np.array_equal(fallback.rref_mod(A, P)[0], compiled.rref_mod(A, P)[0]))
        ok = ok and same
        for k in t_py:
            print("%6d  %-11s %12.5f %12.5f %7.1fx" % (n, k, t_py[k], t_cy[k], t_py[k] / t_cy[k]))
        print("%6d  results identical: %s" % (n, same))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
