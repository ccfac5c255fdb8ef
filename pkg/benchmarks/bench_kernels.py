"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--quick] [--repeat N]

Prints best-of-N wall time per kernel and backend, and the speedup of the
compiled backend. Both backends are also checked to return the same result.
"""

import argparse
import sys
import timeit

import numpy as np

from maxalg import kernels
from maxalg.randgen import random_matrix


def cases(quick):
    sizes = (32, 96) if quick else (64, 192)
    for n in sizes:
        a = random_matrix(n, 0.5, n).log
        yield f"matmul n={n}", "maxplus_matmul", (a, a)
    for n in ((40, 120) if quick else (100, 400)):
        yield f"karp n={n}", "karp_log_mean", (random_matrix(n, 0.2, n, irreducible=True).log,)
    for n in ((6, 7) if quick else (7, 8)):
        yield f"circuits complete K{n}", "elementary_circuits", (np.zeros((n, n)), 10**7)
    n = 11 if quick else 13
    yield f"circuits random n={n} d=0.35", "elementary_circuits", (random_matrix(n, 0.35, 5).log, 10**7)


def same(x, y):
    if isinstance(x, tuple):
        return all(same(p, q) for p, q in zip(x, y))
    return np.array_equal(x, y) if isinstance(x, np.ndarray) else x == y


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--quick", action="store_true", help="smaller inputs")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; timing the numpy backend only", file=sys.stderr)
    names = sorted(backends, reverse=True)
    header = f"{'case':32s}" + "".join(f"{b:>12s}" for b in names) + ("     speedup" if len(names) > 1 else "")
    print(header)
    print("-" * len(header))
    for label, fn, inputs in cases(args.quick):
        results, best = {}, {}
        for b in names:
            f = getattr(backends[b], fn)
            results[b] = f(*inputs)
            best[b] = min(timeit.repeat(lambda: f(*inputs), number=1, repeat=args.repeat))
        if len(names) > 1 and not same(results["cython"], results["python"]):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 1
        row = f"{label:32s}" + "".join(f"{best[b] * 1e3:10.2f}ms" for b in names)
        if len(names) > 1:
            row += f"{best['python'] / best['cython']:11.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
