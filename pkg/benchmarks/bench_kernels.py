"""Compare the compiled kernels against the pure-Python fallbacks.

Runs the two hot paths (exact matmul, bounded factorization search) on
seeded workloads through both backends and prints wall times with the
speedup.  Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import statistics
import time

from ssekit import _kernels
from ssekit._kernels import pure
from ssekit.rng import SplitMix64


def timed(fn, repeats):
    best = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best.append(time.perf_counter() - t0)
    return statistics.median(best)


def random_flat(rng, count, lo, hi):
    return [rng.randint(lo, hi) for _ in range(count)]


def bench_matmul(repeats):
    rng = SplitMix64(101)
    cases = []
    for n in (16, 32, 64, 96):
        a = random_flat(rng, n * n, -99, 99)
        b = random_flat(rng, n * n, -99, 99)
        cases.append((f"matmul {n}x{n}", a, n, n, b, n))
    rows = []
    for label, a, n, k, b, m in cases:
        t_pure = timed(lambda: pure.matmul(a, n, k, b, m), repeats)
        if _kernels.HAVE_COMPILED:
            from ssekit._kernels import _core

            t_fast = timed(lambda: _core.matmul_i64(a, n, k, b, m), repeats)
            assert list(_core.matmul_i64(a, n, k, b, m)) == list(
                pure.matmul(a, n, k, b, m)
            )
        else:
            t_fast = None
        rows.append((label, t_pure, t_fast))
    return rows


def bench_search(repeats):
    cases = [
        ("search [6] m=4 e=6", [6], 1, 4, 6),
        ("search 2x2 ones m=3 e=2", [1, 1, 1, 1], 2, 3, 2),
        ("search 3x3 m=2 e=2", [1, 1, 0, 1, 1, 1, 0, 1, 1], 3, 2, 2),
        ("search 3x3 m=3 e=2", [2, 1, 0, 1, 2, 1, 0, 1, 2], 3, 3, 2),
    ]
    rows = []
    for label, a, n, m, e in cases:
        t_pure = timed(lambda: pure.factor_search(a, n, m, e), repeats)
        if _kernels.HAVE_COMPILED:
            from ssekit._kernels import _core

            t_fast = timed(lambda: _core.factor_search_i64(a, n, m, e, None), repeats)
            assert _core.factor_search_i64(a, n, m, e, None) == pure.factor_search(
                a, n, m, e
            )
        else:
            t_fast = None
        rows.append((label, t_pure, t_fast))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    print(f"backend available: {_kernels.backend_name()}")
    print(f"{'case':<28} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for rows in (bench_matmul(args.repeats), bench_search(args.repeats)):
        for label, t_pure, t_fast in rows:
            if t_fast is None:
                print(f"{label:<28} {t_pure * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
            else:
                print(
                    f"{label:<28} {t_pure * 1e3:>8.2f}ms {t_fast * 1e3:>8.2f}ms"
                    f" {t_pure / t_fast:>7.1f}x"
                )


if __name__ == "__main__":
    main()
