"""Compare the compiled enumeration kernels against the pure-Python fallback.

Run as: python3 benchmarks/bench_kernels.py
"""

import time

from puiseux import _kernels_py

try:
    from puiseux import _kernels
except ImportError:
    _kernels = None

WORKLOADS = [
    ("factorizations_kernel", ((3, 5), 8000)),
    ("factorizations_kernel", ((6, 9, 20), 1200)),
    ("factorizations_kernel", ((5, 7, 11, 13), 400)),
    ("oracle_grid", ((6, 9, 20), 600)),
    ("member_table", ((101, 103), 500_000)),
]


def best_of(fn, args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    if _kernels is None:
        print("compiled backend not built; showing the pure fallback only")
    header = f"{'workload':<44} {'pure':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, args in WORKLOADS:
        pure_fn = getattr(_kernels_py, name)
        label = f"{name}{args}"
        pure = best_of(pure_fn, args)
        if _kernels is None:
            print(f"{label:<44} {pure * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
            continue
        fast_fn = getattr(_kernels, name)
        expect = pure_fn(*args)
        got = fast_fn(*args)
        assert list(got) == list(expect), f"backend mismatch on {label}"
        fast = best_of(fast_fn, args)
        print(f"{label:<44} {pure * 1e3:>8.2f}ms {fast * 1e3:>8.2f}ms "
              f"{pure / fast:>7.1f}x")


if __name__ == "__main__":
    main()
