"""Compare the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints best-of-N wall time per kernel and the speed-up, plus the largest
difference between the two backends' outputs.
"""

import argparse
import timeit

import numpy as np

from farhi import _kernels_py

try:
    from farhi import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

CASES = [
    ("kummer_partial_sums(0.1, 2e6)", lambda k: k.kummer_partial_sums(0.1, 2_000_000)),
    ("kummer_partial_sums(1/3, 2e6)", lambda k: k.kummer_partial_sums(1 / 3, 2_000_000)),
    ("sum_log_over_square(2, 1e6)", lambda k: k.sum_log_over_square(2, 1_000_000)),
    ("sum_k_log_k(1e6)", lambda k: k.sum_k_log_k(1_000_000)),
    ("harmonic_log_gap(1e6)", lambda k: k.harmonic_log_gap(1_000_000)),
]


def best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels_c is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'kernel':<32} {'python ms':>10} {'cython ms':>10} {'speed-up':>9} {'max |diff|':>11}")
    for name, call in CASES:
        t_py = best(lambda: call(_kernels_py), args.repeat)
        if _kernels_c is None:
            print(f"{name:<32} {1e3 * t_py:>10.2f}")
            continue
        t_c = best(lambda: call(_kernels_c), args.repeat)
        diff = float(np.max(np.abs(np.asarray(call(_kernels_c)) - np.asarray(call(_kernels_py)))))
        print(f"{name:<32} {1e3 * t_py:>10.2f} {1e3 * t_c:>10.2f} {t_py / t_c:>8.1f}x {diff:>11.1e}")


if __name__ == "__main__":
    main()
