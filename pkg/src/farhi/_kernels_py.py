"""Pure-Python (numpy) fallback for the compiled kernels in ``_kernels.pyx``."""

import math

import numpy as np


def _sin_two_pi(frac):
    r = 2.0 * frac
    sign = np.where(r >= 1.0, -1.0, 1.0)
    r = np.where(r >= 1.0, r - 1.0, r)
    r = np.where(r > 0.5, 1.0 - r, r)
    return sign * np.sin(np.pi * r)


def kummer_partial_sums(x, n):
    """Partial sums S_k = sum_{j<=k} log(j) sin(2 pi j x) / j for k = 1..n."""
    x = float(x)
    j = np.arange(1, n + 1, dtype=np.uint64)
    num, den = x.as_integer_ratio()
    shift = den.bit_length() - 1
    if shift <= 64:
        mask = np.uint64((1 << shift) - 1) if shift < 64 else np.uint64(2**64 - 1)
        # uint64 products wrap modulo 2**64, which is harmless modulo 2**shift
        frac = np.ldexp((j * np.uint64(num)) & mask, -shift)
    else:
        frac = np.fmod(j.astype(np.float64) * x, 1.0)
    jf = j.astype(np.float64)
    return np.cumsum(np.log(jf) * _sin_two_pi(frac) / jf)


def sum_log_over_square(start, stop):
    """sum_{k=start}^{stop-1} log(k) / k**2."""
    k = np.arange(start, stop, dtype=np.float64)
    return math.fsum(np.log(k) / (k * k))


def sum_k_log_k(n):
    """sum_{k=2}^{n} k log k, i.e. the log of the hyperfactorial."""
    k = np.arange(2, n + 1, dtype=np.float64)
    return math.fsum(k * np.log(k))


def harmonic_log_gap(n):
    """sum_{k=1}^{n-1} (1/k - log(1 + 1/k)); equals H_{n-1} - log n."""
    inv = 1.0 / np.arange(1, n, dtype=np.float64)
    return math.fsum(inv - np.log1p(inv))
