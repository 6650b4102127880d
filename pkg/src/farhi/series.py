"""Summation of the three infinite series behind the first proof.

* the Kummer sine series  S(x) = sum_{n>=1} log(n) sin(2 pi n x) / n,
  conditionally convergent, summed by iterated block averaging of its
  partial sums;
* sum log(n) / n**2 (= -zeta'(2)), direct sum plus an Euler-Maclaurin tail;
* sum (-1)**n log(n) / n**2, by Cohen-Rodriguez Villegas-Zagier acceleration.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._backend import kernels

__all__ = [
    "Method",
    "SeriesResult",
    "SeriesNoConvergence",
    "kummer_tail",
    "kummer_partial_sums",
    "averaging_window",
    "iterated_average",
    "sum_logn_over_n2",
    "sum_alt_logn_over_n2",
    "cvz_alternating",
]


class Method(str, enum.Enum):
    DirectPlusEMTail = "DirectPlusEMTail"
    CesaroAveraged = "CesaroAveraged"
    AlternatingAccel = "AlternatingAccel"


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    method: Method


class SeriesNoConvergence(ArithmeticError):
    pass


_KUMMER_MIN_TOL = 1e-8
_KUMMER_START = 2**15
_KUMMER_MAX_TERMS = 2_000_000
_AVERAGING_PASSES = 2
_WINDOW_MIN = 32
_WINDOW_MAX = 4096


def kummer_partial_sums(x: float, n: int) -> np.ndarray:
    """Partial sums S_1..S_n of the Kummer sine series at x."""
    return kernels.kummer_partial_sums(float(x), int(n))


def averaging_window(x: float) -> int:
    """Block length for averaging the partial sums at x.

    The smallest L >= 32 that is a whole number of periods of sin(2 pi n x),
    if one exists below 4096; otherwise the L that best cancels the
    oscillation, i.e. minimises |sin(pi L x)| / L.
    """
    L = np.arange(_WINDOW_MIN, _WINDOW_MAX + 1)
    prod = L * float(x)
    aligned = np.nonzero(np.abs(prod - np.round(prod)) <= 1e-9)[0]
    if aligned.size:
        return int(L[aligned[0]])
    return int(L[np.argmin(np.abs(np.sin(np.pi * prod)) / L)])


def iterated_average(partials: np.ndarray, window: int, passes: int = _AVERAGING_PASSES) -> float:
    """Apply ``passes`` trailing moving averages of length ``window``; return the last value."""
    kernel = np.ones(1)
    box = np.full(window, 1.0 / window)
    for _ in range(passes):
        kernel = np.convolve(kernel, box)
    tail = partials[-kernel.size:]
    if tail.size < kernel.size:
        raise ValueError("not enough partial sums for the averaging window")
    return float(np.dot(tail, kernel[::-1]))


def kummer_tail(x: float, target_tol: float = 1e-8, max_terms: int = _KUMMER_MAX_TERMS) -> SeriesResult:
    """Sum S(x) = sum log(n) sin(2 pi n x) / n for 0 < x < 1.

    Partial sums are averaged twice over blocks matched to the period of
    the sine factor; the term count doubles until estimates at N and N/2
    agree to ``target_tol``.  Accuracy is limited to about 1e-8 by design.
    """
    x = float(x)
    if not 0.0 < x < 1.0:
        raise ValueError(f"x must lie in (0, 1), got {x!r}")
    if target_tol < _KUMMER_MIN_TOL:
        raise ValueError(f"target_tol must be >= {_KUMMER_MIN_TOL:g}, got {target_tol!r}")
    window = averaging_window(x)
    n = max(_KUMMER_START, 16 * window)
    while True:
        partials = kummer_partial_sums(x, n)
        full = iterated_average(partials, window)
        half = iterated_average(partials[: n // 2], window)
        if abs(full - half) <= target_tol:
            return SeriesResult(full, n, Method.CesaroAveraged)
        if 2 * n > max_terms:
            raise SeriesNoConvergence(
                f"Kummer series at x={x!r} not within {target_tol:g} after {n} terms "
                f"(last change {abs(full - half):.3g})"
            )
        n *= 2


_LOGN2_TERMS = 100_000


def _logn2_tail(n: int) -> float:
    """Euler-Maclaurin estimate of sum_{k>=n} log(k)/k**2 through the B_4 term."""
    L = math.log(n)
    integral = (L + 1.0) / n
    f = L / n**2
    d1 = (1.0 - 2.0 * L) / n**3
    d3 = (26.0 - 24.0 * L) / n**5
    return integral + 0.5 * f - d1 / 12.0 + d3 / 720.0


def sum_logn_over_n2(target_tol: float = 1e-14, n_terms: int = _LOGN2_TERMS) -> SeriesResult:
    """sum_{n>=1} log(n)/n**2 = -zeta'(2)."""
    if target_tol < 1e-14:
        raise ValueError(f"target_tol must be >= 1e-14, got {target_tol!r}")
    if n_terms < 10:
        raise ValueError("n_terms must be at least 10")
    value = kernels.sum_log_over_square(2, n_terms) + _logn2_tail(n_terms)
    return SeriesResult(value, n_terms, Method.DirectPlusEMTail)


def cvz_alternating(a: Callable[[int], float], order: int = 32) -> float:
    """sum_{k>=0} (-1)**k a(k) by the Cohen-Villegas-Zagier scheme."""
    d = (3.0 + math.sqrt(8.0)) ** order
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    s = 0.0
    for k in range(order):
        c = b - c
        s += c * a(k)
        b *= (k + order) * (k - order) / ((k + 0.5) * (k + 1.0))
    return s / d


def sum_alt_logn_over_n2(target_tol: float = 1e-13, order: int = 32) -> SeriesResult:
    """sum_{n>=1} (-1)**n log(n)/n**2."""
    if target_tol < 1e-13:
        raise ValueError(f"target_tol must be >= 1e-13, got {target_tol!r}")
    # n = k + 1 flips the sign relative to the k-indexed alternating sum
    value = -cvz_alternating(lambda k: math.log(k + 1.0) / (k + 1.0) ** 2, order)
    return SeriesResult(value, order, Method.AlternatingAccel)
