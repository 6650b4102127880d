"""Scalar special functions on the positive real axis.

log Gamma, digamma, the cosine and sine integrals, log sin(pi x) and the
hyperfactorial.  Domain violations raise :class:`SpecfunError`; nothing here
returns NaN.
"""

from __future__ import annotations

import enum
import math

from ._backend import kernels
from .constants import euler_gamma

__all__ = [
    "SpecfunError",
    "ErrorKind",
    "log_gamma",
    "digamma",
    "cin_cos",
    "sin_integral",
    "ci_si",
    "log_sin_pi",
    "hyperfactorial",
    "log_hyperfactorial",
]

_LOG_PI = math.log(math.pi)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_CI_SI_CUTOVER = 4.0
_SERIES_TERMS = 40

# Lanczos coefficients, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# B_{2k} / (2k) for the digamma asymptotic series, k = 1..7
_PSI_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


class ErrorKind(enum.Enum):
    DomainPole = "DomainPole"
    DomainNegative = "DomainNegative"
    Overflow = "Overflow"


class SpecfunError(ValueError):
    """Argument outside the domain of a special function."""

    def __init__(self, kind: ErrorKind, input: float, func: str = ""):
        self.kind = kind
        self.input = input
        self.func = func
        where = f"{func}: " if func else ""
        super().__init__(f"{where}{kind.value} at x = {input!r}")


def _check_positive(x: float, func: str) -> None:
    if math.isnan(x):
        raise SpecfunError(ErrorKind.DomainNegative, x, func)
    if x <= 0.0:
        kind = ErrorKind.DomainPole if x == math.floor(x) else ErrorKind.DomainNegative
        raise SpecfunError(kind, x, func)


def _lanczos_log_gamma(x: float) -> float:
    # valid for x >= 0.5
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0.

    Lanczos approximation for x >= 1/2 and the reflection formula below.
    Small positive integers go through the exact factorial.
    """
    x = float(x)
    _check_positive(x, "log_gamma")
    if math.isinf(x):
        raise SpecfunError(ErrorKind.Overflow, x, "log_gamma")
    if x <= 171.0 and x == math.floor(x):
        return math.log(math.factorial(int(x) - 1))
    if x < 0.5:
        return _LOG_PI - log_sin_pi(x) - _lanczos_log_gamma(1.0 - x)
    value = _lanczos_log_gamma(x)
    if math.isinf(value):
        raise SpecfunError(ErrorKind.Overflow, x, "log_gamma")
    return value


def digamma(x: float) -> float:
    """psi(x) = d/dx log Gamma(x), for x > 0.

    Shifts the argument up to x >= 8 with psi(x) = psi(x + 1) - 1/x, then
    sums the asymptotic series through the x**-14 term.
    """
    x = float(x)
    _check_positive(x, "digamma")
    shift = 0.0
    while x < 8.0:
        shift += 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    poly = 0.0
    for c in reversed(_PSI_ASYMPTOTIC):
        poly = poly * inv2 + c
    return math.log(x) - 0.5 / x - poly * inv2 - shift


def _ci_si_series(x: float) -> tuple[float, float]:
    x2 = x * x
    ci_terms = []
    si_terms = [x]
    t = 1.0  # x^(2k) / (2k)!
    u = x    # x^(2k+1) / (2k+1)!
    for k in range(1, _SERIES_TERMS + 1):
        t *= -x2 / ((2 * k - 1) * (2 * k))
        u *= -x2 / ((2 * k) * (2 * k + 1))
        ci_terms.append(t / (2 * k))
        si_terms.append(u / (2 * k + 1))
        if abs(t) < 1e-18 * (1.0 + abs(ci_terms[0])):
            break
    ci = euler_gamma() + math.log(x) + math.fsum(ci_terms)
    return ci, math.fsum(si_terms)


def _auxiliary_fg(x: float) -> tuple[float, float]:
    """Auxiliary functions f(x), g(x) from the continued fraction of E1(ix).

    exp(ix) E1(ix) = g(x) - i f(x); modified Lentz evaluation.
    """
    tiny = 1e-300
    b = complex(1.0, x)
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(2, 1000):
        a = -float((i - 1) ** 2)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta.real - 1.0) + abs(delta.imag) < 1e-16:
            break
    return -h.imag, h.real


def ci_si(x: float) -> tuple[float, float]:
    """Return (Ci(x), Si(x)) for x > 0."""
    x = float(x)
    if not x > 0.0:
        raise SpecfunError(ErrorKind.DomainNegative, x, "ci_si")
    if math.isinf(x):
        return 0.0, 0.5 * math.pi
    if x <= _CI_SI_CUTOVER:
        return _ci_si_series(x)
    f, g = _auxiliary_fg(x)
    s, c = math.sin(x), math.cos(x)
    return f * s - g * c, 0.5 * math.pi - f * c - g * s


def cin_cos(x: float) -> float:
    """Cosine integral Ci(x) = -int_x^inf cos(t)/t dt, x > 0."""
    return ci_si(x)[0]


def sin_integral(x: float) -> float:
    """Sine integral Si(x) = int_0^x sin(t)/t dt, x >= 0."""
    x = float(x)
    if x == 0.0:
        return 0.0
    if x < 0.0 or math.isnan(x):
        raise SpecfunError(ErrorKind.DomainNegative, x, "sin_integral")
    return ci_si(x)[1]


def log_sin_pi(x: float) -> float:
    """log(sin(pi x)) for 0 < x < 1, folded onto (0, 1/2]."""
    x = float(x)
    if x <= 0.0 or x >= 1.0 or math.isnan(x):
        kind = ErrorKind.DomainPole if x in (0.0, 1.0) else ErrorKind.DomainNegative
        raise SpecfunError(kind, x, "log_sin_pi")
    if x > 0.5:
        x = 1.0 - x
    return math.log(math.sin(math.pi * x))


def hyperfactorial(n: int) -> int:
    """H(n) = prod_{k=1}^n k**k as an exact integer."""
    if n < 1:
        raise SpecfunError(ErrorKind.DomainNegative, float(n), "hyperfactorial")
    return math.prod(k**k for k in range(1, n + 1))


def log_hyperfactorial(n: int) -> float:
    """log H(n) = sum_{k=1}^n k log k."""
    if n < 1:
        raise SpecfunError(ErrorKind.DomainNegative, float(n), "log_hyperfactorial")
    if n <= 10:
        return math.log(hyperfactorial(n))
    return kernels.sum_k_log_k(n)
