"""Named constants, computed once per process and cached.

=============  =====================================================
gamma          Euler-Mascheroni, harmonic sum with Euler-Maclaurin
zeta_prime_2   zeta'(2) = -sum log n / n**2
log_glaisher   log A, from zeta'(2) and gamma
ci_two_pi      Ci(2 pi)
eta_closed     (gamma + log 2 pi) / pi
=============  =====================================================
"""

from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass

from ._backend import kernels

__all__ = [
    "ConstantsTable",
    "euler_gamma",
    "zeta_prime_2",
    "log_glaisher",
    "log_glaisher_hyperfactorial",
    "log_two_pi",
    "ci_two_pi",
    "eta_closed_form",
    "table",
]

_GAMMA_TERMS = 10_000
_GLAISHER_EM_ORDER = 16


def _once(func):
    """Cache a zero-argument function; the first call runs under a lock."""
    lock = threading.Lock()
    sentinel = object()
    value = sentinel

    @functools.wraps(func)
    def wrapper():
        nonlocal value
        if value is sentinel:
            with lock:
                if value is sentinel:
                    value = func()
        return value

    return wrapper


@dataclass(frozen=True)
class ConstantsTable:
    pi: float
    gamma: float
    log_two_pi: float
    zeta_prime_2: float
    log_glaisher: float
    ci_two_pi: float
    eta_closed: float


@_once
def euler_gamma() -> float:
    """Euler-Mascheroni constant.

    H_{N-1} - log N is accumulated as sum (1/k - log1p(1/k)), which has no
    cancellation; the Euler-Maclaurin correction is carried through B_4.
    """
    n = _GAMMA_TERMS
    gap = kernels.harmonic_log_gap(n)  # H_{n-1} - log n
    tail = 1.0 / n - 1.0 / (2 * n) + 1.0 / (12 * n**2) - 1.0 / (120 * n**4)
    return gap + tail


@_once
def log_two_pi() -> float:
    return math.log(2.0 * math.pi)


@_once
def zeta_prime_2() -> float:
    """zeta'(2), by direct summation plus an Euler-Maclaurin tail."""
    from .series import sum_logn_over_n2

    return -sum_logn_over_n2().value


@_once
def log_glaisher() -> float:
    """log A, solved from -zeta'(2) = (pi^2/6)(12 log A - gamma - log 2 pi)."""
    return (-6.0 * zeta_prime_2() / math.pi**2 + euler_gamma() + log_two_pi()) / 12.0


@_once
def log_glaisher_hyperfactorial() -> float:
    """log A from log H(n) at small n with the asymptotic correction series.

    Independent of zeta'(2); used to cross-check :func:`log_glaisher`.
    """
    n = _GLAISHER_EM_ORDER
    log_n = math.log(n)
    leading = (n * n / 2 + n / 2 + 1 / 12) * log_n - n * n / 4
    # log H(n) - leading - log A = 1/(720 n^2) - 1/(5040 n^4) + 1/(10080 n^6) - 1/(9504 n^8)
    correction = (
        1 / (720 * n**2) - 1 / (5040 * n**4) + 1 / (10080 * n**6) - 1 / (9504 * n**8)
    )
    return kernels.sum_k_log_k(n) - leading - correction


@_once
def ci_two_pi() -> float:
    from .specfun import cin_cos

    return cin_cos(2.0 * math.pi)


@_once
def eta_closed_form() -> float:
    """eta = (gamma + log 2 pi) / pi."""
    return (euler_gamma() + log_two_pi()) / math.pi


@_once
def table() -> ConstantsTable:
    return ConstantsTable(
        pi=math.pi,
        gamma=euler_gamma(),
        log_two_pi=log_two_pi(),
        zeta_prime_2=zeta_prime_2(),
        log_glaisher=log_glaisher(),
        ci_two_pi=ci_two_pi(),
        eta_closed=eta_closed_form(),
    )
