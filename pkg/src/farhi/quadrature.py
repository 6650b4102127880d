"""Double-exponential quadrature and the integrands built on it.

``integrate_finite`` is tanh-sinh on (a, b); ``integrate_semi_infinite`` is
exp-sinh on (0, inf).  Both refine by halving the step in the transformed
variable, reuse every earlier node, and stop once two successive levels agree
to ``abs_tol``.  Nodes are generated on the fly; nothing is tabulated.

Integrands are called only at interior points, so a log-type singularity at
either endpoint needs no special handling by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

from .specfun import log_gamma

__all__ = [
    "QuadConfig",
    "QuadResult",
    "QuadratureError",
    "NoConvergence",
    "NonFinite",
    "integrate_finite",
    "integrate_semi_infinite",
    "level_estimates",
    "eta_by_direct_quadrature",
    "eta_by_malmsten",
    "eta_integrand",
    "ci_part_integrand",
    "ci_part2_integrand",
    "malmsten_integrand",
    "shifted_malmsten_integrand",
    "log_gamma_malmsten",
]

Integrand = Callable[[float], float]

_HALF_PI = 0.5 * math.pi
_TWO_PI = 2.0 * math.pi
_FOUR_PI_SQ = 4.0 * math.pi**2
_MIN_LEVELS = 3
# beyond these |t| the transformed nodes leave the double range
_T_MAX_FINITE = math.asinh(700.0 / math.pi)
_T_MAX_SEMI = math.asinh(690.0 / _HALF_PI)


class QuadratureError(ArithmeticError):
    pass


class NoConvergence(QuadratureError):
    """Tolerance not met within the level or evaluation budget."""

    def __init__(self, message: str, estimate: float = math.nan, err_estimate: float = math.inf):
        super().__init__(message)
        self.estimate = estimate
        self.err_estimate = err_estimate


class NonFinite(QuadratureError):
    """The integrand returned NaN or an infinity at an interior node."""

    def __init__(self, x: float, value: float):
        super().__init__(f"integrand is {value!r} at x = {x!r}")
        self.x = x
        self.value = value


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-12
    max_levels: int = 12
    max_evals: int = 1_000_000

    def __post_init__(self):
        if not self.abs_tol > 0.0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol!r}")
        if self.max_levels < 3:
            raise ValueError(f"max_levels must be >= 3, got {self.max_levels!r}")
        if self.max_evals < 1:
            raise ValueError(f"max_evals must be positive, got {self.max_evals!r}")


DEFAULT_CONFIG = QuadConfig()


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    evals: int
    levels: int = 0


def _tanh_sinh_node(t: float, a: float, b: float) -> list[tuple[float, float]]:
    """Nodes and weights (without the step h) at +t and -t mapped to (a, b)."""
    width = b - a
    if t == 0.0:
        return [(a + 0.5 * width, 0.5 * width * _HALF_PI)]
    q = math.exp(-math.pi * math.sinh(t))  # exp(-2u), u = (pi/2) sinh t
    delta = width * q / (1.0 + q)          # distance from the nearer endpoint
    w = 0.5 * width * _HALF_PI * math.cosh(t) * 4.0 * q / (1.0 + q) ** 2
    nodes = []
    for x in (a + delta, b - delta):
        if a < x < b:
            nodes.append((x, w))
    return nodes


def _exp_sinh_node(t: float) -> list[tuple[float, float]]:
    nodes = []
    for s in ((t,) if t == 0.0 else (t, -t)):
        x = math.exp(_HALF_PI * math.sinh(s))
        if 0.0 < x < math.inf:
            nodes.append((x, _HALF_PI * math.cosh(s) * x))
    return nodes


def _de_levels(f: Integrand, node_fn, t_max: float, max_levels: int) -> Iterator[tuple[int, float, int]]:
    """Yield (level, estimate, cumulative evals) with step h = 2**-level."""
    total = 0.0
    evals = 0

    def add(t):
        nonlocal total, evals
        for x, w in node_fn(t):
            y = f(x)
            evals += 1
            if not math.isfinite(y):
                raise NonFinite(x, y)
            total += w * y

    # node_fn covers +t and -t together
    for k in range(int(t_max) + 1):
        add(float(k))
    yield 0, total, evals
    for level in range(1, max_levels + 1):
        h = 2.0**-level
        n_odd = int(t_max / h)
        for j in range(1, n_odd + 1, 2):
            add(j * h)
        yield level, h * total, evals


def _run(f: Integrand, node_fn, t_max: float, cfg: QuadConfig) -> QuadResult:
    previous = None
    err = math.inf
    value = math.nan
    for level, value, evals in _de_levels(f, node_fn, t_max, cfg.max_levels):
        if previous is not None:
            err = abs(value - previous)
            if level >= _MIN_LEVELS and err <= cfg.abs_tol:
                return QuadResult(value, err, evals, level)
        if evals > cfg.max_evals:
            raise NoConvergence(f"evaluation budget {cfg.max_evals} exhausted", value, err)
        previous = value
    raise NoConvergence(
        f"no convergence to {cfg.abs_tol:g} in {cfg.max_levels} levels (last error {err:.3g})",
        value,
        err,
    )


def integrate_finite(f: Integrand, a: float, b: float, cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """Tanh-sinh quadrature of ``f`` over (a, b)."""
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError(f"need a < b, got a={a!r}, b={b!r}")
    return _run(f, lambda t: _tanh_sinh_node(t, a, b), _T_MAX_FINITE, cfg)


def integrate_semi_infinite(f: Integrand, cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """Exp-sinh quadrature of ``f`` over (0, inf)."""
    return _run(f, _exp_sinh_node, _T_MAX_SEMI, cfg)


def level_estimates(f: Integrand, a: float, b: float, levels: int) -> list[float]:
    """Tanh-sinh estimates at levels 0..levels, without a stopping rule."""
    return [v for _, v, _ in _de_levels(f, lambda t: _tanh_sinh_node(t, a, b), _T_MAX_FINITE, levels)]


# ---------------------------------------------------------------------------
# Integrands


def _eta_direct_integrand(x: float) -> float:
    return log_gamma(x) * math.sin(_TWO_PI * x)


def eta_by_direct_quadrature(cfg: QuadConfig = DEFAULT_CONFIG) -> float:
    """eta = 2 * int_0^1 log Gamma(x) sin(2 pi x) dx."""
    return 2.0 * integrate_finite(_eta_direct_integrand, 0.0, 1.0, cfg).value


_ETA_SMALL_T = 1e-8
ETA_INTEGRAND_LIMIT = 1.0 / _TWO_PI


def eta_integrand(t: float) -> float:
    """[4 pi^2 (1 - e^-t) - t^2 e^-t] / (2 pi t (4 pi^2 + t^2)); tends to 1/(2 pi) at 0."""
    if t < _ETA_SMALL_T:
        return ETA_INTEGRAND_LIMIT
    one_minus_exp_over_t = -math.expm1(-t) / t
    return (_FOUR_PI_SQ * one_minus_exp_over_t - t * math.exp(-t)) / (_TWO_PI * (_FOUR_PI_SQ + t * t))


def ci_part_integrand(t: float) -> float:
    """(1 - e^-t) / (2 pi t (4 pi^2 + t^2))."""
    if t == 0.0:
        return 1.0 / (_TWO_PI * _FOUR_PI_SQ)
    return (-math.expm1(-t) / t) / (_TWO_PI * (_FOUR_PI_SQ + t * t))


def ci_part2_integrand(t: float) -> float:
    """-t^2 e^-t / (2 pi t (4 pi^2 + t^2))."""
    return -(t * math.exp(-t)) / (_TWO_PI * (_FOUR_PI_SQ + t * t))


def eta_by_malmsten(cfg: QuadConfig = DEFAULT_CONFIG) -> float:
    """eta as twice the semi-infinite integral of :func:`eta_integrand`."""
    return 2.0 * integrate_semi_infinite(eta_integrand, cfg).value


_MALMSTEN_SMALL_T = 0.01
_MALMSTEN_SERIES_TERMS = 14


def _malmsten_small_t(z: float, t: float) -> float:
    # [e^{-zt} - 1 + z(1 - e^{-t})] / t^2 = sum_{k>=2} (-1)^k (z^k - z) t^{k-2} / k!
    acc = 0.0
    zk = z
    fact = 1.0
    tp = 1.0
    for k in range(2, _MALMSTEN_SERIES_TERMS + 2):
        zk *= z
        fact *= k
        acc += (-1) ** k * (zk - z) * tp / fact
        tp *= t
    return acc * (t / math.expm1(t))


def shifted_malmsten_integrand(x: float) -> Integrand:
    """t -> [e^{-(x-1)t} - (x-1)(e^{-t} - 1) - 1] / (t (e^t - 1)), for x > 0."""
    z = float(x) - 1.0
    if not z > -1.0:
        raise ValueError(f"need x > 0, got {x!r}")

    def integrand(t: float) -> float:
        if t < _MALMSTEN_SMALL_T:
            return _malmsten_small_t(z, t)
        if t < 20.0:
            return (math.expm1(-z * t) - z * math.expm1(-t)) / (t * math.expm1(t))
        et = math.exp(-t)
        num = math.exp(-(z + 1.0) * t) - et + z * (et - et * et)
        return num / (t * (1.0 - et))

    return integrand


def malmsten_integrand(z: float) -> Integrand:
    """t -> [z - (1 - e^{-zt}) / (1 - e^{-t})] e^{-t} / t, for z > -1."""
    z = float(z)
    if not z > -1.0:
        raise ValueError(f"need z > -1, got {z!r}")

    def integrand(t: float) -> float:
        if t < _MALMSTEN_SMALL_T:
            return _malmsten_small_t(z, t)
        if t < 20.0:
            return (z - math.expm1(-z * t) / math.expm1(-t)) * math.exp(-t) / t
        et = math.exp(-t)
        return (z * et - (et - math.exp(-(z + 1.0) * t)) / (1.0 - et)) / t

    return integrand


def log_gamma_malmsten(z: float, cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """log Gamma(z + 1) from the Malmsten integral."""
    return integrate_semi_infinite(malmsten_integrand(z), cfg)
