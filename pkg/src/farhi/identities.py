"""Registry of numerical identity checks.

Each record pairs a left-hand and a right-hand evaluator.  The two sides
never share a code path other than reads of :mod:`farhi.constants`; in
particular no right-hand side consults a quadrature or series result for the
quantity its left-hand side computes.  Parameterized records are evaluated at
every sample and report the worst one.
"""

from __future__ import annotations

import enum
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, NamedTuple, Optional, Sequence

from . import constants, quadrature, series, specfun

__all__ = [
    "IdentityId",
    "IdentityRecord",
    "CheckResult",
    "EvaluatorFailure",
    "REGISTRY",
    "get_record",
    "run_check",
    "run_all",
    "lima_digamma_check",
    "X_GRID",
]

PI = math.pi
LOG2 = math.log(2.0)
LOGPI = math.log(math.pi)

X_GRID = (0.1, 0.25, 0.4, 0.6, 0.75, 0.9)
MALMSTEN_Z = (0.5, 1.0, 2.5)
MALMSTEN_X = (0.25, 0.5, 0.75)
I1_T = (0.5, 1.0, 5.0)
ORTHOG_N = (1, 2, 3, 4, 5)
GK_LIMIT_N = 2000
PRINTED_ETA = 0.7687478924

TOL_QUAD = 1e-10
TOL_SERIES = 1e-6
TOL_GK_LIMIT = 5e-4


class IdentityId(str, enum.Enum):
    EQ1_POINTWISE = "EQ1_POINTWISE"
    EQ2_ETA_DEF = "EQ2_ETA_DEF"
    EQ3_KUMMER_POINTWISE = "EQ3_KUMMER_POINTWISE"
    EQ4_CLOSED_FORM = "EQ4_CLOSED_FORM"
    EQ5_LINEAR = "EQ5_LINEAR"
    EQ6_LOGSIN = "EQ6_LOGSIN"
    EQ7_ORTHOG = "EQ7_ORTHOG"
    EQ8_HALF_INT = "EQ8_HALF_INT"
    EQ9_GK_LIMIT = "EQ9_GK_LIMIT"
    EQ10_GLAISHER_INT = "EQ10_GLAISHER_INT"
    EQ11_ETA_VIA_A = "EQ11_ETA_VIA_A"
    EQ12_ZETAPRIME = "EQ12_ZETAPRIME"
    EQ13_ALT_SUM = "EQ13_ALT_SUM"
    EQ14_COMBINED_SUM = "EQ14_COMBINED_SUM"
    EQ16_MALMSTEN = "EQ16_MALMSTEN"
    EQ17_SHIFTED = "EQ17_SHIFTED"
    EQ18_I1 = "EQ18_I1"
    EQ19_I2 = "EQ19_I2"
    EQ20_I3 = "EQ20_I3"
    EQ21_COMBINED = "EQ21_COMBINED"
    EQ22_CI_PART = "EQ22_CI_PART"
    EQ23_CI_PART2 = "EQ23_CI_PART2"
    EQ26_ETA_MALMSTEN = "EQ26_ETA_MALMSTEN"
    LIMA_DIGAMMA = "LIMA_DIGAMMA"


class Eval(NamedTuple):
    value: float
    evals: int = 0


class EvaluatorFailure(RuntimeError):
    """An evaluator raised; carried into a failed :class:`CheckResult`."""

    def __init__(self, id: IdentityId, side: str, cause: BaseException):
        super().__init__(f"{id.value} {side}: {type(cause).__name__}: {cause}")
        self.id = id
        self.side = side
        self.cause = cause


Evaluator = Callable[..., Any]


@dataclass(frozen=True)
class IdentityRecord:
    id: IdentityId
    description: str
    lhs: Evaluator
    rhs: Evaluator
    tol: float
    paper_ref: str
    parameterized_over: Optional[tuple] = None

    def __post_init__(self):
        if not self.tol > 0.0:
            raise ValueError(f"{self.id}: tolerance must be positive")


@dataclass(frozen=True)
class CheckResult:
    id: IdentityId
    lhs_value: float
    rhs_value: float
    abs_err: float
    rel_err: float
    tol: float
    passed: bool
    evals: int
    runtime_ms: float
    error: Optional[str] = None


def _as_eval(result) -> Eval:
    if isinstance(result, Eval):
        return result
    if isinstance(result, quadrature.QuadResult):
        return Eval(result.value, result.evals)
    if isinstance(result, series.SeriesResult):
        return Eval(result.value, result.terms_used)
    return Eval(float(result), 0)


def _quad(f, a, b, scale=1.0) -> Eval:
    r = quadrature.integrate_finite(f, a, b)
    return Eval(scale * r.value, r.evals)


def _quad_inf(f, scale=1.0) -> Eval:
    r = quadrature.integrate_semi_infinite(f)
    return Eval(scale * r.value, r.evals)


def _sin2pi(x: float) -> float:
    return math.sin(2.0 * PI * x)


# ---------------------------------------------------------------------------
# Evaluators. Right-hand sides read constants only.


def _log_gamma_sin_integrand(x: float) -> float:
    return specfun.log_gamma(x) * _sin2pi(x)


def _eq1_rhs(x: float) -> Eval:
    s = series.kummer_tail(x)
    eta = constants.eta_closed_form()
    value = 0.5 * LOGPI + PI * eta * (0.5 - x) - 0.5 * specfun.log_sin_pi(x) + s.value / PI
    return Eval(value, s.terms_used)


def _eq3_rhs(x: float) -> Eval:
    s = series.kummer_tail(x)
    gamma = constants.euler_gamma()
    value = (
        (0.5 - x) * (gamma + LOG2)
        + (1.0 - x) * LOGPI
        - 0.5 * specfun.log_sin_pi(x)
        + s.value / PI
    )
    return Eval(value, s.terms_used)


def _eta_direct() -> Eval:
    return _quad(_log_gamma_sin_integrand, 0.0, 1.0, scale=2.0)


def _combined_log_sum() -> Eval:
    """sum [1 - (-1)^n] log(n) / n^2 by the two series routes."""
    plain = series.sum_logn_over_n2()
    alt = series.sum_alt_logn_over_n2()
    return Eval(plain.value - alt.value, plain.terms_used + alt.terms_used)


def _eq8_rhs() -> Eval:
    s = _combined_log_sum()
    eta = constants.eta_closed_form()
    value = LOG2 / 4 + PI * eta / 8 + LOGPI / 4 + s.value / (2 * PI**2)
    return Eval(value, s.evals)


def _half_log_gamma() -> Eval:
    return _quad(specfun.log_gamma, 0.0, 0.5)


def _gk_limit() -> Eval:
    n = GK_LIMIT_N
    log_ratio = specfun.log_hyperfactorial(n) - (n * n / 2 + n / 2 + 1 / 12) * math.log(n) + n * n / 4
    return Eval(math.exp(log_ratio), n)


def _eq10_rhs() -> float:
    return 5 / 24 * LOG2 + LOGPI / 4 + 1.5 * constants.log_glaisher()


def _eq11_lhs() -> Eval:
    # log A from the hyperfactorial route; the zeta'(2) route would make this
    # an algebraic rearrangement of the same log n / n^2 sum
    s = _combined_log_sum()
    value = 12 / PI * constants.log_glaisher_hyperfactorial() - LOG2 / (3 * PI) - 4 / PI**3 * s.value
    return Eval(value, s.evals)


def _eq12_rhs() -> float:
    # log A from the hyperfactorial asymptotics, so this side does not lean on
    # the same log n / n^2 sum as the left-hand side
    log_a = constants.log_glaisher_hyperfactorial()
    return PI**2 / 6 * (12 * log_a - constants.euler_gamma() - constants.log_two_pi())


def _eq13_rhs(form: str) -> float:
    if form == "zeta":
        return (PI**2 * LOG2 + 6 * constants.zeta_prime_2()) / 12
    return -(PI**2) / 12 * (12 * constants.log_glaisher() - constants.euler_gamma() - 2 * LOG2 - LOGPI)


def _eq14_rhs() -> float:
    return -(PI**2) / 12 * (3 * constants.euler_gamma() + 4 * LOG2 - 36 * constants.log_glaisher() + 3 * LOGPI)


def _eq17_lhs(x: float) -> Eval:
    return _quad_inf(quadrature.shifted_malmsten_integrand(x))


def _eq16_lhs(z: float) -> Eval:
    return _quad_inf(quadrature.malmsten_integrand(z))


def _i1_lhs(t: float) -> Eval:
    return _quad(lambda x: math.exp(-(x - 1.0) * t) * _sin2pi(x), 0.0, 1.0)


def _i1_rhs(t: float) -> float:
    return 2 * PI * math.expm1(t) / (4 * PI**2 + t * t)


def _eq22_rhs() -> float:
    return (constants.euler_gamma() - constants.ci_two_pi() + constants.log_two_pi()) / (8 * PI**3)


def _eq26_lhs() -> Eval:
    return _quad_inf(quadrature.eta_integrand, scale=2.0)


def _lima_integrand(x: float) -> float:
    s = math.sin(PI * x)
    return specfun.digamma(x) * s * s


def _lima_lhs() -> Eval:
    return _quad(_lima_integrand, 0.0, 1.0)


def _lima_rhs() -> float:
    # integration by parts against d/dx sin^2(pi x) = pi sin(2 pi x)
    return -PI * constants.eta_closed_form() / 2


_R = IdentityRecord
_I = IdentityId

REGISTRY: tuple[IdentityRecord, ...] = (
    _R(_I.EQ1_POINTWISE,
       "log Gamma(x) against the Farhi Fourier identity; eta from the closed form, series by block averaging",
       specfun.log_gamma, _eq1_rhs, TOL_SERIES,
       "log G(x) = (1/2) log pi + pi eta (1/2 - x) - (1/2) log sin(pi x) + (1/pi) sum log(n)/n sin(2 pi n x)",
       X_GRID),
    _R(_I.EQ2_ETA_DEF,
       "2 int_0^1 log Gamma(x) sin(2 pi x) dx by tanh-sinh against the printed value 0.7687478924",
       _eta_direct, lambda: PRINTED_ETA, TOL_QUAD,
       "eta := 2 int_0^1 log G(x) sin(2 pi x) dx ~ 0.7687478924"),
    _R(_I.EQ3_KUMMER_POINTWISE,
       "log Gamma(x) against the Kummer Fourier series",
       specfun.log_gamma, _eq3_rhs, TOL_SERIES,
       "log G(x) = (1/2 - x)(gamma + log 2) + (1 - x) log pi - (1/2) log sin(pi x) + (1/pi) sum log(n)/n sin(2 pi n x)",
       X_GRID),
    _R(_I.EQ4_CLOSED_FORM,
       "eta by direct quadrature against (gamma + log 2 pi)/pi",
       _eta_direct, constants.eta_closed_form, TOL_QUAD,
       "eta = (gamma + log(2 pi)) / pi"),
    _R(_I.EQ5_LINEAR,
       "int_0^{1/2} (1/2 - x) dx",
       lambda: _quad(lambda x: 0.5 - x, 0.0, 0.5), lambda: 0.125, TOL_QUAD,
       "int_0^{1/2} (1/2 - x) dx = 1/8"),
    _R(_I.EQ6_LOGSIN,
       "-(1/2) int_0^{1/2} log sin(pi x) dx",
       lambda: _quad(specfun.log_sin_pi, 0.0, 0.5, scale=-0.5), lambda: LOG2 / 4, TOL_QUAD,
       "-(1/2) int_0^{1/2} log sin(pi x) dx = log(2)/4"),
    _R(_I.EQ7_ORTHOG,
       "int_0^{1/2} sin(2 pi n x) dx for n = 1..5",
       lambda n: _quad(lambda x: math.sin(2 * PI * n * x), 0.0, 0.5),
       lambda n: (1 - (-1) ** n) / (2 * PI * n), TOL_QUAD,
       "int_0^{1/2} sin(2 pi n x) dx = (1 - (-1)^n) / (2 pi n)",
       ORTHOG_N),
    _R(_I.EQ8_HALF_INT,
       "int_0^{1/2} log Gamma by quadrature against the term-by-term integrated Farhi identity",
       _half_log_gamma, _eq8_rhs, TOL_QUAD,
       "int_0^{1/2} log G = log2/4 + pi eta/8 + log(pi)/4 + (1/(2 pi^2)) sum [1 - (-1)^n] log(n)/n^2"),
    _R(_I.EQ9_GK_LIMIT,
       f"H(n) n^-(n^2/2 + n/2 + 1/12) e^(n^2/4) at n = {GK_LIMIT_N} (log space) against A",
       _gk_limit, lambda: math.exp(constants.log_glaisher()), TOL_GK_LIMIT,
       "lim H(n) / n^(n^2/2 + n/2 + 1/12) e^(n^2/4) = A, H(n) = prod k^k"),
    _R(_I.EQ10_GLAISHER_INT,
       "int_0^{1/2} log Gamma by quadrature against the Glaisher-Kinkelin form",
       _half_log_gamma, _eq10_rhs, TOL_QUAD,
       "int_0^{1/2} log G = (5/24) log 2 + (1/4) log pi + (3/2) log A"),
    _R(_I.EQ11_ETA_VIA_A,
       "eta from log A and the odd-n log sum against the closed form",
       _eq11_lhs, constants.eta_closed_form, TOL_QUAD,
       "eta = (12/pi) log A - log(2)/(3 pi) - (4/pi^3) sum [1 - (-1)^n] log(n)/n^2"),
    _R(_I.EQ12_ZETAPRIME,
       "sum log(n)/n^2 against the Glaisher form; log A taken from hyperfactorial asymptotics",
       series.sum_logn_over_n2, _eq12_rhs, TOL_QUAD,
       "sum log(n)/n^2 = -zeta'(2) = (pi^2/6)(12 log A - gamma - log(2 pi))"),
    _R(_I.EQ13_ALT_SUM,
       "alternating sum (CVZ) against both displayed forms: zeta'(2) form and log A form",
       lambda form: series.sum_alt_logn_over_n2(), _eq13_rhs, TOL_QUAD,
       "sum (-1)^n log(n)/n^2 = (pi^2 log 2 + 6 zeta'(2))/12 = -(pi^2/12)(12 log A - gamma - 2 log 2 - log pi)",
       ("zeta", "glaisher")),
    _R(_I.EQ14_COMBINED_SUM,
       "odd-n log sum from the two series against the log A form",
       _combined_log_sum, _eq14_rhs, TOL_QUAD,
       "sum [1 - (-1)^n] log(n)/n^2 = -(pi^2/12)(3 gamma + 4 log 2 - 36 log A + 3 log pi)"),
    _R(_I.EQ16_MALMSTEN,
       "Malmsten integral for log Gamma(z + 1), z in {0.5, 1, 2.5}",
       _eq16_lhs, lambda z: specfun.log_gamma(z + 1.0), TOL_QUAD,
       "log G(z+1) = int_0^inf [z - (1 - e^-zt)/(1 - e^-t)] e^-t / t dt",
       MALMSTEN_Z),
    _R(_I.EQ17_SHIFTED,
       "shifted Malmsten integral for log Gamma(x), x in {0.25, 0.5, 0.75}",
       _eq17_lhs, specfun.log_gamma, TOL_QUAD,
       "log G(x) = int_0^inf [e^-(x-1)t - (x-1)(e^-t - 1) - 1] / (t (e^t - 1)) dt",
       MALMSTEN_X),
    _R(_I.EQ18_I1,
       "int_0^1 e^-(x-1)t sin(2 pi x) dx for t in {0.5, 1, 5}; the displayed form holds as written (no extra e^t factor)",
       _i1_lhs, _i1_rhs, 1e-12,
       "I1 = int_0^1 e^-(x-1)t sin(2 pi x) dx = 2 pi (e^t - 1) / (4 pi^2 + t^2)",
       I1_T),
    _R(_I.EQ19_I2,
       "int_0^1 (x - 1) sin(2 pi x) dx",
       lambda: _quad(lambda x: (x - 1.0) * _sin2pi(x), 0.0, 1.0), lambda: -1 / (2 * PI), TOL_QUAD,
       "I2 = int_0^1 (x - 1) sin(2 pi x) dx = -1/(2 pi)"),
    _R(_I.EQ20_I3,
       "int_0^1 (x - 2) sin(2 pi x) dx",
       lambda: _quad(lambda x: (x - 2.0) * _sin2pi(x), 0.0, 1.0), lambda: -1 / (2 * PI), TOL_QUAD,
       "I3 = int_0^1 (x - 2) sin(2 pi x) dx = -1/(2 pi)"),
    _R(_I.EQ21_COMBINED,
       "order swap: int_0^1 log Gamma sin(2 pi x) dx against the combined semi-infinite integral",
       lambda: _quad(_log_gamma_sin_integrand, 0.0, 1.0),
       lambda: _quad_inf(quadrature.eta_integrand), TOL_QUAD,
       "int_0^1 log G sin(2 pi x) dx = int_0^inf [4 pi^2 (1 - e^-t) - t^2 e^-t] / (2 pi t (4 pi^2 + t^2)) dt"),
    _R(_I.EQ22_CI_PART,
       "int_0^inf (1 - e^-t) / (2 pi t (4 pi^2 + t^2)) dt against its Ci(2 pi) form",
       lambda: _quad_inf(quadrature.ci_part_integrand), _eq22_rhs, 1e-11,
       "int_0^inf (1 - e^-t) / (2 pi t (4 pi^2 + t^2)) dt = (gamma - Ci(2 pi) + log(2 pi)) / (8 pi^3)"),
    _R(_I.EQ23_CI_PART2,
       "int_0^inf -t^2 e^-t / (2 pi t (4 pi^2 + t^2)) dt against Ci(2 pi)/(2 pi)",
       lambda: _quad_inf(quadrature.ci_part2_integrand), lambda: constants.ci_two_pi() / (2 * PI), 1e-11,
       "int_0^inf -t^2 e^-t / (2 pi t (4 pi^2 + t^2)) dt = Ci(2 pi) / (2 pi)"),
    _R(_I.EQ26_ETA_MALMSTEN,
       "eta by exp-sinh quadrature of the combined integrand against the closed form",
       _eq26_lhs, constants.eta_closed_form, TOL_QUAD,
       "eta = (gamma + log(2 pi)) / pi"),
    _R(_I.LIMA_DIGAMMA,
       "int_0^1 psi(x) sin^2(pi x) dx against -pi eta / 2 (integration by parts)",
       _lima_lhs, _lima_rhs, 1e-9,
       "int_0^1 psi(x) sin^2(pi x) dx"),
)

_BY_ID = {r.id: r for r in REGISTRY}


def get_record(id) -> IdentityRecord:
    try:
        return _BY_ID[IdentityId(id)]
    except ValueError:
        raise KeyError(f"unknown identity id {id!r}") from None


def _rel(lhs: float, rhs: float, abs_err: float) -> float:
    return abs_err / max(abs(lhs), abs(rhs), 1.0)


def _evaluate(record: IdentityRecord, args: Sequence) -> tuple[Eval, Eval]:
    try:
        lhs = _as_eval(record.lhs(*args))
    except Exception as exc:
        raise EvaluatorFailure(record.id, "lhs", exc) from exc
    try:
        rhs = _as_eval(record.rhs(*args))
    except Exception as exc:
        raise EvaluatorFailure(record.id, "rhs", exc) from exc
    return lhs, rhs


def run_check(id, tol_scale: float = 1.0) -> CheckResult:
    """Evaluate both sides of one registered identity."""
    record = get_record(id)
    tol = record.tol * tol_scale
    start = time.perf_counter()
    samples = record.parameterized_over or (None,)
    worst = None
    evals = 0
    try:
        for p in samples:
            lhs, rhs = _evaluate(record, () if p is None else (p,))
            evals += lhs.evals + rhs.evals
            err = abs(lhs.value - rhs.value)
            if math.isnan(err):
                err = math.inf
            if worst is None or err > worst[2]:
                worst = (lhs.value, rhs.value, err)
    except EvaluatorFailure as exc:
        elapsed = 1e3 * (time.perf_counter() - start)
        return CheckResult(record.id, math.nan, math.nan, math.inf, math.inf, tol, False, evals, elapsed, str(exc))
    elapsed = 1e3 * (time.perf_counter() - start)
    lhs_v, rhs_v, err = worst
    return CheckResult(
        id=record.id,
        lhs_value=lhs_v,
        rhs_value=rhs_v,
        abs_err=err,
        rel_err=_rel(lhs_v, rhs_v, err),
        tol=tol,
        passed=err <= tol,
        evals=evals,
        runtime_ms=elapsed,
    )


def run_all(tol_scale: float = 1.0, ids: Optional[Sequence] = None, workers: int = 1) -> list[CheckResult]:
    """Run registered checks in registry order; failures are returned, not raised."""
    if not tol_scale > 0.0:
        raise ValueError(f"tol_scale must be positive, got {tol_scale!r}")
    if ids is None:
        selected = [r.id for r in REGISTRY]
    else:
        wanted = {get_record(i).id for i in ids}
        selected = [r.id for r in REGISTRY if r.id in wanted]
    if workers <= 1:
        return [run_check(i, tol_scale) for i in selected]
    # warm the caches once so worker threads only read them
    constants.table()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: run_check(i, tol_scale), selected))


def lima_digamma_check() -> CheckResult:
    return run_check(IdentityId.LIMA_DIGAMMA)
