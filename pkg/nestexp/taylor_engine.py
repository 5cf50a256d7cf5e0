"""Taylor series of G around 0, its remainder envelope and the constants δ, γ.

G⁽ᵏ⁾(w) = Σ_{ℓ≥0} (δB_{ℓ+k} − A_{ℓ+k}) wˡ/ℓ!

converges for every w but not uniformly; ``remainder_shape`` gives the
envelope of the m-th remainder with the unknown decay constant set to zero.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import mpmath
from scipy import integrate

from utils.error_handling import DomainError, TableExhaustedError, ValidationError
from .constants import EULER_GOMPERTZ, EULER_MASCHERONI
from .distribution_core import g_function
from .integer_sequences import (
    BEREND_TASSA_FACTOR, MAX_TABLE_COUNT, CoefficientTable, coefficient_table
)

logger = logging.getLogger(__name__)

MAX_PARTIAL_ORDER = 500
DELTA_REF_RANGE = (0.59, 0.60)
# |G(w) + w + γ| <= PROP5_TAIL_CONSTANT·|w|·eʷ, verified for w <= −3
PROP5_TAIL_CONSTANT = 2.0
EULER_MACLAURIN_DIGITS = 30


class Summation(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


@dataclass(frozen=True)
class SeriesQuery:
    """Derivative order k, argument w, partial-sum order m and the δ used."""
    k: int
    w: float
    m: int
    delta_ref: float = EULER_GOMPERTZ

    def __post_init__(self):
        if self.k < 0:
            raise ValidationError(f"k must be non-negative, got {self.k}")
        if not 0 <= self.m <= MAX_PARTIAL_ORDER:
            raise ValidationError(
                f"m must lie in [0, {MAX_PARTIAL_ORDER}], got {self.m}", {"m": self.m}
            )
        if not DELTA_REF_RANGE[0] < self.delta_ref < DELTA_REF_RANGE[1]:
            raise ValidationError(
                f"delta_ref must lie in {DELTA_REF_RANGE}", {"delta_ref": self.delta_ref}
            )
        if not math.isfinite(self.w):
            raise ValidationError("w must be finite", {"w": self.w})


@dataclass(frozen=True)
class RemainderEstimate:
    """Envelope of the m-th remainder; ``log_shape`` survives when the shape overflows."""
    m: int
    bound_shape: float
    converged: bool
    log_shape: float


def compensated_sum(values: Iterable[float]) -> float:
    """Neumaier's improved Kahan summation."""
    total = 0.0
    compensation = 0.0
    for value in values:
        t = total + value
        if abs(total) >= abs(value):
            compensation += (total - t) + value
        else:
            compensation += (value - t) + total
        total = t
    return total + compensation


def series_terms(q: SeriesQuery, table: CoefficientTable) -> List[float]:
    """(δ_ref·B_{ℓ+k} − A_{ℓ+k}) wˡ/ℓ! for ℓ = 0 … m.

    Each coefficient is formed exactly and rounded once.
    """
    delta = Fraction(q.delta_ref)
    power = 1.0
    terms = []
    for ell in range(q.m + 1):
        if ell > 0:
            power *= q.w / ell
        pair = table.pair(ell + q.k)
        coefficient = float(delta * pair.bell - pair.gould)
        terms.append(coefficient * power)
    return terms


def _table_for(q: SeriesQuery) -> CoefficientTable:
    needed = q.m + q.k + 1
    if needed > MAX_TABLE_COUNT:
        raise TableExhaustedError(
            f"m + k = {needed - 1} exceeds the coefficient table bound {MAX_TABLE_COUNT - 1}",
            {"m": q.m, "k": q.k}
        )
    return coefficient_table(needed)


def taylor_partial_sum(
    q: SeriesQuery,
    table: Optional[CoefficientTable] = None,
    summation: Summation = Summation.FORWARD
) -> float:
    """Σ_{ℓ=0}^{m} (δ_ref·B_{ℓ+k} − A_{ℓ+k}) wˡ/ℓ! with compensated summation.

    Raises:
        TableExhaustedError: If the table does not reach index m + k.
    """
    table = table if table is not None else _table_for(q)
    terms = series_terms(q, table)
    if Summation(summation) is Summation.BACKWARD:
        terms.reverse()
    return compensated_sum(terms)


def remainder_log_shape(m: int, k: int, w: float) -> float:
    """Log of the remainder envelope

        [0.792·e]^{m+k+1} (m+k+1)^k |w|^{m+1} / ((m+1)^{1/2} ln(m+k+2)^{m+k+1})
    """
    if w == 0.0:
        return -math.inf
    total = m + k + 1
    return (
        total * (math.log(BEREND_TASSA_FACTOR) + 1.0)
        - 0.5 * math.log(m + 1)
        + k * math.log(total)
        + (m + 1) * math.log(abs(w))
        - total * math.log(math.log(m + k + 2))
    )


def remainder_shape(m: int, k: int, w: float) -> RemainderEstimate:
    """Remainder envelope at order m; converged when it is below the one at m // 2."""
    if m < 1:
        raise ValidationError(f"m must be at least 1, got {m}")
    if k < 0:
        raise ValidationError(f"k must be non-negative, got {k}")
    log_shape = remainder_log_shape(m, k, w)
    log_half = remainder_log_shape(m // 2, k, w)
    try:
        shape = math.exp(log_shape)
    except OverflowError:
        shape = math.inf
    return RemainderEstimate(
        m=m, bound_shape=shape, converged=log_shape < log_half, log_shape=log_shape
    )


def hardy_partial_sums(terms: int, gamma_ref: float = EULER_MASCHERONI) -> List[float]:
    """e·(−γ + Σ_{k=1}^{j} (−1)^{k+1}/(k·k!)) for j = 1 … terms."""
    if terms < 1:
        raise ValidationError(f"terms must be at least 1, got {terms}")
    sums = []
    series: List[float] = []
    factorial = 1
    for k in range(1, terms + 1):
        factorial *= k
        series.append((-1) ** (k + 1) / (k * factorial))
        sums.append(math.e * (math.fsum(series) - gamma_ref))
    return sums


def hardy_delta(terms: int, gamma_ref: float = EULER_MASCHERONI) -> float:
    """δ = e·(−γ + Σ (−1)^{k+1}/(k·k!)) truncated after ``terms`` terms.

    The truncation error is below e / ((terms+1)·(terms+1)!).
    """
    return hardy_partial_sums(terms, gamma_ref)[-1]


def hardy_remainder_bound(terms: int) -> float:
    return math.e / ((terms + 1) * math.factorial(terms + 1))


def prop5_tail_bound(w: float) -> float:
    return PROP5_TAIL_CONSTANT * abs(w) * math.exp(w)


def prop5_gap(w: float) -> float:
    """G(w) + w, which tends to −γ as w → −∞."""
    if not w < 0.0:
        raise DomainError("prop5_gap needs w < 0", {"w": w})
    return float(g_function(w)) + w


def euler_maclaurin_gamma(
    n_terms: int = 50,
    corrections: int = 10,
    dps: int = EULER_MACLAURIN_DIGITS
) -> mpmath.mpf:
    """γ = H_N − ln N − 1/(2N) + Σ_{k=1}^{c} B_{2k}/(2k·N^{2k}) at ``dps`` digits."""
    if n_terms < 1 or corrections < 0:
        raise ValidationError(
            "n_terms must be positive and corrections non-negative",
            {"n_terms": n_terms, "corrections": corrections}
        )
    with mpmath.workdps(dps):
        big_n = mpmath.mpf(n_terms)
        harmonic = mpmath.fsum(mpmath.mpf(1) / j for j in range(1, n_terms + 1))
        value = harmonic - mpmath.log(big_n) - 1 / (2 * big_n)
        for k in range(1, corrections + 1):
            value += mpmath.bernoulli(2 * k) / (2 * k * big_n ** (2 * k))
        return +value


def delta_integral() -> Tuple[float, float]:
    """δ = ∫₀^∞ ln(1+t) e^{−t} dt; returns (value, abserr)."""
    value, abserr = integrate.quad(lambda t: math.log1p(t) * math.exp(-t), 0.0, math.inf,
                                   epsabs=1e-14, epsrel=1e-14, limit=200)
    return value, abserr


def gamma_integral() -> Tuple[float, float]:
    """γ = −∫₀^∞ ln(t) e^{−t} dt, split at 1 for the log singularity."""
    head, head_err = integrate.quad(lambda t: math.log(t) * math.exp(-t), 0.0, 1.0,
                                    epsabs=1e-14, epsrel=1e-14, limit=200)
    tail, tail_err = integrate.quad(lambda t: math.log(t) * math.exp(-t), 1.0, math.inf,
                                    epsabs=1e-14, epsrel=1e-14, limit=200)
    return -(head + tail), head_err + tail_err


def partial_sum_errors(
    k: int,
    w: float,
    orders: Sequence[int],
    oracle: float,
    delta_ref: float = EULER_GOMPERTZ
) -> List[Tuple[int, float]]:
    """|partial sum − oracle| for each m in ``orders``, sharing one table."""
    table = _table_for(SeriesQuery(k=k, w=w, m=max(orders), delta_ref=delta_ref))
    return [
        (m, abs(taylor_partial_sum(SeriesQuery(k=k, w=w, m=m, delta_ref=delta_ref), table)
                - oracle))
        for m in orders
    ]
