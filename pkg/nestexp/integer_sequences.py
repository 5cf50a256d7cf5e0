"""Bell and Gould numbers behind the Taylor coefficients δB_k − A_k.

Both sequences obey the same binomial self-convolution

    a_{k+1} = Σ_{j=0}^{k} C(k, j) a_j

and differ only in their seeds: B_0 = 1 for the Bell numbers, A_0 = 0, A_1 = 1
for the Gould numbers (the recurrence then applies from k = 1). Everything is
exact Python integers; floats only appear in the diagnostics.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

import mpmath

from utils.error_handling import TableExhaustedError, ValidationError
from .constants import EULER_GOMPERTZ

logger = logging.getLogger(__name__)

# cmd_sequences and the Taylor engine never need more than k = 500
MAX_TABLE_COUNT = 501
BEREND_TASSA_FACTOR = 0.792
RATIO_DIGITS = 30


@dataclass(frozen=True)
class IntegerPair:
    """(B_k, A_k) at one index."""
    k: int
    bell: int
    gould: int

    def delta_coefficient(self, delta_ref: float = EULER_GOMPERTZ) -> Fraction:
        """Exact δ_ref·B_k − A_k for the binary value of ``delta_ref``."""
        return Fraction(delta_ref) * self.bell - self.gould


@dataclass(frozen=True)
class CoefficientTable:
    """Contiguous (k, B_k, A_k) rows starting at k = 0."""
    pairs: Tuple[IntegerPair, ...]

    def __post_init__(self):
        for expected, pair in enumerate(self.pairs):
            if pair.k != expected:
                raise ValidationError(
                    "Coefficient table must be contiguous from k = 0",
                    {"expected": expected, "found": pair.k}
                )

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[IntegerPair]:
        return iter(self.pairs)

    def __getitem__(self, k: int) -> IntegerPair:
        return self.pair(k)

    @property
    def bell(self) -> Tuple[int, ...]:
        return tuple(p.bell for p in self.pairs)

    @property
    def gould(self) -> Tuple[int, ...]:
        return tuple(p.gould for p in self.pairs)

    def pair(self, k: int) -> IntegerPair:
        if k < 0:
            raise ValidationError(f"Index must be non-negative, got {k}")
        if k >= len(self.pairs):
            raise TableExhaustedError(
                f"Table covers k = 0..{len(self.pairs) - 1}, requested {k}",
                {"requested": k, "size": len(self.pairs)}
            )
        return self.pairs[k]

    def ratio_gap(self, k: int, delta_ref: float = EULER_GOMPERTZ) -> float:
        """|A_k/B_k − δ_ref| in double precision."""
        pair = self.pair(k)
        return float(abs(Fraction(pair.gould, pair.bell) - Fraction(delta_ref)))


def _validate_count(count: int) -> None:
    if count < 1:
        raise ValidationError(f"count must be at least 1, got {count}")


def pascal_rows() -> Iterator[List[int]]:
    """Yield C(k, 0..k) for k = 0, 1, 2, … built row by row."""
    row = [1]
    while True:
        yield row
        row = [1] + [row[j - 1] + row[j] for j in range(1, len(row))] + [1]


def _binomial_recurrence(count: int, seeds: Sequence[int]) -> List[int]:
    """Extend ``seeds`` by a_{k+1} = Σ C(k, j) a_j up to ``count`` terms."""
    values = list(seeds[:count])
    rows = pascal_rows()
    row = next(rows)
    row_index = 0
    while len(values) < count:
        k = len(values) - 1
        while row_index < k:
            row = next(rows)
            row_index += 1
        values.append(sum(c * a for c, a in zip(row, values)))
    return values


@lru_cache(maxsize=16)
def _bell_cached(count: int) -> Tuple[int, ...]:
    return tuple(_binomial_recurrence(count, (1,)))


@lru_cache(maxsize=16)
def _gould_cached(count: int) -> Tuple[int, ...]:
    return tuple(_binomial_recurrence(count, (0, 1)))


def bell_numbers(count: int) -> List[int]:
    """B_0 … B_{count−1} via the binomial recurrence."""
    _validate_count(count)
    return list(_bell_cached(count))


def gould_numbers(count: int) -> List[int]:
    """A_0 … A_{count−1}: 0, 1, 1, 3, 9, 31, 121, …"""
    _validate_count(count)
    return list(_gould_cached(count))


def bell_triangle(count: int) -> List[int]:
    """B_0 … B_{count−1} read off the Bell triangle (independent of the recurrence)."""
    _validate_count(count)
    row = [1]
    values = [1]
    while len(values) < count:
        next_row = [row[-1]]
        for entry in row:
            next_row.append(next_row[-1] + entry)
        row = next_row
        values.append(row[0])
    return values


@lru_cache(maxsize=8)
def coefficient_table(count: int) -> CoefficientTable:
    """Both columns for k = 0 … count − 1."""
    _validate_count(count)
    if count > MAX_TABLE_COUNT:
        raise TableExhaustedError(
            f"Tables are limited to {MAX_TABLE_COUNT} rows",
            {"requested": count, "limit": MAX_TABLE_COUNT}
        )
    bell = _bell_cached(count)
    gould = _gould_cached(count)
    return CoefficientTable(tuple(
        IntegerPair(k, b, a) for k, (b, a) in enumerate(zip(bell, gould))
    ))


def ratio_convergence(
    k_max: int,
    delta_ref: float = EULER_GOMPERTZ
) -> List[Tuple[int, float]]:
    """Gap |A_k/B_k − δ_ref| for k = 0 … k_max, divided at 30 significant digits."""
    if k_max < 2:
        raise ValidationError(f"k_max must be at least 2, got {k_max}")
    table = coefficient_table(k_max + 1)
    gaps: List[Tuple[int, float]] = []
    with mpmath.workdps(RATIO_DIGITS):
        delta = mpmath.mpf(delta_ref)
        for pair in table:
            ratio = mpmath.mpf(pair.gould) / mpmath.mpf(pair.bell)
            gaps.append((pair.k, float(abs(ratio - delta))))
    return gaps


def berend_tassa_log_bound(ell: int) -> float:
    """ℓ·ln(0.792ℓ / ln(ℓ+1)), the log of the Berend–Tassa upper bound on B_ℓ."""
    if ell < 1:
        raise ValidationError(f"ell must be at least 1, got {ell}")
    return ell * math.log(BEREND_TASSA_FACTOR * ell / math.log(ell + 1))


def berend_tassa_holds(count: int) -> List[Tuple[int, bool]]:
    """Check B_ℓ < (0.792ℓ / ln(ℓ+1))^ℓ for ℓ = 1 … count, compared in log space."""
    _validate_count(count)
    bell = _bell_cached(count + 1)
    results = []
    for ell in range(1, count + 1):
        results.append((ell, math.log(bell[ell]) < berend_tassa_log_bound(ell)))
    failures = [ell for ell, ok in results if not ok]
    if failures:
        logger.warning(f"Berend-Tassa bound violated at {failures}")
    return results


def gould_numbers_from_derivatives(
    count: int,
    dps: int = 120,
    nodes: int = 256
) -> List[int]:
    """Recover A_k = round(δB_k − G⁽ᵏ⁾(0)) from numerical derivatives of G.

    G(w) = e^{eʷ}E1(eʷ) is sampled on the unit circle |w| = 1 and its Taylor
    coefficients are read off by the trapezoidal Cauchy formula at ``dps``
    digits. Independent of the binomial recurrence; used as an oracle.
    """
    _validate_count(count)
    bell = _bell_cached(count)
    with mpmath.workdps(dps):
        delta = mpmath.e * mpmath.e1(1)
        samples = []
        for j in range(nodes):
            theta = 2 * mpmath.pi * j / nodes
            point = mpmath.expj(theta)
            y = mpmath.exp(point)
            samples.append((point, mpmath.exp(y) * mpmath.e1(y)))
        values = []
        for k in range(count):
            coefficient = mpmath.fsum(g * point ** (-k) for point, g in samples) / nodes
            derivative = mpmath.re(coefficient) * mpmath.factorial(k)
            values.append(int(mpmath.nint(delta * bell[k] - derivative)))
    return values
