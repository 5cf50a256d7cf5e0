"""Closed forms for n = 1, 2, 3 and the G function.

On the log scale Wₙ = ln Yₙ. The first three members have elementary or
exponential-integral CDFs; everything for n = 3 is written through

    G(w) = −e^{eʷ} Ei(−eʷ) = e^{y} E1(y),   y = eʷ,

the integrated survival function of W₃, so that F_{W₃}(w) = y·G(w).
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Tuple, Union

import numpy as np
from scipy import integrate, special

from utils.error_handling import DomainError, UnsupportedIndexError, ValidationError
from .constants import EULER_MASCHERONI, GUMBEL_VARIANCE
from .integer_sequences import pascal_rows
from .special_functions import ein, scaled_e1

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# eʷ overflows past ~709; switch to the integral form a little earlier
INTEGRAL_FORM_CUT = 700.0
# below y = eʷ = 2 the Ein series in w is used directly
SERIES_CUT = math.log(2.0)
DERIVATIVE_WARNING_ORDER = 30
# terms of the e^{−w} expansion of G kept past INTEGRAL_FORM_CUT
TAIL_DERIVATIVE_TERMS = 4
# past y = 1e3 the density (1+y)eʸE1(y) − 1 cancels; use its expansion in u = 1/y
DENSITY_ASYMPTOTIC_CUT = 1e3
# y·f_{Y₃}(y) = Σ (−1)^{j+1} j·j! uʲ, truncated where the next term is below 1e-13 relative
DENSITY_ASYMPTOTIC_COEFFS = (0.0, 1.0, -4.0, 18.0, -96.0, 600.0, -4320.0, 35280.0)

CLOSED_FORM_INDICES = (1, 2, 3)


def _validate_index(n: int) -> None:
    if n < 1:
        raise ValidationError(f"Sequence index must be at least 1, got {n}")


def _require_closed_form(n: int) -> None:
    _validate_index(n)
    if n not in CLOSED_FORM_INDICES:
        raise UnsupportedIndexError(
            f"No closed form for n = {n}; use inversion or simulation",
            {"n": n, "supported": list(CLOSED_FORM_INDICES)}
        )


def _positive_array(y: ArrayLike) -> np.ndarray:
    values = np.atleast_1d(np.asarray(y, dtype=np.float64))
    if np.any(~(values > 0.0)):
        raise DomainError("y must be strictly positive", {"y": float(np.min(values))})
    return values


def _unwrap(result: np.ndarray, scalar: bool) -> ArrayLike:
    return float(result[0]) if scalar else result


def _integral_form(w: float) -> float:
    """∫₀^∞ e^{−t} / (1 + t·e^{−w}) dt = y·G(w), stable when eʷ overflows."""
    shrink = math.exp(-w)
    value, _ = integrate.quad(lambda t: math.exp(-t) / (1.0 + t * shrink), 0.0, np.inf)
    return value


def _scaled_density_y3(u: np.ndarray) -> np.ndarray:
    """y·f_{Y₃}(y) written in u = 1/y for y >= DENSITY_ASYMPTOTIC_CUT."""
    return np.polynomial.polynomial.polyval(u, DENSITY_ASYMPTOTIC_COEFFS)


def cdf_y_exact(n: int, y: ArrayLike) -> ArrayLike:
    """F_{Yₙ}(y) for n ∈ {1, 2, 3}.

    n = 1 is Exponential(1), n = 2 the Pareto-2 law 1 − 1/(y+1), n = 3 is
    −y eʸ Ei(−y).

    Raises:
        UnsupportedIndexError: For n >= 4.
        DomainError: If any y <= 0.
    """
    _require_closed_form(n)
    scalar = np.ndim(y) == 0
    values = _positive_array(y)
    if n == 1:
        result = -np.expm1(-values)
    elif n == 2:
        result = values / (values + 1.0)
    else:
        result = values * np.atleast_1d(scaled_e1(values))
    return _unwrap(result, scalar)


def pdf_y_exact(n: int, y: ArrayLike) -> ArrayLike:
    """Densities e^{−y}, 1/(y+1)² and (1+y)·eʸE1(y) − 1 for n = 1, 2, 3."""
    _require_closed_form(n)
    scalar = np.ndim(y) == 0
    values = _positive_array(y)
    if n == 1:
        result = np.exp(-values)
    elif n == 2:
        result = 1.0 / (values + 1.0) ** 2
    else:
        result = np.empty_like(values)
        tail = values >= DENSITY_ASYMPTOTIC_CUT
        head = values[~tail]
        result[~tail] = (1.0 + head) * np.atleast_1d(scaled_e1(head)) - 1.0
        result[tail] = _scaled_density_y3(1.0 / values[tail]) / values[tail]
    return _unwrap(result, scalar)


def g_function(w: ArrayLike) -> ArrayLike:
    """G(w) = −e^{eʷ} Ei(−eʷ), positive and decreasing, G(0) = δ.

    Behaves like −γ − w as w → −∞ and like e^{−w} as w → ∞.
    """
    scalar = np.ndim(w) == 0
    values = np.atleast_1d(np.asarray(w, dtype=np.float64))
    result = np.empty_like(values)

    low = values <= SERIES_CUT
    high = values > INTEGRAL_FORM_CUT
    middle = ~low & ~high

    if np.any(low):
        wl = values[low]
        y = np.exp(wl)
        # e^{y}(−γ − ln y + Ein(y)) with ln y taken as w exactly
        result[low] = np.exp(y) * (-EULER_MASCHERONI - wl + ein(y))
    if np.any(middle):
        result[middle] = scaled_e1(np.exp(values[middle]))
    if np.any(high):
        logger.warning(f"G evaluated through the integral form for {int(np.sum(high))} points")
        result[high] = [math.exp(-v) * _integral_form(v) for v in values[high]]
    return _unwrap(result, scalar)


def cdf_w3(w: ArrayLike) -> ArrayLike:
    """F_{W₃}(w) = eʷ·G(w), finite for all real w."""
    scalar = np.ndim(w) == 0
    values = np.atleast_1d(np.asarray(w, dtype=np.float64))
    result = np.empty_like(values)
    high = values > INTEGRAL_FORM_CUT
    if np.any(~high):
        regular = values[~high]
        result[~high] = np.exp(regular) * np.atleast_1d(g_function(regular))
    if np.any(high):
        logger.warning(f"F_W3 evaluated through the integral form for {int(np.sum(high))} points")
        result[high] = [_integral_form(v) for v in values[high]]
    return _unwrap(result, scalar)


def pdf_w3(w: ArrayLike) -> ArrayLike:
    """f_{W₃}(w) = eʷ(G + eʷG − 1); equals 2δ − 1 at w = 0."""
    scalar = np.ndim(w) == 0
    values = np.atleast_1d(np.asarray(w, dtype=np.float64))
    result = np.empty_like(values)
    tail = values >= math.log(DENSITY_ASYMPTOTIC_CUT)
    head = values[~tail]
    if head.size:
        y = np.exp(head)
        g = np.atleast_1d(g_function(head))
        result[~tail] = y * (g + y * g - 1.0)
    result[tail] = _scaled_density_y3(np.exp(-values[tail]))
    return _unwrap(result, scalar)


def integrated_cdf_w3(w: ArrayLike) -> ArrayLike:
    """∫_{−∞}^{w} F_{W₃}(s) ds = γ + w + G(w)."""
    scalar = np.ndim(w) == 0
    values = np.atleast_1d(np.asarray(w, dtype=np.float64))
    return _unwrap(EULER_MASCHERONI + values + np.atleast_1d(g_function(values)), scalar)


def cdf_w_closed_form(n: int, w: ArrayLike) -> ArrayLike:
    """F_{Wₙ}(w) for n ∈ {1, 2, 3}: 1 − exp(−eʷ), logistic, and F_{W₃}."""
    _require_closed_form(n)
    scalar = np.ndim(w) == 0
    values = np.atleast_1d(np.asarray(w, dtype=np.float64))
    if n == 1:
        result = -np.expm1(-np.exp(values))
    elif n == 2:
        result = special.expit(values)
    else:
        result = np.atleast_1d(cdf_w3(values))
    return _unwrap(result, scalar)


@dataclass(frozen=True)
class DerivativeVector:
    """G⁽ᵏ⁾(w) for k = 0 … k_max; entry 0 is G(w) itself."""
    w: float
    values: Tuple[float, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> float:
        return self.values[k]

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    @property
    def k_max(self) -> int:
        return len(self.values) - 1


def _tail_derivatives(w: float, k_max: int) -> Tuple[float, ...]:
    """G⁽ᵏ⁾(w), k >= 1, from G = Σ (−1)ʲ j! e^{−(j+1)w} where eʷ overflows."""
    powers = [(j, math.exp(-(j + 1) * w)) for j in range(TAIL_DERIVATIVE_TERMS)]
    # e^{−2w} and beyond underflow here; drop them before the (j+1)^k factor can overflow
    powers = [(j, p) for j, p in powers if p > 0.0]
    return tuple(
        math.fsum((-1) ** j * math.factorial(j) * float(-(j + 1)) ** k * p for j, p in powers)
        for k in range(1, k_max + 1)
    )


def g_derivatives(w: float, k_max: int) -> DerivativeVector:
    """Derivatives of G from G' = eʷG − 1 and G⁽ᵏ⁺¹⁾ = eʷ Σ_{j≤k} C(k,j) G⁽ʲ⁾.

    At w = 0 the entries are δB_k − A_k. Coefficients grow like Bell numbers,
    so orders above 30 lose relative accuracy. Past w = 700, where eʷ
    overflows, the derivatives come from the e^{−w} expansion of G instead.
    """
    if k_max < 0:
        raise ValidationError(f"k_max must be non-negative, got {k_max}")
    if k_max > DERIVATIVE_WARNING_ORDER:
        logger.warning(
            f"g_derivatives with k_max = {k_max} > {DERIVATIVE_WARNING_ORDER}: "
            f"expect accuracy degradation"
        )
    w = float(w)
    g0 = float(g_function(w))
    if w > INTEGRAL_FORM_CUT:
        return DerivativeVector(w=w, values=(g0,) + _tail_derivatives(w, k_max))
    values = [g0]
    if k_max >= 1:
        y = math.exp(w)
        values.append(y * g0 - 1.0)
        rows = pascal_rows()
        next(rows)
        for k in range(1, k_max):
            row = next(rows)
            values.append(y * math.fsum(c * v for c, v in zip(row, values)))
    return DerivativeVector(w=w, values=tuple(values))


def wn_moments(n: int) -> Tuple[float, float]:
    """Mean and variance of Wₙ, a signed sum of n Gumbel terms.

    The mean is −γ for odd n and 0 for even n; the variance is n·π²/6.
    """
    _validate_index(n)
    mean = -EULER_MASCHERONI if n % 2 == 1 else 0.0
    return mean, n * GUMBEL_VARIANCE
