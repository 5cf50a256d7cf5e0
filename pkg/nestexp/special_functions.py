"""Real and complex special functions.

All functions accept Python scalars or numpy arrays and return the same
shape; scalars in give Python scalars out.

* ``complex_gamma`` -- Γ(z) from a g = 7, n = 9 Lanczos approximation.
  Coefficients are the published Godfrey set (also shipped with Numerical
  Recipes 3rd ed. derivatives and many numerical libraries); relative
  accuracy is about 1e-15 in the right half plane.
* ``expint_ei`` -- Ei(x) for x < 0, power series for |x| <= 2 and the even
  continued fraction of E1 (modified Lentz) beyond.
* ``scaled_e1`` -- eˣ E1(x) for x > 0, which never overflows and is what the
  G function needs.
* ``sinh_ratio`` -- πz / sinh(πz) with the removable singularity filled.
"""

import logging
import math
from typing import Union

import numpy as np

from utils.error_handling import DomainError, GammaOverflowError, PoleError
from .constants import EULER_MASCHERONI

logger = logging.getLogger(__name__)

ArrayLike = Union[float, complex, np.ndarray]

LANCZOS_G = 7.0
LANCZOS_COEFFICIENTS = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

# sin(πz) in the reflection formula overflows past |Im z| ~ 225
GAMMA_IMAG_BAND = 200.0

# |x| at which Ei switches from the series to the continued fraction
EI_SERIES_CUTOFF = 2.0
EI_SERIES_MAX_TERMS = 400
CF_MAX_ITERATIONS = 2000
CF_EPS = 1e-15
FPMIN = 1e-300

SINH_RATIO_SERIES_CUT = 1e-4
SINH_ASYMPTOTIC_CUT = 700.0


def _lanczos(z: np.ndarray) -> np.ndarray:
    """Γ(z) for Re z >= 0.5."""
    zm = z - 1.0
    series = np.full(zm.shape, LANCZOS_COEFFICIENTS[0], dtype=np.complex128)
    for k in range(1, len(LANCZOS_COEFFICIENTS)):
        series += LANCZOS_COEFFICIENTS[k] / (zm + k)
    t = zm + LANCZOS_G + 0.5
    return SQRT_TWO_PI * np.exp((zm + 0.5) * np.log(t) - t) * series


def complex_gamma(z: ArrayLike) -> ArrayLike:
    """Gamma function for complex arguments.

    Args:
        z: Complex scalar or array.

    Returns:
        Γ(z), complex.

    Raises:
        PoleError: If any z is a non-positive integer on the real axis.
        GammaOverflowError: If |Im z| exceeds ``GAMMA_IMAG_BAND``.
    """
    values = np.asarray(z, dtype=np.complex128)
    scalar = values.ndim == 0
    values = np.atleast_1d(values)

    on_axis = values.imag == 0.0
    poles = on_axis & (values.real <= 0.0) & (values.real == np.round(values.real))
    if np.any(poles):
        raise PoleError(
            "Gamma function has a pole at non-positive integers",
            {"z": str(values[poles][0])}
        )
    if np.any(np.abs(values.imag) > GAMMA_IMAG_BAND):
        raise GammaOverflowError(
            f"|Im z| beyond supported band {GAMMA_IMAG_BAND}",
            {"max_imag": float(np.max(np.abs(values.imag)))}
        )

    result = np.empty_like(values)
    left = values.real < 0.5
    result[~left] = _lanczos(values[~left])
    if np.any(left):
        reflected = values[left]
        result[left] = np.pi / (np.sin(np.pi * reflected) * _lanczos(1.0 - reflected))

    if scalar:
        return complex(result[0])
    return result


def sinh_ratio(z: ArrayLike) -> ArrayLike:
    """πz / sinh(πz), even in z, equal to 1 at z = 0 and decreasing in |z|."""
    values = np.asarray(z, dtype=np.float64)
    scalar = values.ndim == 0
    x = np.pi * np.abs(np.atleast_1d(values))

    result = np.empty_like(x)
    small = x < SINH_RATIO_SERIES_CUT
    large = x > SINH_ASYMPTOTIC_CUT
    middle = ~small & ~large

    xs = x[small] ** 2
    # x/sinh x = 1 - x²/6 + 7x⁴/360 - 31x⁶/15120 + ...
    result[small] = 1.0 - xs / 6.0 + 7.0 * xs ** 2 / 360.0 - 31.0 * xs ** 3 / 15120.0
    result[middle] = x[middle] / np.sinh(x[middle])
    result[large] = 2.0 * x[large] * np.exp(-x[large])

    if scalar:
        return float(result[0])
    return result


def ein(x: np.ndarray) -> np.ndarray:
    """Entire exponential integral Ein(x) = Σ (−1)^{k+1} xᵏ / (k·k!) for x >= 0."""
    total = np.zeros_like(x)
    term = x.copy()  # (−1)^{k+1} xᵏ / k!
    for k in range(1, EI_SERIES_MAX_TERMS + 1):
        contribution = term / k
        total += contribution
        if np.all(np.abs(contribution) <= 1e-17 * np.abs(total)):
            break
        term = -term * x / (k + 1)
    else:
        logger.warning("Ein series did not converge within the term budget")
    return total


def _e1_scaled_continued_fraction(x: np.ndarray) -> np.ndarray:
    """eˣ E1(x) for x > 0 from the even continued fraction (modified Lentz)."""
    b = x + 1.0
    c = np.full_like(x, 1.0 / FPMIN)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, CF_MAX_ITERATIONS + 1):
        an = -float(i * i)
        b = b + 2.0
        denominator = an * d + b
        denominator = np.where(np.abs(denominator) < FPMIN, FPMIN, denominator)
        d = 1.0 / denominator
        c = b + an / c
        c = np.where(np.abs(c) < FPMIN, FPMIN, c)
        delta = c * d
        h = h * delta
        if np.all(np.abs(delta - 1.0) < CF_EPS):
            break
    else:
        logger.warning(
            f"E1 continued fraction not converged after {CF_MAX_ITERATIONS} iterations "
            f"(min x = {float(np.min(x)):.3g})"
        )
    return h


def _as_negative_array(x: ArrayLike) -> np.ndarray:
    values = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any(~(values < 0.0)):
        raise DomainError("Ei is only defined here for x < 0", {"x": float(np.max(values))})
    return values


def ei_series(x: ArrayLike) -> ArrayLike:
    """Ei(x) = γ + ln|x| + Σ xᵏ/(k·k!) for x < 0 (any magnitude, accurate for small |x|)."""
    scalar = np.ndim(x) == 0
    values = _as_negative_array(x)
    a = -values
    result = EULER_MASCHERONI + np.log(a) - ein(a)
    return float(result[0]) if scalar else result


def ei_continued_fraction(x: ArrayLike) -> ArrayLike:
    """Ei(x) = −eˣ·[e^{|x|} E1(|x|)] for x < 0 via the continued fraction."""
    scalar = np.ndim(x) == 0
    values = _as_negative_array(x)
    a = -values
    result = -np.exp(values) * _e1_scaled_continued_fraction(a)
    return float(result[0]) if scalar else result


def expint_ei(x: ArrayLike) -> ArrayLike:
    """Exponential integral Ei(x) for x < 0.

    Args:
        x: Strictly negative scalar or array.

    Returns:
        Ei(x), strictly negative (it underflows to −0.0 below about −745).

    Raises:
        DomainError: If any x >= 0 or is NaN.
    """
    scalar = np.ndim(x) == 0
    values = _as_negative_array(x)
    a = -values
    result = np.empty_like(values)
    near = a <= EI_SERIES_CUTOFF
    if np.any(near):
        result[near] = EULER_MASCHERONI + np.log(a[near]) - ein(a[near])
    if np.any(~near):
        result[~near] = -np.exp(values[~near]) * _e1_scaled_continued_fraction(a[~near])
    return float(result[0]) if scalar else result


def scaled_e1(x: ArrayLike) -> ArrayLike:
    """eˣ E1(x) = −eˣ Ei(−x) for x > 0.

    Behaves like 1/x for large x and like −γ − ln x for small x; never
    overflows for finite x.
    """
    scalar = np.ndim(x) == 0
    values = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any(~(values > 0.0)):
        raise DomainError("scaled E1 requires x > 0", {"x": float(np.min(values))})
    result = np.empty_like(values)
    near = values <= EI_SERIES_CUTOFF
    if np.any(near):
        a = values[near]
        result[near] = np.exp(a) * (-EULER_MASCHERONI - np.log(a) + ein(a))
    if np.any(~near):
        result[~near] = _e1_scaled_continued_fraction(values[~near])
    return float(result[0]) if scalar else result
