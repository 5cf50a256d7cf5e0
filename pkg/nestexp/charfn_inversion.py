"""Characteristic functions of Wₙ and Gil-Pelaez inversion.

With s(z) = πz / sinh(πz):

    φ_{Wₙ}(z) = s(z)^{n/2}                    n even
    φ_{Wₙ}(z) = s(z)^{(n−1)/2} · Γ(1 + iz)    n odd

and F_{Wₙ}(w) = 1/2 + ∫₀^∞ k(z) dz with kernel

    k(z) = s(z)^{n/2} · sin(wz) / (πz)                        n even
    k(z) = s(z)^{(n−1)/2} · Im(e^{iwz} Γ(1 − iz)) / (πz)     n odd

The odd-n inner integral over t is collapsed to Im(e^{iwz}Γ(1−iz)), so only
one quadrature dimension remains. n = 1 is never inverted: its kernel does
not decay.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Union

import numpy as np
from scipy import special

from utils.error_handling import (
    DivergenceError, DomainError, ToleranceNotMetError, ValidationError, log_operation
)
from .constants import EULER_MASCHERONI
from .quadrature import DEFAULT_ORDER, adaptive_gauss_legendre
from .special_functions import GAMMA_IMAG_BAND, complex_gamma, sinh_ratio

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

DEFAULT_ABS_TOL = 1e-10
DEFAULT_SMALL_Z_CUT = 1e-6
DEFAULT_MAX_NODES = 200_000
MAX_ABS_TOL = 1e-2
# raw values outside this band mean the quadrature went wrong
DIVERGENCE_BAND = (-0.05, 1.05)


def default_z_max(n: int) -> float:
    """Truncation point 40/(n−1) + 5; the kernel decays like e^{−nπz/2}."""
    if n < 2:
        raise ValidationError(f"Inversion needs n >= 2, got {n}")
    return 40.0 / (n - 1) + 5.0


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings for one inversion: truncation, tolerance, node budget, origin patch."""
    z_max: float
    abs_tol: float = DEFAULT_ABS_TOL
    max_nodes: int = DEFAULT_MAX_NODES
    small_z_cut: float = DEFAULT_SMALL_Z_CUT
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        if not 0.0 < self.abs_tol <= MAX_ABS_TOL:
            raise ValidationError(
                f"abs_tol must lie in (0, {MAX_ABS_TOL}]", {"abs_tol": self.abs_tol}
            )
        if not self.small_z_cut > 0.0:
            raise ValidationError("small_z_cut must be positive",
                                  {"small_z_cut": self.small_z_cut})
        if not self.z_max > self.small_z_cut:
            raise ValidationError(
                "z_max must exceed small_z_cut",
                {"z_max": self.z_max, "small_z_cut": self.small_z_cut}
            )
        if self.max_nodes < 1 or self.order < 2:
            raise ValidationError(
                "max_nodes and order must be positive",
                {"max_nodes": self.max_nodes, "order": self.order}
            )

    @classmethod
    def for_index(cls, n: int, **overrides: Any) -> "QuadratureConfig":
        """Defaults for index n; keyword arguments override single fields."""
        params: Dict[str, Any] = {"z_max": default_z_max(n)}
        params.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**params)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class InversionResult:
    """F_{Wₙ}(w) with its error bookkeeping; values are never clamped."""
    value: float
    est_error: float
    nodes_used: int
    truncation_bound: float


def charfn_wn(n: int, z: ArrayLike) -> Union[complex, np.ndarray]:
    """φ_{Wₙ}(z); real for even n, φ(0) = 1, φ(−z) = conj(φ(z))."""
    if n < 1:
        raise ValidationError(f"Sequence index must be at least 1, got {n}")
    scalar = np.ndim(z) == 0
    values = np.atleast_1d(np.asarray(z, dtype=np.float64))
    s = np.atleast_1d(sinh_ratio(values))
    if n % 2 == 0:
        result = (s ** (n // 2)).astype(np.complex128)
    else:
        result = s ** ((n - 1) // 2) * np.atleast_1d(complex_gamma(1.0 + 1j * values))
    return complex(result[0]) if scalar else result


def integrand_at_origin(n: int, w: float) -> float:
    """Limit of the kernel as z → 0⁺: (w + γ)/π for odd n, w/π for even n."""
    if n % 2 == 0:
        return w / math.pi
    return (w + EULER_MASCHERONI) / math.pi


def gil_pelaez_integrand(n: int, w: float, z: ArrayLike) -> ArrayLike:
    """Inversion kernel at z > 0 (see module docstring).

    Beyond the Γ band the kernel is below s(z)^{n/2}/(πz) and is returned as 0.
    """
    if n < 1:
        raise ValidationError(f"Sequence index must be at least 1, got {n}")
    scalar = np.ndim(z) == 0
    values = np.atleast_1d(np.asarray(z, dtype=np.float64))
    if np.any(~(values > 0.0)):
        raise DomainError("Kernel is evaluated at z > 0 only", {"z": float(np.min(values))})

    s = np.atleast_1d(sinh_ratio(values))
    if n % 2 == 0:
        result = s ** (n // 2) * np.sin(w * values) / (np.pi * values)
    else:
        result = np.zeros_like(values)
        inside = values <= GAMMA_IMAG_BAND
        zi = values[inside]
        rotated = np.exp(1j * w * zi) * np.atleast_1d(complex_gamma(1.0 - 1j * zi))
        result[inside] = s[inside] ** ((n - 1) // 2) * rotated.imag / (np.pi * zi)
    return float(result[0]) if scalar else result


def truncation_bound(n: int, z_max: float) -> float:
    """Upper bound on ∫_{z_max}^∞ |kernel| dz.

    Uses |kernel| <= s(z)^{n/2}/(πz) and s(z) <= 2πz e^{−πz}/(1 − e^{−2π z_max}),
    which integrates to an upper incomplete gamma function.
    """
    a = n / 2.0
    b = a * math.pi
    scale = (2.0 * math.pi) ** a / math.pi / (-math.expm1(-2.0 * math.pi * z_max)) ** a
    tail = special.gamma(a) * special.gammaincc(a, b * z_max) / b ** a
    return float(scale * tail)


@log_operation("cdf_wn")
def cdf_wn(n: int, w: float, cfg: Optional[QuadratureConfig] = None) -> InversionResult:
    """F_{Wₙ}(w) by Gil-Pelaez inversion, n >= 2.

    Even n at w = 0 is exactly 1/2 without quadrature. Otherwise the integral
    is split into a trapezoid patch on [0, small_z_cut] using the analytic
    limit at the origin and adaptive Gauss–Legendre panels up to z_max.

    Raises:
        ValidationError: For n < 2.
        ToleranceNotMetError: If the quadrature error or the truncation bound
            exceeds ``cfg.abs_tol``; details carry the best estimate.
        DivergenceError: If the raw value leaves [−0.05, 1.05].
    """
    if n < 2:
        raise ValidationError(
            f"Inversion needs n >= 2, got {n}; n = 1 has a closed form", {"n": n}
        )
    w = float(w)
    if n % 2 == 0 and w == 0.0:
        return InversionResult(value=0.5, est_error=0.0, nodes_used=0, truncation_bound=0.0)
    cfg = cfg or QuadratureConfig.for_index(n)

    at_origin = integrand_at_origin(n, w)
    at_cut = gil_pelaez_integrand(n, w, cfg.small_z_cut)
    patch = 0.5 * cfg.small_z_cut * (at_origin + at_cut)
    patch_error = 0.5 * cfg.small_z_cut * abs(at_cut - at_origin)

    outcome = adaptive_gauss_legendre(
        lambda z: gil_pelaez_integrand(n, w, z),
        cfg.small_z_cut,
        cfg.z_max,
        abs_tol=cfg.abs_tol,
        max_nodes=cfg.max_nodes,
        order=cfg.order,
    )
    raw = 0.5 + patch + outcome.value
    est_error = outcome.est_error + patch_error
    bound = truncation_bound(n, cfg.z_max)
    details = {
        "n": n,
        "w": w,
        "value": raw,
        "est_error": est_error,
        "truncation_bound": bound,
        "nodes_used": outcome.nodes_used,
    }

    if not DIVERGENCE_BAND[0] <= raw <= DIVERGENCE_BAND[1]:
        raise DivergenceError(f"Inversion for n = {n}, w = {w} left the admissible band",
                              details)
    if not outcome.converged or est_error > cfg.abs_tol or bound > cfg.abs_tol:
        raise ToleranceNotMetError(
            f"Inversion for n = {n}, w = {w} did not reach abs_tol = {cfg.abs_tol:g}",
            details
        )
    logger.debug(f"F_W{n}({w}) = {raw:.17g} (est_error {est_error:.3g})")
    return InversionResult(
        value=raw, est_error=est_error, nodes_used=outcome.nodes_used, truncation_bound=bound
    )


def kappa(n: int, cfg: Optional[QuadratureConfig] = None) -> InversionResult:
    """κₙ = F_{Yₙ}(1) = F_{Wₙ}(0).

    κ₁ = 1 − 1/e in closed form, even n give exactly 1/2, odd n >= 3 are inverted.
    """
    if n < 1:
        raise ValidationError(f"Sequence index must be at least 1, got {n}")
    if n == 1:
        return InversionResult(value=-math.expm1(-1.0), est_error=0.0, nodes_used=0,
                               truncation_bound=0.0)
    return cdf_wn(n, 0.0, cfg)
