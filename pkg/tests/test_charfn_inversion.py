"""Tests for characteristic functions and the Gil-Pelaez inversion."""

import math

import numpy as np
import pytest
from scipy import special

from nestexp.charfn_inversion import (
    QuadratureConfig, charfn_wn, cdf_wn, default_z_max, gil_pelaez_integrand,
    integrand_at_origin, kappa, truncation_bound
)
from nestexp.constants import EULER_GOMPERTZ, EULER_MASCHERONI
from nestexp.distribution_core import cdf_w3
from utils.error_handling import DomainError, ToleranceNotMetError, ValidationError


@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_charfn_at_zero(n):
    assert charfn_wn(n, 0.0) == pytest.approx(1.0 + 0j, abs=1e-15)


def test_charfn_even_is_real():
    values = charfn_wn(4, np.linspace(0.0, 5.0, 11))
    assert np.all(values.imag == 0.0)
    assert np.all(values.real > 0.0)


def test_charfn_conjugate_symmetry():
    """φ(−z) = conj φ(z)."""
    z = np.array([0.3, 1.7, 4.0])
    assert np.allclose(charfn_wn(3, -z), np.conj(charfn_wn(3, z)), rtol=1e-13)


def test_charfn_logistic():
    """n = 2 is the logistic law with φ = πz/sinh(πz)."""
    assert charfn_wn(2, 1.0).real == pytest.approx(math.pi / math.sinh(math.pi), rel=1e-13)


@pytest.mark.parametrize("n,w", [(2, 0.7), (3, 0.5), (3, -2.0), (4, 1.0)])
def test_integrand_limit_at_origin(n, w):
    """The kernel tends to its analytic limit as z → 0⁺."""
    assert gil_pelaez_integrand(n, w, 1e-8) == pytest.approx(integrand_at_origin(n, w),
                                                             abs=1e-6)


def test_integrand_domain():
    with pytest.raises(DomainError):
        gil_pelaez_integrand(3, 0.0, 0.0)
    with pytest.raises(DomainError):
        gil_pelaez_integrand(3, 0.0, np.array([1.0, -1.0]))


def test_integrand_zero_beyond_gamma_band():
    assert gil_pelaez_integrand(3, 0.0, 250.0) == 0.0


def test_default_z_max():
    assert default_z_max(2) == pytest.approx(45.0)
    assert default_z_max(5) == pytest.approx(15.0)
    with pytest.raises(ValidationError):
        default_z_max(1)


def test_truncation_bound_decreases():
    assert truncation_bound(3, 10.0) < truncation_bound(3, 5.0)
    assert truncation_bound(3, default_z_max(3)) < 1e-10
    assert truncation_bound(6, 5.0) < truncation_bound(3, 5.0)


def test_quadrature_config_validation():
    with pytest.raises(ValidationError):
        QuadratureConfig(z_max=10.0, abs_tol=0.0)
    with pytest.raises(ValidationError):
        QuadratureConfig(z_max=1e-7)
    with pytest.raises(ValidationError):
        QuadratureConfig(z_max=10.0, max_nodes=0)


def test_quadrature_config_overrides():
    """None overrides keep the defaults."""
    cfg = QuadratureConfig.for_index(3, abs_tol=1e-8, z_max=None)
    assert cfg.z_max == pytest.approx(25.0)
    assert cfg.abs_tol == 1e-8
    assert cfg.to_dict()["max_nodes"] == cfg.max_nodes


@pytest.mark.parametrize("w", [-6.0, -1.0, 0.3, 2.5, 7.0])
def test_inversion_matches_logistic(w):
    """n = 2 against the closed form."""
    assert cdf_wn(2, w).value == pytest.approx(float(special.expit(w)), abs=1e-9)


@pytest.mark.parametrize("w", [-6.0, -1.0, 0.0, 0.3, 2.5, 7.0])
def test_inversion_matches_w3(w, quadrature):
    """n = 3 against e^w·G(w)."""
    result = cdf_wn(3, w, quadrature(3))
    assert result.value == pytest.approx(cdf_w3(w), abs=1e-9)
    assert result.est_error <= 1e-10
    assert result.nodes_used > 0


def test_even_index_at_zero_is_exact():
    result = cdf_wn(4, 0.0)
    assert result.value == 0.5
    assert result.nodes_used == 0


def test_inversion_monotone_in_w():
    values = [cdf_wn(4, w).value for w in (-3.0, -1.0, 0.5, 2.0, 4.0)]
    assert values == sorted(values)
    assert all(0.0 < v < 1.0 for v in values)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
@pytest.mark.parametrize("w", [0.4, 1.5, 3.0])
def test_even_index_symmetry(n, w):
    """Even n is symmetric about 0: F(−w) = 1 − F(w)."""
    assert cdf_wn(n, -w).value == pytest.approx(1.0 - cdf_wn(n, w).value, abs=1e-12)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(2, 9))
def test_inversion_monotone_on_grid(n):
    values = np.array([cdf_wn(n, w).value for w in np.linspace(-10.0, 10.0, 41)])
    assert np.all(np.diff(values) > 0.0)
    assert np.all((values > 0.0) & (values < 1.0))


@pytest.mark.parametrize("n,w", [(3, 0.5), (4, -1.0), (5, 2.0)])
def test_doubling_z_max_within_error(n, w, quadrature):
    """The tail beyond z_max is already below the reported error."""
    base = cdf_wn(n, w, quadrature(n))
    wide = cdf_wn(n, w, quadrature(n, z_max=2 * default_z_max(n)))
    assert abs(wide.value - base.value) <= base.est_error + wide.est_error + 1e-14


def test_inversion_needs_n_at_least_two():
    with pytest.raises(ValidationError):
        cdf_wn(1, 0.0)


def test_small_budget_reports_tolerance(quadrature):
    """A starved node budget raises with the best estimate attached."""
    with pytest.raises(ToleranceNotMetError) as info:
        cdf_wn(3, 0.0, quadrature(3, max_nodes=50))
    assert "value" in info.value.details
    assert "est_error" in info.value.details


def test_short_truncation_reports_tolerance(quadrature):
    with pytest.raises(ToleranceNotMetError) as info:
        cdf_wn(3, 0.0, quadrature(3, z_max=1.0))
    assert info.value.details["truncation_bound"] > 1e-10


def test_kappa_values():
    """κ₁ = 1 − 1/e, κ₃ = δ, κ₅ = γ, even n give 1/2."""
    assert kappa(1).value == pytest.approx(1 - math.exp(-1), abs=1e-15)
    assert kappa(3).value == pytest.approx(EULER_GOMPERTZ, abs=1e-9)
    assert kappa(5).value == pytest.approx(EULER_MASCHERONI, abs=1e-9)
    assert kappa(6).value == 0.5


def test_kappa_odd_decreasing():
    """0.5 < κ₇ < κ₅ < κ₃ and κ₇ truncates to 0.566094."""
    k3, k5, k7 = (kappa(n).value for n in (3, 5, 7))
    assert 0.5 < k7 < k5 < k3
    assert math.floor(k7 * 1e6) / 1e6 == pytest.approx(0.566094)


def test_kappa_rejects_zero():
    with pytest.raises(ValidationError):
        kappa(0)
