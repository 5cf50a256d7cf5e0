"""Tests for the Taylor series of G and the constants around it."""

import math

import mpmath
import pytest

from nestexp.constants import EULER_GOMPERTZ, EULER_MASCHERONI
from nestexp.distribution_core import g_derivatives
from nestexp.special_functions import expint_ei
from nestexp.taylor_engine import (
    SeriesQuery, Summation, compensated_sum, delta_integral, euler_maclaurin_gamma,
    gamma_integral, hardy_delta, hardy_partial_sums, hardy_remainder_bound,
    partial_sum_errors, prop5_gap, prop5_tail_bound, remainder_shape, taylor_partial_sum
)
from utils.error_handling import DomainError, TableExhaustedError, ValidationError


def test_compensated_sum_recovers_lost_digit():
    assert compensated_sum([1e16, 1.0, -1e16]) == 1.0
    assert compensated_sum([]) == 0.0


def test_series_query_validation():
    with pytest.raises(ValidationError):
        SeriesQuery(k=-1, w=0.0, m=3)
    with pytest.raises(ValidationError):
        SeriesQuery(k=0, w=0.0, m=501)
    with pytest.raises(ValidationError):
        SeriesQuery(k=0, w=0.0, m=3, delta_ref=0.7)
    with pytest.raises(ValidationError):
        SeriesQuery(k=0, w=math.inf, m=3)


def test_zeroth_partial_sum():
    """m = 0 at any w is the leading coefficient δB_k − A_k."""
    assert taylor_partial_sum(SeriesQuery(k=0, w=1.3, m=0)) == pytest.approx(EULER_GOMPERTZ)
    assert taylor_partial_sum(SeriesQuery(k=3, w=-0.4, m=0)) == pytest.approx(
        5 * EULER_GOMPERTZ - 3, abs=1e-15
    )


@pytest.mark.parametrize("k", [0, 1, 2])
@pytest.mark.parametrize("w", [-1.0, -0.5, 0.5, 1.0])
def test_partial_sum_converges_to_oracle(k, w):
    """At m = 100 the series matches the derivative recurrence to 1e-9."""
    partial = taylor_partial_sum(SeriesQuery(k=k, w=w, m=100))
    assert partial == pytest.approx(g_derivatives(w, k)[k], abs=1e-9)


def test_first_order_gap_at_minus_one():
    """k = 0, w = −1, m = 40 is already within 1e-9."""
    partial = taylor_partial_sum(SeriesQuery(k=0, w=-1.0, m=40))
    assert abs(partial - g_derivatives(-1.0, 0)[0]) <= 1e-9


@pytest.mark.parametrize("w", [-2.0, -1.0, 1.0, 2.0])
def test_summation_direction(w):
    """Forward and backward compensated sums agree to 1e-12."""
    q = SeriesQuery(k=1, w=w, m=100)
    forward = taylor_partial_sum(q, summation=Summation.FORWARD)
    backward = taylor_partial_sum(q, summation=Summation.BACKWARD)
    assert forward == pytest.approx(backward, abs=1e-12)


def test_wrong_delta_is_visible():
    """A perturbed δ leaves a gap the size of the perturbation."""
    oracle = g_derivatives(0.5, 0)[0]
    partial = taylor_partial_sum(SeriesQuery(k=0, w=0.5, m=100, delta_ref=0.5964))
    assert abs(partial - oracle) > 1e-6


def test_table_bound():
    with pytest.raises(TableExhaustedError):
        taylor_partial_sum(SeriesQuery(k=10, w=0.1, m=495))


def test_partial_sum_errors_shrink():
    oracle = g_derivatives(0.5, 0)[0]
    errors = dict(partial_sum_errors(0, 0.5, [5, 20, 60], oracle))
    assert errors[60] < errors[20] < errors[5]


def test_remainder_shape_decreases():
    """At w = 1 the envelope keeps shrinking from m = 100 to m = 200."""
    late = remainder_shape(200, 0, 1.0)
    early = remainder_shape(100, 0, 1.0)
    assert late.bound_shape < early.bound_shape
    assert late.converged


def test_remainder_shape_flags_large_w():
    """k = 2, w = 6, m = 15 is still in the growing part of the envelope."""
    estimate = remainder_shape(15, 2, 6.0)
    assert not estimate.converged
    assert estimate.bound_shape > remainder_shape(7, 2, 6.0).bound_shape


def test_convergence_not_uniform_in_w():
    """At m = 15 the error at w = 6 dwarfs the error at w = 1."""
    errors = {
        w: partial_sum_errors(0, w, [15], g_derivatives(w, 0)[0])[0][1] for w in (1.0, 6.0)
    }
    assert errors[6.0] > 1e3 * errors[1.0]


def test_remainder_shape_grows_with_w_and_k():
    by_w = [remainder_shape(20, 0, w).log_shape for w in (4.0, 8.0, 16.0, 32.0, 64.0)]
    assert all(b > a for a, b in zip(by_w, by_w[1:]))
    by_k = [remainder_shape(20, k, 1.0).log_shape for k in range(0, 41, 5)]
    assert all(b > a for a, b in zip(by_k, by_k[1:]))


def test_remainder_shape_overflow_keeps_log():
    estimate = remainder_shape(10, 0, 1e30)
    assert estimate.bound_shape == math.inf
    assert math.isfinite(estimate.log_shape)
    assert not estimate.converged


def test_remainder_shape_validation():
    with pytest.raises(ValidationError):
        remainder_shape(0, 0, 1.0)
    with pytest.raises(ValidationError):
        remainder_shape(5, -1, 1.0)


def test_hardy_delta_matches_ei():
    """δ = −e·Ei(−1) from 20 and 30 terms."""
    reference = -math.e * float(expint_ei(-1.0))
    assert hardy_delta(20) == pytest.approx(reference, abs=1e-14)
    assert abs(hardy_delta(30) + math.e * float(expint_ei(-1.0))) <= 1e-13


def test_hardy_first_term():
    """One term gives e·(1 − γ)."""
    assert hardy_delta(1) == pytest.approx(math.e * (1 - EULER_MASCHERONI), abs=1e-15)
    assert hardy_delta(1) == pytest.approx(1.149, abs=1e-3)


def test_hardy_truncation_error_bounded():
    sums = hardy_partial_sums(12)
    for terms, value in enumerate(sums[:-1], start=1):
        assert abs(value - sums[-1]) <= hardy_remainder_bound(terms) * 1.01 + 1e-15
    with pytest.raises(ValidationError):
        hardy_partial_sums(0)


def test_prop5_limit():
    """G(w) + w → −γ."""
    assert prop5_gap(-30.0) == pytest.approx(-EULER_MASCHERONI, abs=1e-11)
    assert abs(prop5_gap(-40.0) + EULER_MASCHERONI) < abs(prop5_gap(-20.0) + EULER_MASCHERONI)
    assert prop5_gap(-5.0) == pytest.approx(-0.5405, abs=1e-3)


@pytest.mark.parametrize("w", [-3.0, -6.0, -12.0, -25.0])
def test_prop5_tail_bound(w):
    assert abs(prop5_gap(w) + EULER_MASCHERONI) <= prop5_tail_bound(w)


def test_prop5_domain():
    with pytest.raises(DomainError):
        prop5_gap(0.0)


def test_euler_maclaurin_gamma():
    gamma = euler_maclaurin_gamma()
    with mpmath.workdps(30):
        assert abs(gamma - mpmath.euler) < mpmath.mpf("1e-25")
    assert float(gamma) == pytest.approx(EULER_MASCHERONI, abs=1e-15)
    with pytest.raises(ValidationError):
        euler_maclaurin_gamma(n_terms=0)


def test_integral_representations():
    delta, _ = delta_integral()
    gamma, _ = gamma_integral()
    assert delta == pytest.approx(EULER_GOMPERTZ, abs=1e-12)
    assert gamma == pytest.approx(EULER_MASCHERONI, abs=1e-10)
