"""Unit tests for the encompassing-prior Bayes factors."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats
from scipy.integrate import quad

from bfnml.bayes_evidence import (
    bayes_factor,
    bayes_factor_jeffreys,
    bayes_factor_uniform,
    log_bayes_factor,
    max_constrained_weight,
    posterior_weight,
    sample_space_bayes_weights,
)
from bfnml.models import BinomialData, Boundary, DomainError, PriorFamily
from tests.property_settings import EXHAUSTIVE_SETTINGS, STANDARD_SETTINGS


def _exact_uniform_b01(n: int, y: int, z: Fraction) -> Fraction:
    """I_z(y+1, n−y+1) / z through P(Bin(n+1, z) ≥ y+1)."""
    m = n + 1
    mass = sum(math.comb(m, j) * z**j * (1 - z) ** (m - j) for j in range(y + 1, m + 1))
    return mass / z


class TestUniformPrior:
    def test_single_trial_closed_form(self):
        result = bayes_factor_uniform(BinomialData(1, 0), Boundary(0.5))
        assert result.b01 == pytest.approx(1.5, rel=1e-14)
        assert result.w0 == pytest.approx(0.6, rel=1e-14)
        assert result.prior is PriorFamily.UNIFORM

    def test_constrained_example_against_exact_sum(self):
        result = bayes_factor_uniform(BinomialData(25, 19), Boundary(0.8))
        expected = _exact_uniform_b01(25, 19, Fraction(4, 5))
        assert result.b01 == pytest.approx(float(expected), rel=1e-12)
        assert result.b01 < 1.0

    def test_symmetric_data_at_half_is_an_exact_tie(self):
        for n in (2, 10, 200):
            result = bayes_factor_uniform(BinomialData(n, n // 2), Boundary(0.5))
            assert result.log_b01 == 0.0
            assert result.w0 == 0.5

    def test_posterior_mass_above_is_complement(self):
        data, boundary = BinomialData(25, 19), Boundary(0.8)
        result = bayes_factor_uniform(data, boundary)
        below = result.b01 * boundary.z
        assert math.exp(result.log_posterior_mass_above) == pytest.approx(1 - below, rel=1e-12)

    @pytest.mark.parametrize("n", [1, 5, 30, 200])
    @pytest.mark.parametrize("z", [0.05, 0.3, 0.5, 0.95])
    def test_weight_bounded_by_one_over_one_plus_z(self, n, z):
        boundary = Boundary(z)
        weights = sample_space_bayes_weights(n, boundary)
        assert np.all(weights <= max_constrained_weight(boundary) + 1e-15)
        assert np.all(weights > 0.0)

    def test_weights_strictly_decrease_in_y(self):
        weights = sample_space_bayes_weights(20, Boundary(0.5))
        assert weights.shape == (21,)
        assert np.all(np.diff(weights) < 0)


class TestJeffreysPrior:
    def test_against_numerical_integration(self):
        z = 0.8
        posterior_mass, _ = quad(stats.beta(19.5, 6.5).pdf, 0.0, z, epsabs=0.0, epsrel=1e-12)
        prior_mass = 2 / math.pi * math.asin(math.sqrt(z))
        result = bayes_factor_jeffreys(BinomialData(25, 19), Boundary(z))
        assert result.b01 == pytest.approx(posterior_mass / prior_mass, rel=1e-8)
        assert result.prior is PriorFamily.JEFFREYS

    def test_symmetric_data_at_half_is_an_exact_tie(self):
        result = bayes_factor_jeffreys(BinomialData(30, 15), Boundary(0.5))
        assert result.log_b01 == 0.0

    def test_dispatch_by_prior_name(self):
        data, boundary = BinomialData(12, 4), Boundary(0.4)
        assert bayes_factor(data, boundary, "jeffreys") == bayes_factor_jeffreys(data, boundary)
        assert bayes_factor(data, boundary, PriorFamily.UNIFORM) == bayes_factor_uniform(data, boundary)


class TestVectorised:
    def test_matches_scalar_path(self):
        n, z = 40, 0.35
        log_b01, _ = log_bayes_factor(n, np.arange(n + 1), z)
        for y in (0, 7, 14, 40):
            expected = bayes_factor_uniform(BinomialData(n, y), Boundary(z)).log_b01
            assert log_b01[y] == pytest.approx(expected, rel=1e-14, abs=1e-15)

    def test_scalar_inputs_give_floats(self):
        log_b01, log_above = log_bayes_factor(10, 3, 0.5)
        assert isinstance(log_b01, float) and isinstance(log_above, float)

    @given(
        n=st.integers(min_value=1, max_value=300),
        z=st.floats(min_value=0.01, max_value=0.99),
        prior=st.sampled_from(list(PriorFamily)),
    )
    @STANDARD_SETTINGS
    def test_log_b01_is_finite_and_bounded(self, n, z, prior):
        log_b01, _ = log_bayes_factor(n, np.arange(n + 1), z, prior)
        assert np.all(np.isfinite(log_b01))
        if prior is PriorFamily.UNIFORM:
            assert np.all(log_b01 <= -math.log(z))


class TestPosteriorWeight:
    def test_logistic_in_log_b01(self):
        assert posterior_weight(0.0) == 0.5
        assert posterior_weight(math.log(3.0)) == pytest.approx(0.75, rel=1e-15)

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            posterior_weight(float("inf"))

    @given(
        n=st.integers(min_value=1, max_value=200),
        data=st.data(),
        z=st.floats(min_value=0.05, max_value=0.95),
        prior=st.sampled_from(list(PriorFamily)),
    )
    @EXHAUSTIVE_SETTINGS
    def test_weight_odds_equal_bayes_factor(self, n, data, z, prior):
        y = data.draw(st.integers(min_value=0, max_value=n))
        result = bayes_factor(BinomialData(n, y), Boundary(z), prior)
        assert result.w0 / (1 - result.w0) == pytest.approx(result.b01, rel=1e-12)

    def test_max_constrained_weight(self):
        assert max_constrained_weight(Boundary(0.5)) == pytest.approx(2 / 3)
