"""
Tests for the N = 2 quadrature oracle and the predicted main terms.
"""

import numpy as np
import pytest

from config.exceptions import ParameterDomainError
from manybody import (
    TERMS,
    SamplerSettings,
    density_bound,
    estimate_energy,
    pair_quadrature_breakdown,
    predicted_main_terms,
    predicted_norm_ratio,
    sdiag_error_scale,
)
from manybody.local_terms import radial_rule
from manybody.predictions import default_prediction_grid, singular_coefficient
from meanfield import PotentialSpec
from twobody import AnyonPairParams, jastrow_norm_defect

HARMONIC = PotentialSpec("harmonic", coefficient=1.0)
BOSONIC = AnyonPairParams(alpha=0.0, R=0.01, b=0.2, g=0.0)


class TestRadialRule:
    """Test cases for the split radial quadrature."""

    def test_integrates_power_law(self, pair_params):
        """Test int_0^2 r dr and int_R^2 dr / r on the split rule."""
        r, w = radial_rule(pair_params, 2.0)
        assert np.sum(w * r) == pytest.approx(2.0, rel=1e-12)
        outside = r > pair_params.R
        assert np.sum(w[outside] / r[outside]) == pytest.approx(np.log(2.0 / pair_params.R), rel=1e-10)

    def test_needs_positive_R(self):
        """Test that anyonic pairs with R = 0 are rejected."""
        with pytest.raises(ParameterDomainError):
            radial_rule(AnyonPairParams(alpha=0.1, R=0.0, b=0.2, g=0.0), 2.0)


class TestPairQuadrature:
    """Test cases for the deterministic N = 2 breakdown."""

    def test_bosonic_pair(self, gaussian):
        """Test that alpha = 0 gives the one-body integrals and unit norm."""
        result = pair_quadrature_breakdown(gaussian, BOSONIC, HARMONIC)
        assert result.terms["K"] == pytest.approx(gaussian.kinetic_integral(), rel=1e-3)
        assert result.terms["V"] == pytest.approx(gaussian.potential_integral(HARMONIC), rel=1e-3)
        assert result.terms["Sdiag"] == 0.0
        assert result.norm_ratio == 1.0

    def test_anyonic_norm_ratio(self, gaussian):
        """Test that the norm ratio matches its leading-order prediction."""
        params = AnyonPairParams(alpha=0.1, R=0.01, b=0.1, g=1.0)
        result = pair_quadrature_breakdown(gaussian, params, HARMONIC)
        assert result.norm_ratio < 1.0
        assert result.norm_ratio == pytest.approx(predicted_norm_ratio(gaussian, params, 2), rel=5e-3)
        assert result.total == pytest.approx(sum(result.terms.values()))

    def test_marginal_histogram_is_normalized(self, gaussian):
        """Test that the marginal of x1 integrates to one over the support box."""
        result = pair_quadrature_breakdown(gaussian, BOSONIC, HARMONIC, centre_nodes=24)
        edges = np.linspace(-1.0, 1.0, 17)
        hist = result.marginal_histogram(edges)
        assert hist.sum() * (edges[1] - edges[0]) ** 2 == pytest.approx(1.0)

    @pytest.mark.slow
    def test_monte_carlo_agrees_with_oracle(self, gaussian, pair_params):
        """Test that every sampled N = 2 term agrees with the oracle within 3 sigma."""
        oracle = pair_quadrature_breakdown(gaussian, pair_params, HARMONIC)
        settings = SamplerSettings(walkers=64, burn_in=1000, sweeps=2000, chains=2, seed=2)
        mc = estimate_energy(gaussian, pair_params, 2, HARMONIC, settings, rao_blackwell=True)
        assert oracle.terms["S3body"] == pytest.approx(0.0, abs=1e-10)
        for name in TERMS:
            term = mc.term(name)
            expected = oracle.terms[name]
            assert abs(term.mean - expected) <= 3 * term.stderr + 1e-3 * abs(expected) + 1e-10, name
        assert mc.total.mean == pytest.approx(oracle.total, abs=3 * mc.total.stderr + 1e-3 * abs(oracle.total))


class TestPredictions:
    """Test cases for predicted main terms and bounds."""

    def test_bosonic_main_terms(self, gaussian):
        """Test that alpha = 0 leaves only kinetic and trap terms."""
        terms = predicted_main_terms(gaussian, BOSONIC, 10, HARMONIC)
        assert terms.K == pytest.approx(gaussian.kinetic_integral())
        assert terms.V == pytest.approx(gaussian.potential_integral(HARMONIC))
        assert (terms.W, terms.Sdiag, terms.S3body, terms.J) == (0.0, 0.0, 0.0, 0.0)
        assert terms.total == pytest.approx(terms.K + terms.V)

    def test_real_condensate_has_no_current(self, gaussian, pair_params):
        """Test that J vanishes for a real orbital while S_3body grows with beta^2."""
        small = predicted_main_terms(gaussian, pair_params, 5, HARMONIC)
        large = predicted_main_terms(gaussian, pair_params, 9, HARMONIC)
        assert small.J == pytest.approx(0.0, abs=1e-10)
        assert small.S3body > 0
        assert large.S3body == pytest.approx(4.0 * small.S3body, rel=1e-12)

    def test_singular_coefficient(self, pair_params):
        """Test that the annulus coefficient is positive and vanishes without statistics."""
        assert singular_coefficient(pair_params) > 0
        assert singular_coefficient(BOSONIC) == 0.0

    def test_default_grid_holds_support(self, gaussian):
        """Test that the support lies in the central half of the prediction box."""
        grid = default_prediction_grid(gaussian)
        assert grid.L / 4 > gaussian.support_radius

    def test_norm_prediction(self, gaussian, pair_params):
        """Test 1 - N(N-1)/2 int(1 - f^2) int |u|^4."""
        N = 6
        expected = 1 - 15 * jastrow_norm_defect(pair_params) * gaussian.power_integral(4)
        assert predicted_norm_ratio(gaussian, pair_params, N) == pytest.approx(expected)
        assert predicted_norm_ratio(gaussian, BOSONIC, N) == 1.0

    def test_bounds_scale(self, gaussian, pair_params):
        """Test that the bounds are positive and grow with N."""
        assert sdiag_error_scale(gaussian, pair_params, 10) > sdiag_error_scale(gaussian, pair_params, 5) > 0
        beta = pair_params.alpha * 7
        expected = 2.0 * beta * 8 * pair_params.b**2 * gaussian.power_integral(4)
        assert density_bound(gaussian, pair_params, 8) == pytest.approx(expected)
