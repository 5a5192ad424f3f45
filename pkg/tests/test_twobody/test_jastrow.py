"""
Tests for the Jastrow pair profile.
"""

import math

import numpy as np
import pytest
from scipy import integrate

from config.exceptions import ParameterDomainError
from tests.factories import AnyonPairParamsFactory
from twobody import (
    AnyonPairParams,
    drift_ratio,
    interior_value,
    jastrow_coefficients,
    jastrow_f,
    jastrow_log_derivative,
    jastrow_norm_defect,
    theta_profile,
)


class TestJastrowProfile:
    """Test cases for f and its coefficients."""

    @pytest.mark.parametrize("g", [0.0, 1.0, 2.0, 5.0])
    def test_continuity_at_R_and_b(self, g):
        """Test that f is continuous at R and equals one from b on."""
        params = AnyonPairParamsFactory(g=g)
        eps = 1e-12
        inside, outside = jastrow_f(np.array([params.R - eps, params.R + eps]), params)
        assert inside == pytest.approx(outside, abs=1e-9)
        assert inside == pytest.approx(interior_value(params), rel=1e-12)
        near_b = jastrow_f(np.array([params.b * (1 - 1e-12), params.b, 2 * params.b]), params)
        assert near_b == pytest.approx([1.0, 1.0, 1.0], abs=1e-9)

    def test_coefficients_match_profile(self, pair_params):
        """Test that lambda1 r^a + lambda2 r^-a reproduces f on the annulus."""
        c = jastrow_coefficients(pair_params)
        r = np.linspace(pair_params.R, pair_params.b, 7)[1:-1]
        a = pair_params.alpha
        expected = c.lambda1 * r**a + c.lambda2 * r ** (-a)
        assert jastrow_f(r, pair_params) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("g", [0.0, 0.5, 2.0, 10.0])
    def test_profile_bounded_by_one(self, g):
        """Test that 0 < f <= 1 for non-negative g."""
        params = AnyonPairParamsFactory(g=g)
        r = np.geomspace(1e-6, 1.0, 400)
        f = jastrow_f(r, params)
        assert np.all(f > 0)
        assert np.all(f <= 1.0 + 1e-14)

    def test_supersymmetric_coefficients(self):
        """Test that g = 2 removes the decaying branch."""
        params = AnyonPairParamsFactory(g=2.0)
        assert jastrow_coefficients(params).lambda2 == 0.0

    def test_zero_R_profile(self):
        """Test that R = 0 gives the pure power (r/b)^alpha."""
        params = AnyonPairParams(alpha=0.1, R=0.0, b=0.2, g=0.0)
        r = np.array([0.0, 0.01, 0.1])
        assert jastrow_f(r, params) == pytest.approx((r / 0.2) ** 0.1, abs=1e-15)

    def test_uniform_profile(self):
        """Test that the uniform Jastrow factor is identically one."""
        params = AnyonPairParams(alpha=0.1, R=0.5, b=0.2, g=0.0, uniform_jastrow=True)
        assert np.all(jastrow_f(np.linspace(0, 1, 11), params) == 1.0)
        with pytest.raises(ParameterDomainError):
            jastrow_coefficients(params)

    def test_negative_radius(self, pair_params):
        """Test that negative radii are rejected."""
        with pytest.raises(ParameterDomainError):
            jastrow_f(np.array([-0.1]), pair_params)

    def test_subnormal_R_is_finite(self):
        """Test that the profile stays finite when R underflows."""
        params = AnyonPairParams(alpha=0.05, R=0.0, b=0.01, g=1.0, log_R=-800.0)
        f = jastrow_f(np.geomspace(1e-300, 0.01, 50), params)
        assert np.all(np.isfinite(f))


class TestJastrowDerivatives:
    """Test cases for the drift and log-derivative."""

    def test_log_derivative_matches_finite_difference(self, pair_params):
        """Test f'/f against a central difference of log f on the annulus."""
        r = np.array([0.02, 0.05, 0.1, 0.15])
        h = 1e-7
        fd = (np.log(jastrow_f(r + h, pair_params)) - np.log(jastrow_f(r - h, pair_params))) / (2 * h)
        assert jastrow_log_derivative(r, pair_params) == pytest.approx(fd, rel=1e-6)

    def test_drift_vanishes_off_annulus(self, pair_params):
        """Test that the drift ratio is zero inside B(0, R) and beyond b."""
        r = np.array([0.0, 0.005, 0.25, 1.0])
        assert np.all(drift_ratio(r, pair_params) == 0.0)

    def test_drift_ratio_bounded(self, pair_params):
        """Test that |ratio| <= 1 on the annulus."""
        r = np.linspace(pair_params.R, pair_params.b, 100)
        assert np.all(np.abs(drift_ratio(r, pair_params)) <= 1.0)


class TestNormDefect:
    """Test cases for the closed form of int (1 - f^2)."""

    @pytest.mark.parametrize("g", [0.0, 1.0, 2.0, 4.0])
    def test_matches_quadrature(self, g):
        """Test the closed form against adaptive quadrature."""
        params = AnyonPairParamsFactory(g=g)

        def integrand(r):
            return 2 * math.pi * r * (1.0 - float(jastrow_f(r, params)) ** 2)

        inner, _ = integrate.quad(integrand, 0.0, params.R, epsabs=1e-14)
        outer, _ = integrate.quad(integrand, params.R, params.b, epsabs=1e-14, limit=200)
        assert jastrow_norm_defect(params) == pytest.approx(inner + outer, rel=1e-8)

    def test_zero_R(self):
        """Test the R = 0 closed form pi b^2 alpha / (1 + alpha)."""
        params = AnyonPairParams(alpha=0.1, R=0.0, b=0.2, g=0.0)
        assert jastrow_norm_defect(params) == pytest.approx(math.pi * 0.04 * 0.1 / 1.1)

    def test_alpha_zero(self):
        """Test that alpha = 0 has no defect."""
        params = AnyonPairParams(alpha=0.0, R=0.01, b=0.2, g=1.0)
        assert jastrow_norm_defect(params) == 0.0


class TestThetaProfile:
    """Test cases for the one-parameter profile."""

    def test_power_law_and_cap(self):
        """Test (r/b)^(alpha theta) below b and one beyond."""
        r = np.array([0.05, 0.1, 0.4])
        values = theta_profile(r, theta=2.0, alpha=0.1, b=0.2)
        assert values[:2] == pytest.approx((r[:2] / 0.2) ** 0.2)
        assert values[2] == 1.0

    def test_negative_theta(self):
        """Test that negative theta is rejected."""
        with pytest.raises(ParameterDomainError):
            theta_profile(0.1, theta=-1.0, alpha=0.1, b=0.2)
