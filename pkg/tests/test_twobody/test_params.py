"""
Tests for pair parameters and the scaling schedule.
"""

import math

import numpy as np
import pytest

from config.exceptions import ParameterDomainError, ScheduleRegimeWarning
from twobody import AnyonPairParams, RadialProfile, ScalingSchedule, schedule_params


class TestAnyonPairParams:
    """Test cases for the parameter domain."""

    def test_valid_params(self, pair_params):
        """Test that admissible parameters are accepted."""
        assert pair_params.alpha == 0.1
        assert not pair_params.R_is_zero
        assert pair_params.log_ratio == pytest.approx(math.log(0.05))

    @pytest.mark.parametrize("alpha", [-0.01, 0.25, 0.3])
    def test_alpha_out_of_range(self, alpha):
        """Test that alpha outside [0, 1/4) is rejected."""
        with pytest.raises(ParameterDomainError):
            AnyonPairParams(alpha=alpha, R=0.01, b=0.2, g=0.0)

    def test_R_not_below_b(self):
        """Test that R >= b is rejected unless the uniform profile is selected."""
        with pytest.raises(ParameterDomainError):
            AnyonPairParams(alpha=0.1, R=0.2, b=0.2, g=0.0)
        params = AnyonPairParams(alpha=0.1, R=0.3, b=0.2, g=0.0, uniform_jastrow=True)
        assert params.q == 1.0

    def test_zero_R_needs_zero_g(self):
        """Test that R = 0 is only allowed without the contact term."""
        AnyonPairParams(alpha=0.1, R=0.0, b=0.2, g=0.0)
        with pytest.raises(ParameterDomainError):
            AnyonPairParams(alpha=0.1, R=0.0, b=0.2, g=1.0)

    @pytest.mark.parametrize("field", ["b", "g"])
    def test_negative_values(self, field):
        """Test that negative b or g is rejected."""
        values = {"alpha": 0.1, "R": 0.01, "b": 0.2, "g": 1.0, field: -1.0}
        with pytest.raises(ParameterDomainError):
            AnyonPairParams(**values)

    def test_non_finite(self):
        """Test that NaN parameters are rejected."""
        with pytest.raises(ParameterDomainError):
            AnyonPairParams(alpha=float("nan"), R=0.01, b=0.2, g=0.0)

    def test_q_matches_power(self, pair_params):
        """Test that q equals (R/b)^(2 alpha)."""
        assert pair_params.q == pytest.approx((0.01 / 0.2) ** 0.2, rel=1e-14)

    def test_log_R_underflow(self):
        """Test that a log-space R far below the double range still gives a finite ratio."""
        params = AnyonPairParams(alpha=0.1, R=0.0, b=0.01, g=1.0, log_R=-5000.0)
        assert not params.R_is_zero
        assert params.q == 0.0
        assert params.q_underflow

    def test_with_alpha(self, pair_params):
        """Test that with_alpha keeps the other parameters."""
        other = pair_params.with_alpha(0.2)
        assert other.alpha == 0.2
        assert (other.R, other.b, other.g) == (pair_params.R, pair_params.b, pair_params.g)


class TestScalingSchedule:
    """Test cases for the N-dependent schedule."""

    def test_schedule_values(self):
        """Test alpha, log R, b and s along the schedule."""
        schedule = ScalingSchedule(N=11, beta=1.0, omega=0.5, g=1.0)
        assert schedule.alpha == pytest.approx(0.1)
        assert schedule.log_R == pytest.approx(-5.5)
        assert schedule.b_value == pytest.approx(11.0**-2.5)
        assert schedule.s == pytest.approx(1.0)

    def test_schedule_params(self):
        """Test that a regular schedule maps to annulus parameters."""
        params = schedule_params(ScalingSchedule(N=11, beta=1.0, omega=1.0, g=2.0))
        assert not params.uniform_jastrow
        assert params.alpha == pytest.approx(0.1)
        assert params.R == pytest.approx(math.exp(-11.0))
        assert params.q == pytest.approx(math.exp(2 * 0.1 * (-11.0 + 2.5 * math.log(11.0))))

    def test_omega_zero_falls_back_to_uniform(self):
        """Test that R >= b selects f = 1 and warns."""
        with pytest.warns(ScheduleRegimeWarning):
            params = schedule_params(ScalingSchedule(N=5, beta=0.5, omega=0.0))
        assert params.uniform_jastrow

    def test_small_b_exponent_warns(self):
        """Test that b exponents <= 2 are flagged."""
        with pytest.warns(ScheduleRegimeWarning):
            schedule_params(ScalingSchedule(N=5, beta=0.5, omega=2.0, b_exponent=2.0))

    def test_alpha_limit(self):
        """Test that beta/(N-1) >= 1/4 is rejected."""
        with pytest.raises(ParameterDomainError):
            schedule_params(ScalingSchedule(N=3, beta=0.5, omega=1.0))

    def test_large_N_keeps_log_R(self):
        """Test that R underflow is carried in log space."""
        params = schedule_params(ScalingSchedule(N=2000, beta=1.0, omega=1.0))
        assert params.R == 0.0
        assert params.log_R == pytest.approx(-2000.0)
        assert not params.R_is_zero


class TestRadialProfile:
    """Test cases for tabulated radial profiles."""

    def test_interpolation(self):
        """Test linear interpolation between nodes."""
        profile = RadialProfile(np.array([0.0, 1.0, 2.0]), np.array([0.0, 1.0, 0.0]))
        assert profile(0.5) == pytest.approx(0.5)
        assert profile(1.5) == pytest.approx(0.5)

    def test_non_increasing_nodes(self):
        """Test that unsorted nodes are rejected."""
        with pytest.raises(ParameterDomainError):
            RadialProfile(np.array([0.0, 2.0, 1.0]), np.zeros(3))
