"""
Tests for condensate orbitals.
"""

import numpy as np
import pytest

from config.exceptions import ParameterDomainError
from manybody import GridCondensate, TruncatedGaussian, condensate_from_spec
from meanfield import Grid2D, PotentialSpec

HARMONIC = PotentialSpec("harmonic", coefficient=1.0)


class TestTruncatedGaussian:
    """Test cases for the analytic condensate."""

    def test_normalized(self, gaussian):
        """Test int |u|^2 = 1."""
        assert gaussian.power_integral(2) == pytest.approx(1.0, abs=1e-10)

    def test_default_width(self, gaussian):
        """Test that the width defaults to a third of the support radius."""
        assert gaussian.width == pytest.approx(1.0 / 3.0)

    def test_vanishes_outside_support(self, gaussian):
        """Test that u and its drift are zero beyond R1."""
        points = np.array([[1.0, 0.0], [0.8, 0.8], [2.0, -1.0]])
        assert np.all(gaussian.values(points) == 0.0)
        assert np.all(gaussian.drift(points) == 0.0)
        assert np.all(np.isneginf(gaussian.log_abs(points)))

    def test_drift_matches_log_derivative(self, gaussian):
        """Test grad u / u against central differences of log u."""
        h = 1e-6
        for x, y in [(0.1, 0.2), (-0.4, 0.3), (0.0, 0.7)]:
            drift = gaussian.drift(np.array([x, y]))

            def log_u(px, py):
                return float(np.log(gaussian.values(np.array([px, py]))))

            assert drift[0].real == pytest.approx((log_u(x + h, y) - log_u(x - h, y)) / (2 * h), rel=1e-6, abs=1e-8)
            assert drift[1].real == pytest.approx((log_u(x, y + h) - log_u(x, y - h)) / (2 * h), rel=1e-6, abs=1e-8)

    def test_samples_follow_density(self, gaussian, rng):
        """Test that the sample mean of |x|^2 matches int |x|^2 |u|^2."""
        points = gaussian.sample(rng, (100_000,))
        assert points.shape == (100_000, 2)
        r2 = np.sum(points**2, axis=1)
        assert np.all(r2 < 1.0)
        stderr = r2.std(ddof=1) / np.sqrt(r2.size)
        assert abs(r2.mean() - gaussian.potential_integral(HARMONIC)) < 5 * stderr

    def test_sup_norms(self, gaussian):
        """Test that the sup norm is the value at the origin."""
        assert gaussian.sup_norm() == pytest.approx(float(gaussian.values(np.zeros(2))))
        assert gaussian.gradient_sup_norm() > 0

    @pytest.mark.parametrize("kwargs", [{"support_radius": 0.0}, {"support_radius": 1.0, "width": -1.0}])
    def test_invalid(self, kwargs):
        """Test that non-positive radii and widths are rejected."""
        with pytest.raises(ParameterDomainError):
            TruncatedGaussian(**kwargs)


class TestGridCondensate:
    """Test cases for the interpolated grid condensate."""

    @pytest.fixture
    def interpolated(self, gaussian):
        grid = Grid2D(L=4.4, n=128)
        return GridCondensate(gaussian.to_field(grid), support_radius=1.0)

    def test_interpolates_values(self, gaussian, interpolated, rng):
        """Test that the splines reproduce the analytic orbital inside the support."""
        points = gaussian.sample(rng, (500,))
        assert np.allclose(
            interpolated.values(points).real, gaussian.values(points), atol=1e-3 * gaussian.sup_norm()
        )

    def test_potential_integral(self, gaussian, interpolated):
        """Test that grid integrals agree with the radial quadrature."""
        assert interpolated.potential_integral(HARMONIC) == pytest.approx(
            gaussian.potential_integral(HARMONIC), rel=1e-4
        )

    def test_samples_inside_support(self, interpolated, rng):
        """Test that every sample has non-zero weight."""
        points = interpolated.sample(rng, (2000,))
        assert np.all(interpolated.density(points) > 0)

    def test_to_field_on_own_grid(self, interpolated):
        """Test that the stored field is returned on its own grid."""
        assert interpolated.to_field(interpolated.field.grid) is interpolated.field


class TestCondensateFromSpec:
    """Test cases for building condensates from config values."""

    def test_truncated_gaussian(self):
        """Test the analytic kind."""
        u = condensate_from_spec("truncated-gaussian", support_radius=2.0, width=0.5)
        assert isinstance(u, TruncatedGaussian)
        assert u.support_radius == 2.0

    def test_grid_kind_needs_field(self):
        """Test that the grid kind requires a field."""
        with pytest.raises(ParameterDomainError):
            condensate_from_spec("grid-interpolated")

    def test_unknown_kind(self):
        """Test that unknown kinds are rejected."""
        with pytest.raises(ParameterDomainError):
            condensate_from_spec("hermite")
