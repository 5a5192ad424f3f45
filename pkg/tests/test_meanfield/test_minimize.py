"""
Tests for projected descent, CSS minimization and gamma* estimates.
"""

import math

import numpy as np
import pytest

from config.exceptions import DivergenceError, ParameterDomainError
from meanfield import (
    ComplexField2D,
    CSSParams,
    Grid2D,
    PotentialSpec,
    gamma_star_estimate,
    minimize_css,
    projected_descent,
)
from meanfield.minimize import random_phase_field

HARMONIC = PotentialSpec("harmonic", coefficient=1.0)
PADDING = 1e-5


def wide_gaussian(grid, width=1.2):
    return ComplexField2D.from_function(
        grid, lambda x, y: np.exp(-0.5 * (x**2 + y**2) / width**2)
    ).normalized()


class TestProjectedDescent:
    """Test cases for the generic sphere-constrained descent."""

    def test_quadratic_objective(self, grid):
        """Test that <u, (-Laplacian + |x|^2) u> descends to its ground value 2."""
        V = grid.X**2 + grid.Y**2

        def objective(u):
            G = -grid.laplacian(u.values) + V * u.values
            return float(np.real(grid.inner(u.values, G))), G

        result = projected_descent(wide_gaussian(grid), objective, tol=1e-7, max_iter=1000)
        assert result.converged
        assert result.value == pytest.approx(2.0, rel=1e-8)
        assert result.field.mass() == pytest.approx(1.0, abs=1e-12)

    def test_history_is_monotone(self, grid):
        """Test that accepted steps never increase the objective."""
        V = grid.X**2 + grid.Y**2

        def objective(u):
            G = -grid.laplacian(u.values) + V * u.values
            return float(np.real(grid.inner(u.values, G))), G

        result = projected_descent(wide_gaussian(grid, 2.0), objective, tol=1e-7, max_iter=200)
        assert all(b <= a for a, b in zip(result.history, result.history[1:]))


class TestMinimizeCSS:
    """Test cases for CSS minimization."""

    def test_harmonic_ground_state(self, grid):
        """Test that the free harmonic problem converges to E = 2."""
        params = CSSParams(beta=0.0, gamma=0.0, potential=HARMONIC)
        result = minimize_css(params, wide_gaussian(grid), tol=1e-6, max_iter=2000, padding_tolerance=PADDING)
        assert result.converged
        assert result.energy.total == pytest.approx(2.0, rel=1e-8)
        assert result.residual < 1e-5

    def test_anyonic_energy_lies_above_bosonic(self, grid, rng):
        """Test that switching on beta raises the minimal energy."""
        bosonic = minimize_css(
            CSSParams(beta=0.0, gamma=0.0, potential=HARMONIC), wide_gaussian(grid), padding_tolerance=PADDING
        )
        start = random_phase_field(grid, rng, width=1.2)
        anyonic = minimize_css(
            CSSParams(beta=1.0, gamma=0.0, potential=HARMONIC), start, max_iter=400, padding_tolerance=PADDING
        )
        assert anyonic.energy.total > bosonic.energy.total
        assert anyonic.history[-1] <= anyonic.history[0]

    def test_strong_attraction_diverges(self, grid):
        """Test that an attractive quartic beyond gamma* without a trap is reported as divergent."""
        params = CSSParams(beta=0.0, gamma=-50.0)
        with pytest.raises(DivergenceError):
            minimize_css(params, wide_gaussian(grid, 1.0), max_iter=500)

    @pytest.mark.slow
    def test_self_dual_point_reaches_zero(self):
        """Test that beta = 2, gamma = -4 pi descends from a random start to zero energy."""
        grid = Grid2D(L=64.0, n=256)
        start = random_phase_field(grid, np.random.default_rng(4), width=2.0)
        params = CSSParams(beta=2.0, gamma=-4.0 * math.pi)
        result = minimize_css(params, start, tol=1e-8, max_iter=3000, padding_tolerance=5e-2)
        assert result.history[0] > 0.1
        assert result.energy.total == pytest.approx(0.0, abs=1e-3)


class TestGammaStar:
    """Test cases for gamma* estimates."""

    def test_negative_beta(self, grid):
        """Test that beta < 0 is rejected."""
        with pytest.raises(ParameterDomainError):
            gamma_star_estimate(-1.0, grid)

    @pytest.mark.slow
    def test_estimate_is_best_restart(self, grid):
        """Test that the estimate is the minimum over restarts and the spread their range."""
        result = gamma_star_estimate(0.0, grid, restarts=2, seed=5, max_iter=50)
        assert len(result.values) == 2
        assert result.estimate == min(result.values)
        assert result.spread == pytest.approx(max(result.values) - min(result.values))
        assert result.estimate > 0

    @pytest.mark.slow
    @pytest.mark.parametrize("beta", [2.0, 4.0])
    def test_even_beta_matches_linear_law(self, beta):
        """Test gamma*(beta) = 2 pi beta within 2% at even beta."""
        result = gamma_star_estimate(
            beta, Grid2D(L=64.0, n=256), restarts=2, seed=1, max_iter=300, padding_tolerance=1e-2
        )
        assert result.estimate == pytest.approx(2 * math.pi * beta, rel=0.02)
