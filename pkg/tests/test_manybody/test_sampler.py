"""
Tests for the Metropolis sampler.
"""

import numpy as np
import pytest
from scipy import stats

from config.exceptions import ParameterDomainError, SamplerError
from manybody import (
    MetropolisChain,
    SamplerSettings,
    log_weight,
    metropolis_chain,
    pair_quadrature_breakdown,
)
from meanfield import PotentialSpec

SMALL = SamplerSettings(walkers=16, burn_in=500, sweeps=20, chains=1, seed=7)


class TestSamplerSettings:
    """Test cases for sampler settings validation."""

    def test_defaults(self):
        """Test the default run lengths."""
        settings = SamplerSettings()
        assert settings.burn_in == 10_000
        assert settings.walkers == 256

    @pytest.mark.parametrize(
        "kwargs", [{"burn_in": 10}, {"walkers": 0}, {"seed": -1}, {"seed": 2**64}, {"sweeps": 0}]
    )
    def test_invalid(self, kwargs):
        """Test that invalid settings are rejected."""
        with pytest.raises(ParameterDomainError):
            SamplerSettings(**kwargs)


class TestMetropolisChain:
    """Test cases for the chain object."""

    def test_sweep_before_initialize(self, gaussian, pair_params, rng):
        """Test that sweeping an uninitialized chain fails."""
        chain = MetropolisChain(gaussian, pair_params, 3, 4, rng)
        with pytest.raises(SamplerError):
            chain.sweep()

    def test_bad_start_shape(self, gaussian, pair_params, rng):
        """Test that start positions must match (walkers, N, 2)."""
        chain = MetropolisChain(gaussian, pair_params, 3, 4, rng)
        with pytest.raises(ParameterDomainError):
            chain.initialize(np.zeros((4, 2, 2)))

    def test_zero_weight_start(self, gaussian, pair_params, rng):
        """Test that a start outside the support is rejected."""
        chain = MetropolisChain(gaussian, pair_params, 2, 4, rng)
        with pytest.raises(SamplerError):
            chain.initialize(np.array([[0.0, 0.0], [2.0, 0.0]]))

    def test_needs_two_particles(self, gaussian, pair_params, rng):
        """Test that N = 1 is rejected."""
        with pytest.raises(ParameterDomainError):
            MetropolisChain(gaussian, pair_params, 1, 4, rng)

    def test_walkers_keep_positive_weight(self, gaussian, pair_params, rng):
        """Test that accepted moves never leave the support."""
        chain = MetropolisChain(gaussian, pair_params, 4, 8, rng)
        chain.initialize()
        chain.burn_in(500)
        for positions in chain.samples(20):
            assert np.all(np.isfinite(log_weight(positions, gaussian, pair_params)))
        assert 0.0 < chain.acceptance_rate < 1.0

    def test_log_weights_track_positions(self, gaussian, pair_params, rng):
        """Test that incremental log weights match a fresh evaluation."""
        chain = MetropolisChain(gaussian, pair_params, 3, 8, rng)
        chain.initialize()
        for _ in range(30):
            chain.sweep()
        fresh = log_weight(chain.positions, gaussian, pair_params)
        assert np.allclose(chain.log_weights, fresh, rtol=1e-9, atol=1e-9)


class TestMetropolisChainStream:
    """Test cases for the generator interface."""

    def test_reproducible(self, gaussian, pair_params):
        """Test that the same seed gives the same stream."""
        a = list(metropolis_chain(gaussian, pair_params, 3, SMALL))
        b = list(metropolis_chain(gaussian, pair_params, 3, SMALL))
        assert len(a) == SMALL.sweeps
        assert all(np.array_equal(x, y) for x, y in zip(a, b))

    def test_chains_differ(self, gaussian, pair_params):
        """Test that chain indices draw from distinct streams."""
        a = next(metropolis_chain(gaussian, pair_params, 3, SMALL, chain=0))
        b = next(metropolis_chain(gaussian, pair_params, 3, SMALL, chain=1))
        assert not np.array_equal(a, b)

    def test_measure_every(self, gaussian, pair_params):
        """Test that thinning yields every k-th sweep."""
        settings = SamplerSettings(walkers=4, burn_in=500, sweeps=20, measure_every=5, chains=1)
        assert len(list(metropolis_chain(gaussian, pair_params, 2, settings))) == 4

    def test_zero_weight_start_is_lazy(self, gaussian, pair_params):
        """Test that a bad start raises when the stream is first advanced."""
        stream = metropolis_chain(
            gaussian, pair_params, 2, SMALL, positions=np.array([[0.0, 0.0], [3.0, 0.0]])
        )
        with pytest.raises(SamplerError):
            next(stream)


class TestStationaryDistribution:
    """Test cases for the law of the sampled configurations."""

    @pytest.mark.slow
    def test_pair_marginal_matches_quadrature(self, gaussian, pair_params):
        """Test a chi-square fit of the sampled x1 marginal against the N = 2 quadrature marginal."""
        edges = np.linspace(-1.0, 1.0, 9)
        oracle = pair_quadrature_breakdown(gaussian, pair_params, PotentialSpec("zero"))
        expected = oracle.marginal_histogram(edges).ravel() * (edges[1] - edges[0]) ** 2

        settings = SamplerSettings(walkers=256, burn_in=1000, sweeps=2000, measure_every=20, chains=1, seed=9)
        x1 = np.concatenate([positions[:, 0] for positions in metropolis_chain(gaussian, pair_params, 2, settings)])
        counts, _, _ = np.histogram2d(x1[:, 0], x1[:, 1], bins=[edges, edges])
        observed = counts.ravel()
        n = observed.sum()
        assert n == 100 * settings.walkers

        # pool sparse edge bins
        sparse = expected * n < 5
        pooled = expected[sparse].sum()
        if pooled > 0:
            observed = np.append(observed[~sparse], observed[sparse].sum())
            expected = np.append(expected[~sparse], pooled) * n
        else:
            observed, expected = observed[~sparse], expected[~sparse] * n
        statistic, pvalue = stats.chisquare(observed, expected * observed.sum() / expected.sum())
        assert pvalue > 1e-3, statistic
