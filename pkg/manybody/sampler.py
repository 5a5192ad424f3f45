"""
Random-walk Metropolis over |Psi|^2, vectorized across independent walkers.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from config.exceptions import ParameterDomainError, SamplerError
from twobody import AnyonPairParams, jastrow_f

from .condensate import Condensate
from .wavefunction import log_weight

logger = logging.getLogger(__name__)

TARGET_ACCEPTANCE = (0.3, 0.5)
TUNING_WINDOW = 50
MAX_INIT_REDRAWS = 100


@dataclass(frozen=True)
class SamplerSettings:
    walkers: int = 256
    burn_in: int = 10_000
    sweeps: int = 2_000
    measure_every: int = 1
    chains: int = 4
    seed: int = 0
    step: float | None = None

    def __post_init__(self) -> None:
        if min(self.walkers, self.chains, self.measure_every) < 1:
            raise ParameterDomainError("walkers, chains and measure_every must be positive")
        if self.burn_in < TUNING_WINDOW or self.sweeps < 1:
            raise ParameterDomainError(f"burn_in must be at least {TUNING_WINDOW} sweeps")
        if not 0 <= self.seed < 2**64:
            raise ParameterDomainError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class ChainStats:
    samples: int
    acceptance_rate: float
    burn_in: int
    block_length: int
    seed: int
    chain: int
    step: float


class MetropolisChain:
    """Single-particle moves; one sweep proposes a move for every particle of every walker."""

    def __init__(
        self,
        u: Condensate,
        params: AnyonPairParams,
        N: int,
        walkers: int,
        rng: np.random.Generator,
        step: float | None = None,
    ) -> None:
        if N < 2:
            raise ParameterDomainError("the chain needs N >= 2")
        self.u = u
        self.params = params
        self.N = N
        self.walkers = walkers
        self.rng = rng
        self.step = step if step is not None else 0.5 * u.support_radius / math.sqrt(N)
        self.positions: np.ndarray | None = None
        self.log_weights: np.ndarray | None = None
        self.proposed = 0
        self.accepted = 0

    def initialize(self, positions: np.ndarray | None = None) -> None:
        """Start from ``positions`` or from i.i.d. draws of |u|^2, redrawing zero-weight walkers."""
        if positions is not None:
            positions = np.array(positions, dtype=float)
            if positions.ndim == 2:
                positions = np.broadcast_to(positions, (self.walkers,) + positions.shape).copy()
            if positions.shape != (self.walkers, self.N, 2):
                raise ParameterDomainError("start positions must have shape (walkers, N, 2)")
            logw = log_weight(positions, self.u, self.params)
            if not np.all(np.isfinite(logw)):
                raise SamplerError("start configuration has zero weight")
        else:
            positions = self.u.sample(self.rng, (self.walkers, self.N))
            logw = log_weight(positions, self.u, self.params)
            for _ in range(MAX_INIT_REDRAWS):
                bad = ~np.isfinite(logw)
                if not bad.any():
                    break
                positions[bad] = self.u.sample(self.rng, (int(bad.sum()), self.N))
                logw[bad] = log_weight(positions[bad], self.u, self.params)
            else:
                raise SamplerError("could not draw a start configuration with non-zero weight")
        self.positions = positions
        self.log_weights = np.asarray(logw, dtype=float)

    def _pair_log_f(self, point: np.ndarray, others: np.ndarray) -> np.ndarray:
        r = np.hypot(*(others - point[:, None, :]).transpose(2, 0, 1))
        with np.errstate(divide="ignore"):
            return 2.0 * np.sum(np.log(jastrow_f(r, self.params)), axis=-1)

    def sweep(self) -> float:
        """One move attempt per particle; returns the acceptance fraction."""
        if self.positions is None:
            raise SamplerError("chain used before initialize()")
        accepted = 0
        index = np.arange(self.N)
        for i in range(self.N):
            old = self.positions[:, i, :]
            new = old + self.step * self.rng.normal(size=old.shape)
            others = self.positions[:, index != i, :]
            delta = 2.0 * (self.u.log_abs(new) - self.u.log_abs(old))
            delta += self._pair_log_f(new, others) - self._pair_log_f(old, others)
            with np.errstate(invalid="ignore"):
                accept = np.log(self.rng.uniform(size=self.walkers)) < delta
            accept &= np.isfinite(delta)
            self.positions[accept, i, :] = new[accept]
            self.log_weights[accept] += delta[accept]
            accepted += int(accept.sum())
        total = self.N * self.walkers
        self.proposed += total
        self.accepted += accepted
        return accepted / total

    def burn_in(self, sweeps: int) -> int:
        """Run ``sweeps`` sweeps, tuning the step until a window lands in the target band."""
        low, high = TARGET_ACCEPTANCE
        tuned = False
        done = 0
        while done < sweeps:
            window = [self.sweep() for _ in range(min(TUNING_WINDOW, sweeps - done))]
            done += len(window)
            if tuned:
                continue
            rate = float(np.mean(window))
            if low <= rate <= high:
                tuned = True
                logger.debug("step %.4g tuned to acceptance %.3f after %d sweeps", self.step, rate, done)
            else:
                self.step *= float(np.clip(rate / 0.4, 0.3, 2.0)) if rate > 0 else 0.3
        if not tuned:
            raise SamplerError(
                f"acceptance did not reach [{low}, {high}] within {sweeps} burn-in sweeps "
                f"(last step {self.step:.3g})"
            )
        self.proposed = self.accepted = 0
        return done

    def samples(self, sweeps: int, measure_every: int = 1) -> Iterator[np.ndarray]:
        """Yield a copy of the walker positions after every ``measure_every`` sweeps."""
        for k in range(1, sweeps + 1):
            self.sweep()
            if k % measure_every == 0:
                yield self.positions.copy()

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.proposed if self.proposed else 0.0


def chain_seeds(seed: int, chains: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(chains)


def metropolis_chain(
    u: Condensate,
    params: AnyonPairParams,
    N: int,
    settings: SamplerSettings,
    chain: int = 0,
    positions: np.ndarray | None = None,
) -> Iterator[np.ndarray]:
    """Burned-in sample stream of chain ``chain`` of ``settings``, shape (walkers, N, 2) per draw."""
    rng = np.random.default_rng(chain_seeds(settings.seed, chain + 1)[chain])
    sampler = MetropolisChain(u, params, N, settings.walkers, rng, step=settings.step)
    sampler.initialize(positions)
    sampler.burn_in(settings.burn_in)
    yield from sampler.samples(settings.sweeps, settings.measure_every)
