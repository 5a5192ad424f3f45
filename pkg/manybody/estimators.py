"""
Monte Carlo estimators: energy breakdown, one-body density and norm ratio.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from collections.abc import Iterable

import numpy as np

from config.exceptions import ParameterDomainError
from meanfield.potential import PotentialSpec
from twobody import AnyonPairParams

from .condensate import Condensate
from .inequalities import product_inequality_holds
from .local_terms import TERMS, local_terms
from .sampler import ChainStats, MetropolisChain, SamplerSettings, chain_seeds
from .wavefunction import jastrow_squared

logger = logging.getLogger(__name__)

DENSITY_BATCHES = 10
# non-negative on every sample when g >= 0
NONNEGATIVE_TERMS = ("W", "Sdiag")


def integrated_autocorrelation(series: np.ndarray) -> float:
    """tau = 1 + 2 sum_t rho(t), summed over a window W doubled until W >= 5 tau."""
    x = np.asarray(series, dtype=float)
    n = x.size
    x = x - x.mean()
    var = float(np.dot(x, x)) / n
    if n < 4 or var == 0.0:
        return 1.0
    size = 1 << (2 * n - 1).bit_length()
    spectrum = np.fft.rfft(x, size)
    acf = np.fft.irfft(spectrum * np.conj(spectrum), size)[:n] / (var * n)
    window = 1
    tau = 1.0
    while window < n:
        tau = 1.0 + 2.0 * float(np.sum(acf[1 : window + 1]))
        if window >= 5.0 * tau:
            break
        window *= 2
    return max(tau, 1.0)


def block_length(series: np.ndarray) -> int:
    return max(1, math.ceil(2.0 * integrated_autocorrelation(series)))


def block_means(series: np.ndarray, length: int) -> np.ndarray:
    count = series.size // length
    if count == 0:
        return np.array([series.mean()])
    return series[: count * length].reshape(count, length).mean(axis=1)


@dataclass(frozen=True)
class TermEstimate:
    mean: float
    stderr: float

    @property
    def relative_error(self) -> float:
        return abs(self.stderr / self.mean) if self.mean else 0.0


def blocked_estimate(chains: list[np.ndarray]) -> tuple[TermEstimate, int]:
    """Pool block means over chains; the block length is the largest per-chain estimate."""
    length = max(block_length(s) for s in chains)
    means = np.concatenate([block_means(s, length) for s in chains])
    mean = float(np.mean(np.concatenate(chains)))
    if means.size < 2:
        return TermEstimate(mean, math.inf), length
    return TermEstimate(mean, float(np.std(means, ddof=1) / math.sqrt(means.size))), length


@dataclass(frozen=True)
class EnergyBreakdown:
    K: TermEstimate
    V: TermEstimate
    W: TermEstimate
    Sdiag: TermEstimate
    S3body: TermEstimate
    J: TermEstimate
    total: TermEstimate
    chains: list[ChainStats] = field(default_factory=list)
    flagged: tuple[str, ...] = ()
    rao_blackwell: bool = False
    minima: dict[str, float] = field(default_factory=dict)
    configurations: int = 0
    product_violations: int = 0

    def term(self, name: str) -> TermEstimate:
        return getattr(self, name)

    def as_dict(self) -> dict[str, TermEstimate]:
        return {name: self.term(name) for name in TERMS + ("total",)}


def _run_chain(task: tuple) -> dict:
    u, params, N, potential, settings, seed_seq, chain_index, rao_blackwell = task
    rng = np.random.default_rng(seed_seq)
    chain = MetropolisChain(u, params, N, settings.walkers, rng, step=settings.step)
    chain.initialize()
    chain.burn_in(settings.burn_in)
    series = {name: [] for name in TERMS}
    minima = {name: math.inf for name in NONNEGATIVE_TERMS}
    configurations = violations = 0
    for positions in chain.samples(settings.sweeps, settings.measure_every):
        terms = local_terms(positions, u, params, potential, rao_blackwell=rao_blackwell)
        for name in TERMS:
            series[name].append(float(np.mean(terms[name])))
        for name in NONNEGATIVE_TERMS:
            minima[name] = min(minima[name], float(np.min(terms[name])))
        holds = product_inequality_holds(positions, params)
        configurations += holds.size
        violations += int(np.count_nonzero(~holds))
    return {
        "series": {name: np.asarray(values) for name, values in series.items()},
        "minima": minima,
        "configurations": configurations,
        "violations": violations,
        "acceptance": chain.acceptance_rate,
        "step": chain.step,
        "chain": chain_index,
    }


def estimate_energy(
    u: Condensate,
    params: AnyonPairParams,
    N: int,
    potential: PotentialSpec,
    settings: SamplerSettings,
    rao_blackwell: bool = False,
    relative_error_ceiling: float = 0.25,
    workers: int = 1,
) -> EnergyBreakdown:
    """Per-particle energy terms averaged over ``settings.chains`` independent chains.

    Chains get disjoint seed streams spawned from ``settings.seed`` and are
    reduced in chain order, so the result does not depend on ``workers``.
    """
    seeds = chain_seeds(settings.seed, settings.chains)
    tasks = [(u, params, N, potential, settings, s, k, rao_blackwell) for k, s in enumerate(seeds)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            results = list(pool.map(_run_chain, tasks))
    else:
        results = [_run_chain(task) for task in tasks]
    results.sort(key=lambda item: item["chain"])

    estimates = {}
    lengths = []
    for name in TERMS:
        estimates[name], length = blocked_estimate([res["series"][name] for res in results])
        lengths.append(length)
    totals = [sum(res["series"][name] for name in TERMS) for res in results]
    total, length = blocked_estimate(totals)
    lengths.append(length)

    stats = [
        ChainStats(
            samples=int(res["series"]["K"].size * settings.walkers),
            acceptance_rate=res["acceptance"],
            burn_in=settings.burn_in,
            block_length=max(lengths),
            seed=settings.seed,
            chain=res["chain"],
            step=res["step"],
        )
        for res in results
    ]
    flagged = tuple(
        name
        for name in TERMS
        if estimates[name].mean != 0.0 and estimates[name].relative_error > relative_error_ceiling
    )
    minima = {name: min(res["minima"][name] for res in results) for name in NONNEGATIVE_TERMS}
    configurations = sum(res["configurations"] for res in results)
    violations = sum(res["violations"] for res in results)
    if violations:
        logger.warning("product inequality fails on %d of %d configurations", violations, configurations)
    if flagged:
        logger.warning("relative error above %.3g for terms %s", relative_error_ceiling, ", ".join(flagged))
    logger.info("N=%d energy per particle %.8g +- %.3g", N, total.mean, total.stderr)
    return EnergyBreakdown(
        total=total, chains=stats, flagged=flagged, rao_blackwell=rao_blackwell,
        minima=minima, configurations=configurations, product_violations=violations, **estimates,
    )


@dataclass(frozen=True)
class DensityEstimate:
    edges: np.ndarray = field(repr=False)
    histogram: np.ndarray = field(repr=False)
    reference: np.ndarray = field(repr=False)
    l1: float
    l1_stderr: float
    noise_floor: float
    binning_error: float
    samples: int


def bin_averaged_density(u: Condensate, edges: np.ndarray, order: int = 4) -> np.ndarray:
    """Average of |u|^2 over each square bin by tensor Gauss-Legendre."""
    x, w = np.polynomial.legendre.leggauss(order)
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    pts = 0.5 * (hi + lo)[:, None] + half[:, None] * x[None, :]
    X = pts[:, None, :, None]
    Y = pts[None, :, None, :]
    values = u.density(np.stack(np.broadcast_arrays(X, Y), axis=-1))
    return 0.25 * np.einsum("ijab,a,b->ij", values, w, w)


def estimate_density(
    samples: Iterable[np.ndarray],
    u: Condensate,
    bins: int = 32,
    batches: int = DENSITY_BATCHES,
    predicted_bound: float | None = None,
) -> DensityEstimate:
    """Normalized histogram of all particle positions and its L1 distance to |u|^2.

    The noise floor is the L1 distance expected from sampling noise alone,
    estimated from ``batches`` contiguous sub-histograms.
    """
    R1 = u.support_radius
    edges = np.linspace(-R1, R1, bins + 1)
    area = (edges[1] - edges[0]) ** 2
    chunks = [np.asarray(s, dtype=float).reshape(-1, 2) for s in samples]
    if not chunks:
        raise ParameterDomainError("estimate_density needs samples")
    groups = np.array_split(np.arange(len(chunks)), min(batches, len(chunks)))
    reference = bin_averaged_density(u, edges)

    def histogram(points: np.ndarray) -> np.ndarray:
        counts, _, _ = np.histogram2d(points[:, 0], points[:, 1], bins=[edges, edges])
        return counts / (points.shape[0] * area)

    batch_counts = []
    batch_l1 = []
    for group in groups:
        points = np.concatenate([chunks[k] for k in group])
        h = histogram(points)
        batch_counts.append((h, points.shape[0]))
        batch_l1.append(float(np.sum(np.abs(h - reference)) * area))
    total = sum(n for _, n in batch_counts)
    hist = sum(h * n for h, n in batch_counts) / total
    l1 = float(np.sum(np.abs(hist - reference)) * area)
    B = len(batch_l1)
    l1_batches = np.asarray(batch_l1)
    stderr = float(np.std(l1_batches, ddof=1) / math.sqrt(B)) if B > 1 else math.inf
    noise_floor = float(np.mean(l1_batches) / math.sqrt(B))

    centers = 0.5 * (edges[1:] + edges[:-1])
    midpoint = u.density(np.stack(np.meshgrid(centers, centers, indexing="ij"), axis=-1))
    binning_error = float(np.sum(np.abs(reference - midpoint)) * area)
    if predicted_bound is not None and binning_error > predicted_bound:
        logger.warning(
            "binning error %.3g exceeds the predicted density bound %.3g; use more bins",
            binning_error,
            predicted_bound,
        )
    return DensityEstimate(
        edges=edges,
        histogram=hist,
        reference=reference,
        l1=l1,
        l1_stderr=stderr,
        noise_floor=noise_floor,
        binning_error=binning_error,
        samples=total,
    )


def estimate_norm_ratio(
    u: Condensate,
    params: AnyonPairParams,
    N: int,
    samples: int = 100_000,
    seed: int = 0,
    chunk: int = 10_000,
) -> TermEstimate:
    """E[F^2] over i.i.d. configurations from |Phi|^2, i.e. ||F Phi||^2 / ||Phi||^2."""
    if N < 2:
        raise ParameterDomainError("N must be at least 2")
    if params.alpha == 0.0 or params.uniform_jastrow:
        return TermEstimate(1.0, 0.0)
    rng = np.random.default_rng(seed)
    values = []
    left = samples
    while left > 0:
        size = min(chunk, left)
        values.append(jastrow_squared(u.sample(rng, (size, N)), params))
        left -= size
    F2 = np.concatenate(values)
    return TermEstimate(float(F2.mean()), float(F2.std(ddof=1) / math.sqrt(F2.size)))
