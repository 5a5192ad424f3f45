"""
Experiment drivers.

Each driver takes a validated config and a ``LabContext`` and yields
``Record`` objects one at a time, so the caller can persist what was produced
before an error interrupts the run.
"""

from __future__ import annotations

import logging
import math
import time
import warnings
from collections.abc import Iterator
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from config.exceptions import ParameterDomainError, ScheduleRegimeWarning
from manybody import (
    TERMS,
    condensate_from_spec,
    density_bound,
    estimate_density,
    estimate_energy,
    estimate_norm_ratio,
    metropolis_chain,
    pair_quadrature_breakdown,
    predicted_main_terms,
    predicted_norm_ratio,
    sdiag_error_scale,
)
from manybody.condensate import Condensate
from manybody.predictions import default_prediction_grid
from manybody.sampler import SamplerSettings
from meanfield import (
    ComplexField2D,
    CSSParams,
    Grid2D,
    PolynomialPair,
    PotentialSpec,
    css_energy,
    el_residual,
    gamma_star_estimate,
    hardy_check,
    load_field,
    minimize_css,
    nll_state,
    save_field,
)
from meanfield.minimize import random_phase_field
from meanfield.nll import degree_one_exterior, random_state
from twobody import (
    AnyonPairParams,
    ScalingSchedule,
    coupling_G,
    finite_coupling,
    optimize_theta,
    scattering_energy_closed,
    scattering_energy_numeric,
    schedule_params,
)

from .records import Record, within

logger = logging.getLogger(__name__)

SIGMA_WINDOW = 3.0
ERROR_CONSTANT = 10.0
COUPLING_TOLERANCE = 1e-10
# |G(s, g) - coth(s/2)| <= 2 coth(s/2)^2 / g for large g
LARGE_G = 1e10
S_INFINITY = 50.0
ZERO_ENERGY_TOLERANCE = 1e-3


@dataclass(frozen=True)
class LabContext:
    seed: int
    code_version: str
    out_dir: Path
    lab: dict

    @property
    def workers(self) -> int:
        return self.lab["WORKERS"]

    def record(self, experiment: str, term: str, measured: float, **kwargs) -> Record:
        return Record(
            experiment=experiment,
            term=term,
            measured=float(measured),
            seed=self.seed,
            code_version=self.code_version,
            **kwargs,
        )


def point_seed(seed: int, index: int) -> int:
    """Independent 64-bit seed for experiment point ``index``."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def sampler_settings(section: dict, lab: dict, seed: int) -> SamplerSettings:
    return SamplerSettings(
        walkers=section.get("walkers", lab["WALKERS"]),
        burn_in=section.get("burn_in", lab["BURN_IN_SWEEPS"]),
        sweeps=section["sweeps"],
        measure_every=section["measure_every"],
        chains=section.get("chains", lab["CHAINS"]),
        seed=seed,
        step=section["step"],
    )


def build_condensate(section: dict) -> Condensate:
    field = load_field(section["field"]) if section["kind"] == "grid-interpolated" else None
    return condensate_from_spec(
        section["kind"],
        support_radius=section["support_radius"],
        width=section["width"],
        field=field,
    )


def build_grid(section: dict, lab: dict) -> Grid2D:
    return Grid2D(L=section["L"], n=section["n"] or lab["GRID_SIZE"])


def pair_parameters(params: AnyonPairParams) -> dict:
    return {
        "alpha": params.alpha,
        "R": params.R,
        "log_R": None if params.R_is_zero else params.log_ratio + math.log(params.b),
        "b": params.b,
        "g": params.g,
        "uniform_jastrow": params.uniform_jastrow,
    }


# -- two-body ---------------------------------------------------------------


def coupling_checks(ctx: LabContext, g_values: list[float]) -> Iterator[Record]:
    """Special values of G(s, g)."""
    for g in g_values:
        yield ctx.record(
            "coupling", "G", coupling_G(0.0, g), predicted=g / 2.0, tolerance=COUPLING_TOLERANCE,
            passed=within(coupling_G(0.0, g), g / 2.0, COUPLING_TOLERANCE), parameters={"s": 0.0, "g": g},
        )
        value = coupling_G(S_INFINITY, g)
        yield ctx.record(
            "coupling", "G", value, predicted=1.0, tolerance=COUPLING_TOLERANCE,
            passed=within(value, 1.0, COUPLING_TOLERANCE), parameters={"s": S_INFINITY, "g": g},
        )
    rng = np.random.default_rng(ctx.seed)
    for s in np.sort(rng.uniform(0.0, 20.0, size=20)):
        value = coupling_G(float(s), 2.0)
        yield ctx.record(
            "coupling", "G", value, predicted=1.0, tolerance=COUPLING_TOLERANCE,
            passed=within(value, 1.0, COUPLING_TOLERANCE), parameters={"s": float(s), "g": 2.0},
        )
    for s in (0.1, 0.5, 1.0, 2.0, 5.0):
        sub = coupling_G(s, 0.0)
        yield ctx.record(
            "coupling", "G", sub, predicted=math.tanh(s / 2.0), tolerance=COUPLING_TOLERANCE,
            passed=within(sub, math.tanh(s / 2.0), COUPLING_TOLERANCE), parameters={"s": s, "g": 0.0},
        )
        sup = coupling_G(s, LARGE_G)
        coth = 1.0 / math.tanh(s / 2.0)
        tolerance = COUPLING_TOLERANCE + 4.0 * coth**2 / LARGE_G
        yield ctx.record(
            "coupling", "G", sup, predicted=coth, tolerance=tolerance,
            passed=within(sup, coth, tolerance), parameters={"s": s, "g": LARGE_G},
        )
    # exploratory: inf over theta of G~ against 2G, no verdict
    for g in g_values:
        for s in (0.5, 2.0, 5.0):
            best = optimize_theta(s, g)
            yield ctx.record(
                "coupling", "Gtilde_min", best.value, predicted=2.0 * float(coupling_G(s, g)),
                parameters={"s": s, "g": g, "theta": best.theta},
            )


def run_twobody(cfg: dict, ctx: LabContext) -> Iterator[Record]:
    """Radial two-body energies against their analytic bracket."""
    b = cfg["b"]
    for alpha in cfg["alphas"]:
        for ratio in cfg["r_over_b"]:
            for g in cfg["g"]:
                params = AnyonPairParams(alpha=alpha, R=ratio * b, b=b, g=g)
                start = time.perf_counter()
                solution = scattering_energy_numeric(
                    params, mesh_points=cfg["mesh_points"], strict=cfg["strict"]
                )
                closed = scattering_energy_closed(params)
                lo, hi = solution.bracket
                yield ctx.record(
                    "twobody",
                    "E2",
                    solution.energy,
                    stderr=solution.error,
                    predicted=closed,
                    tolerance=max(closed - lo, hi - closed) + solution.error,
                    passed=solution.bracket_ok,
                    parameters={"alpha": alpha, "R_over_b": ratio, "b": b, "g": g, "bracket": [lo, hi]},
                    wall_time=time.perf_counter() - start,
                )
    if cfg["coupling_checks"]:
        yield from coupling_checks(ctx, cfg["g"])


# -- many-body --------------------------------------------------------------


def _density_record(
    ctx: LabContext,
    experiment: str,
    u: Condensate,
    params: AnyonPairParams,
    N: int,
    settings: SamplerSettings,
    bins: int,
    parameters: dict,
) -> Record:
    start = time.perf_counter()
    bound = density_bound(u, params, N)
    stream = metropolis_chain(u, params, N, settings)
    density = estimate_density(stream, u, bins=bins, predicted_bound=ERROR_CONSTANT * bound)
    allowed = ERROR_CONSTANT * bound + density.binning_error + density.noise_floor
    return ctx.record(
        experiment,
        "density_l1",
        density.l1,
        stderr=density.l1_stderr,
        predicted_limit=0.0,
        tolerance=allowed + SIGMA_WINDOW * density.l1_stderr,
        passed=bool(density.l1 <= allowed + SIGMA_WINDOW * density.l1_stderr),
        N=N,
        parameters={
            **parameters,
            "noise_floor": density.noise_floor,
            "binning_error": density.binning_error,
            "bound": bound,
            "samples": density.samples,
        },
        wall_time=time.perf_counter() - start,
    )


def run_vmc(cfg: dict, ctx: LabContext) -> Iterator[Record]:
    """Energy breakdown at one N against the main terms, or the quadrature oracle at N = 2."""
    u = build_condensate(cfg["condensate"])
    potential = PotentialSpec(**cfg["potential"])
    params = AnyonPairParams(alpha=cfg["alpha"], R=cfg["R"], b=cfg["b"], g=cfg["g"])
    N = cfg["N"]
    settings = sampler_settings(cfg["sampler"], ctx.lab, ctx.seed)
    parameters = {**pair_parameters(params), "N": N, "beta": params.alpha * (N - 1)}

    start = time.perf_counter()
    breakdown = estimate_energy(
        u, params, N, potential, settings,
        rao_blackwell=cfg["rao_blackwell"],
        relative_error_ceiling=ctx.lab["RELATIVE_ERROR_CEILING"],
        workers=ctx.workers,
    )
    elapsed = time.perf_counter() - start
    parameters["acceptance"] = [chain.acceptance_rate for chain in breakdown.chains]
    parameters["block_length"] = breakdown.chains[0].block_length
    parameters["flagged"] = list(breakdown.flagged)
    main = predicted_main_terms(u, params, N, potential)
    oracle = pair_quadrature_breakdown(u, params, potential) if cfg["quadrature"] else None

    for name in TERMS + ("total",):
        estimate = breakdown.term(name)
        limit = main.total if name == "total" else main.as_dict()[name]
        predicted, tolerance, passed = None, None, None
        if oracle is not None:
            predicted = oracle.total if name == "total" else oracle.terms[name]
            tolerance = SIGMA_WINDOW * estimate.stderr
            passed = within(estimate.mean, predicted, tolerance)
        elif name == "Sdiag":
            predicted = limit
            tolerance = SIGMA_WINDOW * estimate.stderr + sdiag_error_scale(u, params, N)
            passed = within(estimate.mean, predicted, tolerance)
        if name in ("W", "Sdiag") and params.g >= 0 and estimate.mean < 0:
            passed = False
        yield ctx.record(
            "vmc", name, estimate.mean, stderr=estimate.stderr, predicted=predicted,
            predicted_limit=limit, tolerance=tolerance, passed=passed, N=N,
            parameters=parameters, wall_time=elapsed,
        )

    samples = {**pair_parameters(params), "N": N, "configurations": breakdown.configurations}
    for name, minimum in breakdown.minima.items():
        passed = minimum >= 0.0 if name == "Sdiag" or params.g >= 0 else None
        yield ctx.record(
            "vmc", f"{name}_min", minimum, predicted=0.0, passed=passed, N=N, parameters=samples,
        )
    yield ctx.record(
        "vmc", "product_violations", breakdown.product_violations, predicted=0.0, tolerance=0.0,
        passed=breakdown.product_violations == 0, N=N, parameters=samples,
    )

    norm = estimate_norm_ratio(u, params, N, samples=cfg["norm_samples"], seed=ctx.seed)
    if oracle is not None:
        predicted = oracle.norm_ratio
        tolerance = SIGMA_WINDOW * norm.stderr
    else:
        predicted = predicted_norm_ratio(u, params, N)
        tolerance = SIGMA_WINDOW * norm.stderr + ERROR_CONSTANT * density_bound(u, params, N) ** 2
    yield ctx.record(
        "vmc", "norm_ratio", norm.mean, stderr=norm.stderr, predicted=predicted, predicted_limit=1.0,
        tolerance=tolerance, passed=within(norm.mean, predicted, tolerance), N=N,
        parameters=pair_parameters(params),
    )
    yield _density_record(ctx, "vmc", u, params, N, settings, cfg["density_bins"], pair_parameters(params))


def run_convergence(cfg: dict, ctx: LabContext) -> Iterator[Record]:
    """Energy per particle along a scaling schedule against the CSS functional.

    The quartic coupling of the prediction is 2 pi beta times the finite-(R, b)
    two-body ratio; the limiting coupling 2 pi beta G(2 beta omega, g) fills
    the ``predicted_limit`` column.
    """
    kind = cfg["kind"]
    if kind == "nll-suite":
        yield from run_nll(cfg["nll"], ctx)
        return
    if kind == "gammastar-scan":
        yield from run_gammastar(cfg["gammastar"], ctx)
        return

    schedule_cfg = cfg["schedule"]
    beta = schedule_cfg["beta"]
    u = build_condensate(cfg["condensate"])
    potential = PotentialSpec(**cfg["potential"])
    grid = build_grid(cfg["grid"], ctx.lab) if "grid" in cfg else default_prediction_grid(u, ctx.lab["GRID_SIZE"])
    field = u.to_field(grid)
    base = css_energy(field, CSSParams(beta=beta, gamma=0.0, potential=potential), ctx.lab["PADDING_TOLERANCE"])

    index = 0
    for g in schedule_cfg["g"]:
        for omega in schedule_cfg["omega"]:
            for N in sorted(schedule_cfg["N"]):
                schedule = ScalingSchedule(
                    N=N, beta=beta, omega=omega, g=g,
                    b_exponent=schedule_cfg["b_exponent"], b=schedule_cfg["b"],
                )
                with warnings.catch_warnings(record=True) as caught:
                    warnings.simplefilter("always", ScheduleRegimeWarning)
                    params = schedule_params(schedule)
                flags = [str(w.message) for w in caught if issubclass(w.category, ScheduleRegimeWarning)]
                settings = sampler_settings(cfg["sampler"], ctx.lab, point_seed(ctx.seed, index))
                index += 1
                parameters = {
                    **pair_parameters(params),
                    "beta": beta, "omega": omega, "s": schedule.s, "flags": flags,
                }
                yield from _convergence_point(
                    cfg, ctx, kind, u, potential, params, schedule, settings, base, parameters
                )


def _convergence_point(cfg, ctx, kind, u, potential, params, schedule, settings, base, parameters):
    N, beta, g = schedule.N, schedule.beta, schedule.g
    start = time.perf_counter()
    breakdown = estimate_energy(
        u, params, N, potential, settings,
        rao_blackwell=cfg["rao_blackwell"],
        relative_error_ceiling=ctx.lab["RELATIVE_ERROR_CEILING"],
        workers=ctx.workers,
    )
    elapsed = time.perf_counter() - start
    gamma_finite = 2.0 * math.pi * beta * finite_coupling(params)
    gamma_limit = 2.0 * math.pi * beta * coupling_G(schedule.s, g)
    predicted = base.total + gamma_finite * base.quartic_integral
    predicted_limit = base.total + gamma_limit * base.quartic_integral
    total = breakdown.total

    passed = None
    tolerance = SIGMA_WINDOW * total.stderr
    if beta == 0.0:
        passed = within(total.mean, predicted, tolerance)
    yield ctx.record(
        kind, "total", total.mean, stderr=total.stderr, predicted=predicted,
        predicted_limit=predicted_limit, tolerance=tolerance, passed=passed, N=N,
        parameters={**parameters, "flagged": list(breakdown.flagged)}, wall_time=elapsed,
    )

    main = predicted_main_terms(u, params, N, potential)
    for name in TERMS:
        estimate = breakdown.term(name)
        yield ctx.record(
            kind, name, estimate.mean, stderr=estimate.stderr, predicted=main.as_dict()[name],
            N=N, parameters=parameters,
        )

    scale = 2.0 * math.pi * beta
    supersymmetric = None
    if g == 2.0:
        supersymmetric = within(gamma_finite, scale, 1e-9 * max(1.0, scale))
    yield ctx.record(
        kind, "quartic_coupling", gamma_finite, predicted=gamma_limit, passed=supersymmetric,
        N=N, parameters=parameters,
    )
    if cfg["density"]:
        yield _density_record(ctx, kind, u, params, N, settings, cfg["density_bins"], parameters)


# -- mean field -------------------------------------------------------------


def initial_field(section: dict, grid: Grid2D, rng: np.random.Generator) -> ComplexField2D:
    width = section["width"] or grid.L / 16.0
    if section["kind"] == "file":
        field = load_field(section["path"])
        if field.grid != grid:
            raise ParameterDomainError(
                f"start field grid (L={field.grid.L}, n={field.grid.n}) does not match the config grid"
            )
    elif section["kind"] == "nll":
        d = section["degree"]
        pair = PolynomialPair(tuple([0.0] * d + [1.0 / section["scale"] ** d]), (1.0,))
        field = nll_state(pair, grid, mass_tolerance=1e-2, resolution_tolerance=1.0).field
    else:
        field = random_phase_field(grid, rng, width)
    if section["perturbation"]:
        noise = random_phase_field(grid, rng, width)
        field = field.with_values(field.values + section["perturbation"] * noise.values)
    return field.normalized()


def run_css(cfg: dict, ctx: LabContext) -> Iterator[Record]:
    """Minimize the CSS functional and check the stationarity equation."""
    grid = build_grid(cfg["grid"], ctx.lab)
    padding = cfg.get("padding_tolerance", ctx.lab["PADDING_TOLERANCE"])
    params = CSSParams(beta=cfg["beta"], gamma=cfg["gamma"], potential=PotentialSpec(**cfg["potential"]))
    rng = np.random.default_rng(ctx.seed)
    init = initial_field(cfg["init"], grid, rng)

    start = time.perf_counter()
    result = minimize_css(
        params, init, tol=cfg["tol"], max_iter=cfg["max_iter"],
        energy_floor=cfg["energy_floor"], padding_tolerance=padding,
    )
    elapsed = time.perf_counter() - start
    parameters = {"beta": params.beta, "gamma": params.gamma, "L": grid.L, "n": grid.n,
                  "iterations": result.iterations, "converged": result.converged}

    predicted = passed = tolerance = None
    bogomolny = params.potential.is_zero and math.isclose(params.gamma, -2.0 * math.pi * abs(params.beta))
    if bogomolny:
        predicted, tolerance = 0.0, ZERO_ENERGY_TOLERANCE
        passed = within(result.energy.total, 0.0, tolerance)
    yield ctx.record(
        "css", "energy", result.energy.total, predicted=predicted, tolerance=tolerance,
        passed=passed, parameters=parameters, wall_time=elapsed,
    )
    residual = el_residual(result.field, params, padding)
    yield ctx.record(
        "css", "el_residual", residual.norm, predicted=0.0, tolerance=cfg["tol"],
        passed=result.converged, parameters=parameters,
    )
    yield ctx.record("css", "lambda", residual.lam, parameters=parameters)

    if cfg["hardy"]:
        check = hardy_check(result.field, R=0.0, padding_tolerance=padding)
        yield ctx.record(
            "css", "hardy", check.lhs, predicted=check.rhs, passed=check.ok, parameters=parameters,
        )
    if cfg["save_field"]:
        ctx.out_dir.mkdir(parents=True, exist_ok=True)
        path = save_field(result.field, ctx.out_dir / "css_field")
        logger.info("minimizer written to %s", path)


def _nll_records(cfg, ctx, state, label: str, parameters: dict) -> Iterator[Record]:
    padding = cfg["padding_tolerance"]
    energy = css_energy(state.field, CSSParams(beta=state.beta, gamma=0.0), padding)
    predicted = 2.0 * math.pi * state.beta * energy.quartic_integral
    tolerance = cfg["tolerance"] * abs(energy.total)
    parameters = {**parameters, "beta": state.beta, "mass": state.mass, "tail_mass": state.tail_mass,
                  "resolution": state.resolution}
    yield ctx.record(
        "nll", label, energy.total, predicted=predicted, tolerance=tolerance,
        passed=within(energy.total, predicted, tolerance), parameters=parameters,
    )
    if cfg["hardy"]:
        check = hardy_check(state.field, R=0.0, padding_tolerance=padding)
        yield ctx.record("nll", "hardy", check.lhs, predicted=check.rhs, passed=check.ok, parameters=parameters)


def run_nll(cfg: dict, ctx: LabContext) -> Iterator[Record]:
    """NLL identity E = 2 pi beta int |u|^4 on random polynomial pairs."""
    grid = build_grid(cfg["grid"], ctx.lab)
    rng = np.random.default_rng(ctx.seed)
    tolerances = {
        "mass_tolerance": cfg["mass_tolerance"],
        "tail_tolerance": cfg["tail_tolerance"],
        "resolution_tolerance": cfg["resolution_tolerance"],
    }
    if cfg["analytic"]:
        state = nll_state(PolynomialPair((0.0, 1.0), (1.0,)), grid, **tolerances)
        energy = css_energy(state.field, CSSParams(beta=2.0, gamma=0.0), cfg["padding_tolerance"])
        outer_quartic, outer_energy = degree_one_exterior(0.5 * grid.L)
        tol = cfg["analytic_tolerance"]
        quartic = 1.0 / (3.0 * math.pi)
        parameters = {"degree": 1, "L": grid.L, "n": grid.n, "tail_mass": state.tail_mass}
        yield ctx.record(
            "nll", "quartic_d1", energy.quartic_integral + outer_quartic, predicted=quartic, tolerance=tol,
            passed=within(energy.quartic_integral + outer_quartic, quartic, tol), parameters=parameters,
        )
        yield ctx.record(
            "nll", "energy_d1", energy.total + outer_energy, predicted=4.0 / 3.0, tolerance=tol,
            passed=within(energy.total + outer_energy, 4.0 / 3.0, tol), parameters=parameters,
        )
    for beta in cfg["betas"]:
        degree = beta // 2
        for k in range(cfg["pairs_per_beta"]):
            pair, state = random_state(
                degree, grid, rng, spread=cfg["spread"], width=cfg["feature_width"],
                max_ratio=cfg["max_ratio"], max_draws=cfg["max_draws"],
                padding_tolerance=cfg["padding_tolerance"], **tolerances,
            )
            parameters = {"degree": degree, "pair": k, "L": grid.L, "n": grid.n,
                          "width": pair.feature_width(), "extent": pair.extent()}
            yield from _nll_records(cfg, ctx, state, "identity", parameters)


def run_gammastar(cfg: dict, ctx: LabContext) -> Iterator[Record]:
    """Multistart estimates of gamma*(beta).

    2 pi beta is expected for beta >= 2. For 0 < beta < 2 the estimate must lie
    above both 2 pi beta and the beta = 0 constant, which is estimated once.
    """
    grid = build_grid(cfg["grid"], ctx.lab)

    def estimate_at(beta: float, index: int):
        return gamma_star_estimate(
            beta, grid, restarts=cfg["restarts"], seed=point_seed(ctx.seed, index),
            tol=cfg["tol"], max_iter=cfg["max_iter"], width=cfg["width"],
            padding_tolerance=cfg["padding_tolerance"], workers=ctx.workers,
        )

    lgn = None
    if any(0.0 < beta < 2.0 for beta in cfg["betas"]):
        start = time.perf_counter()
        lgn = estimate_at(0.0, len(cfg["betas"]))
        yield ctx.record(
            "gammastar", "C_LGN", lgn.estimate, stderr=lgn.spread,
            parameters={"beta": 0.0, "restarts": len(lgn.values), "L": grid.L, "n": grid.n},
            wall_time=time.perf_counter() - start,
        )
    for index, beta in enumerate(cfg["betas"]):
        start = time.perf_counter()
        estimate = estimate_at(beta, index)
        predicted = tolerance = passed = None
        if beta >= 2.0:
            predicted = 2.0 * math.pi * beta
            tolerance = cfg["relative_window"] * predicted
            passed = within(estimate.estimate, predicted, tolerance)
        elif beta > 0.0:
            predicted = max(lgn.estimate, 2.0 * math.pi * beta)
            passed = estimate.estimate > predicted
        yield ctx.record(
            "gammastar", "gamma_star", estimate.estimate, stderr=estimate.spread,
            predicted=predicted, tolerance=tolerance, passed=passed,
            parameters={"beta": beta, "restarts": len(estimate.values), "L": grid.L, "n": grid.n},
            wall_time=time.perf_counter() - start,
        )


DRIVERS = {
    "twobody": run_twobody,
    "vmc": run_vmc,
    "css": run_css,
    "nll": run_nll,
    "gammastar": run_gammastar,
    "convergence": run_convergence,
}
