"""
Exact nonlinear-Landau-level states built from coprime polynomial pairs.

    u_{P,Q} = sqrt(2 / (pi beta)) conj(P'Q - PQ') / (|P|^2 + |Q|^2),  beta = 2 max(deg P, deg Q)

The states decay algebraically, so the box never holds all of the mass. The
part outside the box is integrated from the closed form instead of being
truncated, and a state is accepted only when the grid resolves its narrowest
bubble.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

from config.exceptions import ParameterDomainError, PolynomialPairError

from .grid import ComplexField2D, Grid2D

logger = logging.getLogger(__name__)

COPRIME_TOLERANCE = 1e-9
EXTERIOR_NODES = 64
MAX_DRAWS = 100
FEATURE_CELLS = 8


def _as_polynomial(coefficients) -> Polynomial:
    coef = np.asarray(coefficients, dtype=np.complex128)
    if coef.ndim != 1 or coef.size == 0:
        raise PolynomialPairError("polynomial coefficients must be a non-empty list")
    if not np.all(np.isfinite(coef)):
        raise PolynomialPairError("polynomial coefficients must be finite")
    return Polynomial(coef).trim()


def exterior_integral(func, half_width: float, nodes: int = EXTERIOR_NODES) -> float:
    """Integral of ``func(x, y)`` over the plane outside the square [-h, h]^2.

    The wedge beyond each side is mapped onto (0, 1) x (-1, 1) by x = h / s,
    y = t h / s, where algebraic tails become smooth and Gauss-Legendre applies.
    """
    s, ws = np.polynomial.legendre.leggauss(nodes)
    s, ws = 0.5 * (s + 1.0), 0.5 * ws
    t, wt = np.polynomial.legendre.leggauss(nodes)
    S, T = np.meshgrid(s, t, indexing="ij")
    weights = np.outer(ws, wt) * half_width**2 / S**3
    z = half_width / S * (1.0 + 1j * T)
    total = 0.0
    for quarter in range(4):
        w = z * 1j**quarter
        total += float(np.sum(weights * func(w.real, w.imag)))
    return total


@dataclass(frozen=True)
class PolynomialPair:
    """Coefficient lists in ascending powers of z."""

    p: tuple[complex, ...]
    q: tuple[complex, ...]
    P: Polynomial = field(init=False, repr=False, compare=False)
    Q: Polynomial = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        P, Q = _as_polynomial(self.p), _as_polynomial(self.q)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "p", tuple(complex(c) for c in P.coef))
        object.__setattr__(self, "q", tuple(complex(c) for c in Q.coef))
        wronskian = self.wronskian()
        if np.all(np.abs(wronskian.coef) <= COPRIME_TOLERANCE * self._scale()):
            raise PolynomialPairError("P and Q are linearly dependent (zero Wronskian)")
        if not self._coprime():
            raise PolynomialPairError("P and Q share a root")

    def _scale(self) -> float:
        return max(float(np.max(np.abs(self.P.coef))), float(np.max(np.abs(self.Q.coef))), 1e-300)

    def _coprime(self) -> bool:
        low, high = (self.P, self.Q) if self.P.degree() <= self.Q.degree() else (self.Q, self.P)
        if low.degree() < 1:
            return bool(np.any(low.coef != 0))
        for root in low.roots():
            scale = float(np.sum(np.abs(high.coef) * np.abs(root) ** np.arange(high.coef.size)))
            if abs(high(root)) <= COPRIME_TOLERANCE * max(scale, 1e-300):
                return False
        return True

    @property
    def degree(self) -> int:
        return max(self.P.degree(), self.Q.degree())

    @property
    def beta(self) -> float:
        return 2.0 * self.degree

    def wronskian(self) -> Polynomial:
        return (self.P.deriv() * self.Q - self.P * self.Q.deriv()).trim()

    def amplitude(self, z: np.ndarray) -> np.ndarray:
        numerator = np.conj(self.wronskian()(z))
        denominator = np.abs(self.P(z)) ** 2 + np.abs(self.Q(z)) ** 2
        return math.sqrt(2.0 / (math.pi * self.beta)) * numerator / denominator

    def density(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.abs(self.amplitude(x + 1j * y)) ** 2

    def transformed(self, matrix: np.ndarray) -> PolynomialPair:
        """(P, Q) -> (a P + b Q, c P + d Q) for a 2x2 matrix [[a, b], [c, d]]."""
        (a, b), (c, d) = np.asarray(matrix, dtype=np.complex128)
        P = a * self.P + b * self.Q
        Q = c * self.P + d * self.Q
        return PolynomialPair(tuple(P.coef), tuple(Q.coef))

    def shifted(self, center: complex) -> PolynomialPair:
        """(P(z + center), Q(z + center)): |u| is translated by -center."""
        x = Polynomial([complex(center), 1.0])

        def compose(poly: Polynomial) -> Polynomial:
            out = Polynomial([0.0])
            for coef in poly.coef[::-1]:
                out = out * x + coef
            return out

        return PolynomialPair(tuple(compose(self.P).coef), tuple(compose(self.Q).coef))

    def dilated(self, scale: float) -> PolynomialPair:
        """(P(z / scale), Q(z / scale)): every length of |u| is multiplied by ``scale``."""
        if not scale > 0:
            raise ParameterDomainError(f"dilation must be positive, got {scale}")
        P = self.P.coef / scale ** np.arange(self.P.coef.size)
        Q = self.Q.coef / scale ** np.arange(self.Q.coef.size)
        return PolynomialPair(tuple(P), tuple(Q))

    def _bubbles(self) -> list[tuple[complex, float]]:
        """(root, width) at each root of P and Q; |f| = |P / Q| crosses 1 about ``width`` away."""
        bubbles = []
        for inner, outer in ((self.P, self.Q), (self.Q, self.P)):
            if inner.degree() < 1:
                continue
            slope = inner.deriv()
            for root in inner.roots():
                s = abs(slope(root))
                bubbles.append((complex(root), abs(outer(root)) / s if s > 0 else math.inf))
        return bubbles

    def _infinity_scale(self) -> float:
        dp, dq = self.P.degree(), self.Q.degree()
        if dp == dq:
            return math.inf
        high, low = (self.P, self.Q) if dp > dq else (self.Q, self.P)
        ratio = abs(low.coef[-1]) / abs(high.coef[-1])
        return ratio ** (1.0 / abs(dp - dq))

    def feature_width(self) -> float:
        """Narrowest length scale of |u|."""
        widths = [width for _, width in self._bubbles()]
        return min(widths + [self._infinity_scale()])

    def extent(self) -> float:
        """Radius beyond which |u| has no structure left, only its algebraic tail."""
        radii = [abs(root) + (width if math.isfinite(width) else 0.0) for root, width in self._bubbles()]
        scale = self._infinity_scale()
        if math.isfinite(scale):
            radii.append(scale)
        return max(radii, default=0.0)


@dataclass(frozen=True)
class NLLState:
    field: ComplexField2D
    beta: float
    mass: float
    tail_mass: float
    resolution: float


def nll_state(
    pair: PolynomialPair,
    grid: Grid2D,
    mass_tolerance: float = 1e-6,
    tail_tolerance: float = 1e-2,
    resolution_tolerance: float = 1e-6,
) -> NLLState:
    """Evaluate u_{P,Q} on the grid.

    ``tail_mass`` is the exact mass outside the box. The box must hold all but
    ``tail_tolerance`` of it, the grid mass plus the tail must be 1 within
    ``mass_tolerance``, and the upper quarter of the spectrum may carry at most
    ``resolution_tolerance`` of the H1 weight.
    """
    if pair.degree < 1:
        raise PolynomialPairError("an NLL state needs max(deg P, deg Q) >= 1")
    u = ComplexField2D(grid, pair.amplitude(grid.X + 1j * grid.Y))
    mass = u.mass()
    tail = exterior_integral(pair.density, 0.5 * grid.L)
    resolution = grid.spectral_tail(u.values)
    logger.debug(
        "NLL state degree %d: mass %.10g, tail %.3g, resolution %.3g", pair.degree, mass, tail, resolution
    )
    if tail > tail_tolerance:
        raise ParameterDomainError(f"NLL tail mass {tail:.3g} outside L={grid.L} exceeds {tail_tolerance}")
    if abs(mass + tail - 1.0) > mass_tolerance:
        raise ParameterDomainError(
            f"NLL mass {mass:.10g} + tail {tail:.3g} on L={grid.L}, n={grid.n} deviates from 1 "
            f"by more than {mass_tolerance}"
        )
    if resolution > resolution_tolerance:
        raise ParameterDomainError(
            f"NLL state unresolved on n={grid.n}: spectral tail {resolution:.3g} > {resolution_tolerance}"
        )
    return NLLState(field=u, beta=pair.beta, mass=mass, tail_mass=tail, resolution=resolution)


def degree_one_exterior(half_width: float) -> tuple[float, float]:
    """(int |u|^4, energy) of the P = z, Q = 1 state outside the square [-h, h]^2."""

    def quartic(x, y):
        return 1.0 / (math.pi**2 * (1.0 + x**2 + y**2) ** 4)

    def energy(x, y):
        r2 = x**2 + y**2
        return 8.0 * r2 / (math.pi * (1.0 + r2) ** 4)

    return exterior_integral(quartic, half_width), exterior_integral(energy, half_width)


def _square(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.uniform(-0.5, 0.5, size) + 1j * rng.uniform(-0.5, 0.5, size)


def random_pair(
    degree: int,
    rng: np.random.Generator,
    spread: float = 1.0,
    width: float | None = None,
    max_ratio: float | None = None,
    max_draws: int = MAX_DRAWS,
) -> PolynomialPair:
    """A random coprime pair with monic P of the given degree and deg Q = max(degree - 2, 0).

    Roots of P and Q lie in a square of side ``spread`` and the pair is shifted
    so their mean sits at the origin. With ``width`` the pair is dilated until
    its narrowest bubble has that width. Pairs whose extent exceeds
    ``max_ratio`` times their narrowest width are near-degenerate and redrawn.
    """
    if degree < 1:
        raise ParameterDomainError("degree must be at least 1")
    q_degree = max(degree - 2, 0)
    for _ in range(max_draws):
        p_roots, q_roots = spread * _square(rng, degree), spread * _square(rng, q_degree)
        P = Polynomial.fromroots(p_roots)
        Q = 0.5 * complex(rng.normal(), rng.normal()) * Polynomial.fromroots(q_roots)
        try:
            pair = PolynomialPair(tuple(P.coef), tuple(Q.coef))
            pair = pair.shifted(complex(np.mean(np.concatenate([p_roots, q_roots]))))
            if width is not None:
                pair = pair.dilated(width / pair.feature_width())
        except PolynomialPairError:
            continue
        ratio = pair.extent() / pair.feature_width()
        if max_ratio is not None and ratio > max_ratio:
            logger.debug("rejecting near-degenerate degree-%d pair, extent %.3g widths", degree, ratio)
            continue
        return pair
    raise ParameterDomainError(f"no admissible degree-{degree} pair in {max_draws} draws")


def random_state(
    degree: int,
    grid: Grid2D,
    rng: np.random.Generator,
    *,
    spread: float = 1.0,
    width: float | None = None,
    max_ratio: float = 4.0,
    max_draws: int = MAX_DRAWS,
    padding_tolerance: float | None = None,
    **tolerances,
) -> tuple[PolynomialPair, NLLState]:
    """Draw random pairs until one gives a state the grid accepts.

    Bubbles are ``FEATURE_CELLS`` grid spacings wide unless ``width`` is given.
    With ``padding_tolerance`` the share of mass outside the central half of
    the box is bounded too, so the state can go through the gauge solver.
    """
    width = width or FEATURE_CELLS * grid.dx
    for _ in range(max_draws):
        pair = random_pair(degree, rng, spread, width=width, max_ratio=max_ratio, max_draws=max_draws)
        try:
            state = nll_state(pair, grid, **tolerances)
        except ParameterDomainError as exc:
            logger.info("redrawing degree-%d pair: %s", degree, exc)
            continue
        margin = grid.tail_fraction(state.field.density())
        if padding_tolerance is not None and margin > padding_tolerance:
            logger.info("redrawing degree-%d pair: %.3g of the mass in the padding margin", degree, margin)
            continue
        return pair, state
    raise ParameterDomainError(f"no degree-{degree} NLL state accepted on L={grid.L}, n={grid.n}")


def random_su2_scale(rng: np.random.Generator) -> np.ndarray:
    """lambda U with U in SU(2) and lambda a random non-zero complex scale."""
    a = rng.normal(size=2) + 1j * rng.normal(size=2)
    a /= np.linalg.norm(a)
    U = np.array([[a[0], a[1]], [-np.conj(a[1]), np.conj(a[0])]])
    scale = (0.5 + rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
    return scale * U
