"""
Condensate orbitals u compactly supported in B(0, R1).

``TruncatedGaussian`` is the analytic default. ``GridCondensate`` wraps a field
produced by the mean-field solver and interpolates it with bicubic splines.
"""

from __future__ import annotations

import abc
import logging
import math
from functools import cached_property

import numpy as np
from scipy import integrate
from scipy.interpolate import RectBivariateSpline

from config.exceptions import ParameterDomainError, SamplerError
from meanfield.grid import ComplexField2D, Grid2D
from meanfield.potential import PotentialSpec

logger = logging.getLogger(__name__)

DENSITY_FLOOR = 1e-300
NORMALIZATION_TOLERANCE = 1e-8


class Condensate(abc.ABC):
    """One-body orbital evaluated at points of shape (..., 2)."""

    support_radius: float

    @abc.abstractmethod
    def values(self, points: np.ndarray) -> np.ndarray:
        ...

    @abc.abstractmethod
    def drift(self, points: np.ndarray) -> np.ndarray:
        """grad u / u at points, shape (..., 2), complex; zero outside the support."""

    @abc.abstractmethod
    def sample(self, rng: np.random.Generator, size: tuple[int, ...]) -> np.ndarray:
        """Independent draws from |u|^2 with shape size + (2,)."""

    @abc.abstractmethod
    def kinetic_integral(self) -> float:
        ...

    @abc.abstractmethod
    def power_integral(self, p: int) -> float:
        """int |u|^p."""

    @abc.abstractmethod
    def potential_integral(self, potential: PotentialSpec) -> float:
        ...

    @abc.abstractmethod
    def sup_norm(self) -> float:
        ...

    @abc.abstractmethod
    def gradient_sup_norm(self) -> float:
        ...

    @abc.abstractmethod
    def to_field(self, grid: Grid2D) -> ComplexField2D:
        ...

    def density(self, points: np.ndarray) -> np.ndarray:
        return np.abs(self.values(points)) ** 2

    def log_abs(self, points: np.ndarray) -> np.ndarray:
        dens = self.density(points)
        out = np.full(dens.shape, -np.inf)
        mask = dens > DENSITY_FLOOR
        out[mask] = 0.5 * np.log(dens[mask])
        return out


class TruncatedGaussian(Condensate):
    """u = c exp(-|x|^2 / 2 sigma^2) (1 - |x|^2/R1^2)^3 on B(0, R1); sigma defaults to R1/3."""

    def __init__(self, support_radius: float = 1.0, width: float | None = None) -> None:
        if not (math.isfinite(support_radius) and support_radius > 0):
            raise ParameterDomainError("support radius must be positive")
        self.support_radius = float(support_radius)
        self.width = float(width) if width is not None else self.support_radius / 3.0
        if not self.width > 0:
            raise ParameterDomainError("width must be positive")
        raw_mass = self._radial_integral(lambda r: self._raw(r) ** 2)
        self.scale = 1.0 / math.sqrt(raw_mass)
        mass = self._radial_integral(lambda r: self._profile(r) ** 2)
        if abs(mass - 1.0) > NORMALIZATION_TOLERANCE:
            raise ParameterDomainError(f"condensate normalization failed: mass {mass!r}")

    def __repr__(self) -> str:
        return f"TruncatedGaussian(support_radius={self.support_radius}, width={self.width})"

    def _raw(self, r: np.ndarray | float) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        s = 1.0 - (r / self.support_radius) ** 2
        return np.where(s > 0, np.exp(-0.5 * r**2 / self.width**2) * np.clip(s, 0, None) ** 3, 0.0)

    def _profile(self, r: np.ndarray | float) -> np.ndarray:
        return self.scale * self._raw(r)

    def _radial_slope(self, r: np.ndarray | float) -> np.ndarray:
        """|u'(r)|."""
        r = np.asarray(r, dtype=float)
        gap = np.maximum(self.support_radius**2 - r**2, 1e-300)
        return self._profile(r) * r * (1.0 / self.width**2 + 6.0 / gap)

    def _radial_integral(self, func) -> float:
        value, _ = integrate.quad(
            lambda r: 2.0 * math.pi * r * float(func(r)),
            0.0,
            self.support_radius,
            epsabs=1e-13,
            epsrel=1e-12,
            limit=200,
        )
        return value

    def values(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        return self._profile(np.hypot(points[..., 0], points[..., 1]))

    def drift(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        r2 = points[..., 0] ** 2 + points[..., 1] ** 2
        gap = self.support_radius**2 - r2
        inside = gap > 0
        factor = np.zeros_like(r2)
        factor[inside] = -1.0 / self.width**2 - 6.0 / gap[inside]
        return (points * factor[..., None]).astype(np.complex128)

    def sample(self, rng: np.random.Generator, size: tuple[int, ...]) -> np.ndarray:
        size = tuple(np.atleast_1d(size))
        total = int(np.prod(size))
        out = np.empty((total, 2))
        filled = 0
        scale = self.width / math.sqrt(2.0)
        while filled < total:
            need = total - filled
            proposal = rng.normal(scale=scale, size=(2 * need + 16, 2))
            s = 1.0 - (proposal**2).sum(axis=1) / self.support_radius**2
            accept_prob = np.clip(s, 0.0, None) ** 6
            keep = proposal[rng.uniform(size=proposal.shape[0]) < accept_prob][:need]
            out[filled : filled + keep.shape[0]] = keep
            filled += keep.shape[0]
        return out.reshape(size + (2,))

    def kinetic_integral(self) -> float:
        return self._radial_integral(lambda r: self._radial_slope(r) ** 2)

    def power_integral(self, p: int) -> float:
        return self._radial_integral(lambda r: self._profile(r) ** p)

    def potential_integral(self, potential: PotentialSpec) -> float:
        return self._radial_integral(lambda r: potential.evaluate(r, 0.0) * self._profile(r) ** 2)

    def sup_norm(self) -> float:
        return self.scale

    @cached_property
    def _grad_sup(self) -> float:
        r = np.linspace(0.0, self.support_radius, 4001)
        return float(np.max(self._radial_slope(r)))

    def gradient_sup_norm(self) -> float:
        return self._grad_sup

    def to_field(self, grid: Grid2D) -> ComplexField2D:
        return ComplexField2D(grid, self._profile(np.hypot(grid.X, grid.Y)))


class GridCondensate(Condensate):
    """Bicubic interpolation of the real and imaginary parts of a grid field.

    Points beyond ``support_radius`` or with |u|^2 below the floor carry zero weight.
    """

    def __init__(self, field: ComplexField2D, support_radius: float | None = None) -> None:
        grid = field.grid
        u = field.normalized()
        self.field = u
        self.support_radius = float(support_radius) if support_radius else 0.5 * grid.L - grid.dx
        axis = grid.axis
        self._re = RectBivariateSpline(axis, axis, u.values.real, kx=3, ky=3)
        self._im = RectBivariateSpline(axis, axis, u.values.imag, kx=3, ky=3)
        inside = np.hypot(grid.X, grid.Y) < self.support_radius
        outside_mass = grid.integrate(u.density()[~inside])
        if outside_mass > 1e-6:
            logger.warning("grid condensate has mass %.3g beyond its support radius", outside_mass)
        weights = np.where(inside, u.density(), 0.0).ravel()
        self._cell_probability = weights / weights.sum()

    def __repr__(self) -> str:
        return f"GridCondensate(L={self.field.grid.L}, n={self.field.grid.n}, support_radius={self.support_radius})"

    def _evaluate(self, points: np.ndarray, dx: int = 0, dy: int = 0) -> np.ndarray:
        x, y = points[..., 0], points[..., 1]
        re = self._re.ev(x.ravel(), y.ravel(), dx=dx, dy=dy)
        im = self._im.ev(x.ravel(), y.ravel(), dx=dx, dy=dy)
        return (re + 1j * im).reshape(x.shape)

    def _inside(self, points: np.ndarray) -> np.ndarray:
        return np.hypot(points[..., 0], points[..., 1]) < self.support_radius

    def values(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        out = np.where(self._inside(points), self._evaluate(points), 0.0)
        return np.where(np.abs(out) ** 2 > DENSITY_FLOOR, out, 0.0)

    def drift(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        u = self.values(points)
        gx = self._evaluate(points, dx=1)
        gy = self._evaluate(points, dy=1)
        out = np.zeros(points.shape, dtype=np.complex128)
        mask = u != 0
        out[..., 0][mask] = gx[mask] / u[mask]
        out[..., 1][mask] = gy[mask] / u[mask]
        return out

    def sample(self, rng: np.random.Generator, size: tuple[int, ...]) -> np.ndarray:
        """Cell drawn with probability |u|^2 dx^2, then a uniform point inside it."""
        size = tuple(np.atleast_1d(size))
        total = int(np.prod(size))
        grid = self.field.grid
        cells = rng.choice(self._cell_probability.size, size=total, p=self._cell_probability)
        ix, iy = np.unravel_index(cells, (grid.n, grid.n))
        jitter = rng.uniform(-0.5, 0.5, size=(total, 2)) * grid.dx
        points = np.stack([grid.axis[ix], grid.axis[iy]], axis=-1) + jitter
        for _ in range(100):
            bad = self.density(points) == 0.0
            if not bad.any():
                return points.reshape(size + (2,))
            # jitter landed outside the support; redraw those points
            cells = rng.choice(self._cell_probability.size, size=int(bad.sum()), p=self._cell_probability)
            ix, iy = np.unravel_index(cells, (grid.n, grid.n))
            jitter = rng.uniform(-0.5, 0.5, size=(ix.size, 2)) * grid.dx
            points[bad] = np.stack([grid.axis[ix], grid.axis[iy]], axis=-1) + jitter
        raise SamplerError("grid condensate sampling keeps landing outside the support")

    def kinetic_integral(self) -> float:
        gx, gy = self.field.grid.gradient(self.field.values)
        return self.field.grid.integrate(np.abs(gx) ** 2 + np.abs(gy) ** 2)

    def power_integral(self, p: int) -> float:
        return self.field.grid.integrate(np.abs(self.field.values) ** p)

    def potential_integral(self, potential: PotentialSpec) -> float:
        grid = self.field.grid
        return grid.integrate(potential.evaluate(grid.X, grid.Y) * self.field.density())

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.field.values)))

    def gradient_sup_norm(self) -> float:
        gx, gy = self.field.grid.gradient(self.field.values)
        return float(np.max(np.sqrt(np.abs(gx) ** 2 + np.abs(gy) ** 2)))

    def to_field(self, grid: Grid2D) -> ComplexField2D:
        if grid == self.field.grid:
            return self.field
        points = np.stack([grid.X, grid.Y], axis=-1)
        return ComplexField2D(grid, self.values(points))


def condensate_from_spec(
    kind: str,
    support_radius: float = 1.0,
    width: float | None = None,
    field: ComplexField2D | None = None,
) -> Condensate:
    if kind == "truncated-gaussian":
        return TruncatedGaussian(support_radius, width)
    if kind == "grid-interpolated":
        if field is None:
            raise ParameterDomainError("grid-interpolated condensate needs a field")
        return GridCondensate(field, support_radius)
    raise ParameterDomainError(f"unknown condensate kind {kind!r}")
