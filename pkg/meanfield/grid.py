"""
Uniform periodic grids on [-L/2, L/2)^2 and complex fields living on them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from config.exceptions import AnyonLabError, ParameterDomainError


@dataclass(frozen=True)
class Grid2D:
    """n x n nodes with spacing L/n; arrays are indexed [ix, iy]."""

    L: float
    n: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.L) and self.L > 0):
            raise ParameterDomainError(f"grid extent must be positive, got {self.L}")
        if self.n < 8 or self.n & (self.n - 1):
            raise ParameterDomainError(f"grid size must be a power of two >= 8, got {self.n}")

    @property
    def dx(self) -> float:
        return self.L / self.n

    @property
    def cell_area(self) -> float:
        return self.dx**2

    @cached_property
    def axis(self) -> np.ndarray:
        return -0.5 * self.L + self.dx * np.arange(self.n)

    @cached_property
    def X(self) -> np.ndarray:
        return np.meshgrid(self.axis, self.axis, indexing="ij")[0]

    @cached_property
    def Y(self) -> np.ndarray:
        return np.meshgrid(self.axis, self.axis, indexing="ij")[1]

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.dx)

    @cached_property
    def derivative_wavenumbers(self) -> np.ndarray:
        """Wavenumbers with the Nyquist mode zeroed, so derivatives of real data stay real."""
        k = self.wavenumbers.copy()
        k[self.n // 2] = 0.0
        return k

    @cached_property
    def KX(self) -> np.ndarray:
        return self.derivative_wavenumbers[:, None] * np.ones(self.n)[None, :]

    @cached_property
    def KY(self) -> np.ndarray:
        return np.ones(self.n)[:, None] * self.derivative_wavenumbers[None, :]

    @cached_property
    def central_mask(self) -> np.ndarray:
        """Nodes of the central half [-L/4, L/4)^2."""
        inside = np.zeros(self.n, dtype=bool)
        inside[self.n // 4 : 3 * self.n // 4] = True
        return inside[:, None] & inside[None, :]

    def integrate(self, values: np.ndarray) -> float:
        return float(np.sum(values) * self.cell_area)

    def inner(self, a: np.ndarray, b: np.ndarray) -> complex:
        """<a, b> = sum conj(a) b dx^2."""
        return complex(np.vdot(a, b) * self.cell_area)

    def gradient(self, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Spectral derivatives (d/dx, d/dy); complex output for complex input."""
        hat = np.fft.fft2(values)
        gx = np.fft.ifft2(1j * self.KX * hat)
        gy = np.fft.ifft2(1j * self.KY * hat)
        if np.isrealobj(values):
            return gx.real, gy.real
        return gx, gy

    def laplacian(self, values: np.ndarray) -> np.ndarray:
        k2 = self.KX**2 + self.KY**2
        out = np.fft.ifft2(-k2 * np.fft.fft2(values))
        return out.real if np.isrealobj(values) else out

    def spectral_tail(self, values: np.ndarray, band: float = 0.75) -> float:
        """Share of the H1 weight of ``values`` in modes with max(|kx|, |ky|) above ``band`` x Nyquist."""
        k = self.wavenumbers
        kx, ky = np.meshgrid(k, k, indexing="ij")
        weight = np.abs(np.fft.fft2(values)) ** 2 * (1.0 + kx**2 + ky**2)
        total = float(np.sum(weight))
        if total <= 0.0:
            return 0.0
        outer = np.maximum(np.abs(kx), np.abs(ky)) > band * np.pi / self.dx
        return float(np.sum(weight[outer])) / total

    def tail_fraction(self, density: np.ndarray) -> float:
        """Share of the total mass of ``density`` lying outside the central half."""
        total = float(np.sum(density))
        if total <= 0.0:
            return 0.0
        return float(np.sum(density[~self.central_mask])) / total


@dataclass(frozen=True)
class ComplexField2D:
    grid: Grid2D
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != (self.grid.n, self.grid.n):
            raise ParameterDomainError(
                f"field shape {values.shape} does not match grid size {self.grid.n}"
            )
        if not np.all(np.isfinite(values)):
            raise ParameterDomainError("field values must be finite")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid: Grid2D, func) -> ComplexField2D:
        return cls(grid, func(grid.X, grid.Y))

    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def mass(self) -> float:
        return self.grid.integrate(self.density())

    def quartic(self) -> float:
        return self.grid.integrate(self.density() ** 2)

    def normalized(self) -> ComplexField2D:
        mass = self.mass()
        if mass <= 0.0:
            raise ParameterDomainError("cannot normalize a zero field")
        return self.with_values(self.values / math.sqrt(mass))

    def with_values(self, values: np.ndarray) -> ComplexField2D:
        return ComplexField2D(self.grid, values)


def save_field(u: ComplexField2D, path: str | Path) -> Path:
    """Write little-endian complex128 row-major data plus a ``{L, n}`` JSON sidecar."""
    path = Path(path)
    sidecar = path.with_suffix(".json")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        u.values.astype("<c16").tofile(path)
        sidecar.write_text(json.dumps({"L": u.grid.L, "n": u.grid.n}, sort_keys=True))
    except OSError as exc:
        raise AnyonLabError(f"could not write field file {path}: {exc}") from exc
    return path


def load_field(path: str | Path) -> ComplexField2D:
    path = Path(path)
    sidecar = path.with_suffix(".json")
    try:
        meta = json.loads(sidecar.read_text())
        raw = np.fromfile(path, dtype="<c16")
    except (OSError, ValueError) as exc:
        raise AnyonLabError(f"could not read field file {path}: {exc}") from exc
    grid = Grid2D(L=float(meta["L"]), n=int(meta["n"]))
    if raw.size != grid.n**2:
        raise ParameterDomainError(
            f"{path} holds {raw.size} values, sidecar promises {grid.n}x{grid.n}"
        )
    return ComplexField2D(grid, raw.reshape(grid.n, grid.n))
