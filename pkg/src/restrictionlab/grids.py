"""Uniform grids, sampled fields, and the lattice Fourier transform.

A GridSpec describes the symmetric box [-L, L)^d sampled at N points per
axis. Its frequency lattice has spacing 1/(2L) and reaches the Nyquist
frequency N/(4L); transforming a field on the grid to that lattice is an
exact rearrangement of the DFT (checkerboard signs absorb the -L offset),
so grid transforms and direct summation agree to rounding error.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["GridSpec", "SampledField", "fourier_on_grid", "inverse_fourier_on_grid", "dual_grid"]


@dataclass(frozen=True)
class GridSpec:
    """Symmetric uniform grid on [-L, L)^d with N (power of two) points per axis."""

    dim: int
    half_width: float
    points_per_axis: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")
        n = self.points_per_axis
        if n < 8 or (n & (n - 1)) != 0:
            raise ValueError("points_per_axis must be a power of two, at least 8")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.points_per_axis

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    @property
    def freq_spacing(self) -> float:
        return 1.0 / (2.0 * self.half_width)

    @property
    def nyquist(self) -> float:
        return self.points_per_axis / (4.0 * self.half_width)

    def axis(self) -> np.ndarray:
        """Sample points -L + k*spacing, k = 0..N-1."""
        return -self.half_width + self.spacing * np.arange(self.points_per_axis)

    def freq_axis(self) -> np.ndarray:
        """Frequency lattice m/(2L), m = -N/2..N/2-1."""
        n = self.points_per_axis
        return (np.arange(n) - n // 2) * self.freq_spacing

    def mesh(self) -> tuple:
        return np.meshgrid(*([self.axis()] * self.dim), indexing="ij")

    def freq_mesh(self) -> tuple:
        return np.meshgrid(*([self.freq_axis()] * self.dim), indexing="ij")

    def points(self) -> np.ndarray:
        """All grid points as an (N^d, d) array."""
        return np.stack([m.ravel() for m in self.mesh()], axis=1)


@dataclass(frozen=True)
class SampledField:
    """Complex samples of a function on a uniform grid.

    origin[i] is the coordinate of index 0 along axis i and spacing[i] the
    step; cell_volume is the product of spacings. Values are stored as a
    d-dimensional complex array.
    """

    values: np.ndarray
    origin: tuple
    spacing: tuple
    label: str = ""

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", v)
        if v.ndim != len(self.origin) or v.ndim != len(self.spacing):
            raise ValueError("origin/spacing arity must match value dimensions")
        if any(s <= 0 for s in self.spacing):
            raise ValueError("spacings must be positive")
        if not np.all(np.isfinite(v.view(float))):
            raise ValueError("field values must be finite")

    @property
    def dim(self) -> int:
        return self.values.ndim

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    @classmethod
    def on_grid(cls, grid: GridSpec, values: np.ndarray, label: str = "") -> "SampledField":
        return cls(
            values=np.asarray(values, dtype=complex),
            origin=(-grid.half_width,) * grid.dim,
            spacing=(grid.spacing,) * grid.dim,
            label=label,
        )


def _sign_vector(n: int) -> np.ndarray:
    # (-1)^m for m = -N/2..N/2-1; parity of |m| = parity of m
    return (-1.0) ** np.abs(np.arange(n) - n // 2)


def _sign_mesh(n: int, d: int) -> np.ndarray:
    s = _sign_vector(n)
    out = s
    for _ in range(d - 1):
        out = np.multiply.outer(out, s)
    return out


def fourier_on_grid(values: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Riemann-sum Fourier transform sampled on the frequency lattice.

    Returns F(xi_m) = sum_k f(x_k) exp(-2 pi i <x_k, xi_m>) h^d for
    xi_m = m/(2L), m = -N/2..N/2-1 per axis, as an N^d array in that order.
    """
    v = np.asarray(values, dtype=complex)
    n, d = grid.points_per_axis, grid.dim
    if v.shape != (n,) * d:
        raise ValueError("value shape does not match grid")
    f = np.fft.fftshift(np.fft.fftn(v))
    return grid.cell_volume * _sign_mesh(n, d) * f


def inverse_fourier_on_grid(freq_values: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Inverse of fourier_on_grid (frequency lattice back to the spatial grid)."""
    F = np.asarray(freq_values, dtype=complex)
    n, d = grid.points_per_axis, grid.dim
    if F.shape != (n,) * d:
        raise ValueError("value shape does not match grid")
    scale = (n * grid.freq_spacing) ** d  # = (N/(2L))^d
    return scale * np.fft.ifftn(np.fft.ifftshift(_sign_mesh(n, d) * F))


def dual_grid(grid: GridSpec) -> GridSpec:
    """The frequency lattice of `grid`, itself as a GridSpec.

    Same point count; half-width equals the Nyquist frequency, so its
    spacing is 1/(2L).
    """
    return GridSpec(grid.dim, grid.nyquist, grid.points_per_axis)
