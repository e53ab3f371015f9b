"""Periodic grid, FFT-backed fields and Fourier-multiplier operators.

The computational domain is the torus [-L, L) sampled at N uniform points,
so the discrete (angular) frequencies are xi_k = k*pi/L for
k = -N/2, ..., N/2 - 1, stored in numpy fft order.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import GridMismatchError


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on [-L, L) with N points (N even, >= 16)."""

    half_length: float
    n_points: int

    def __post_init__(self):
        if not self.half_length > 0:
            raise ValueError(f"half_length must be positive, got {self.half_length}")
        n = self.n_points
        if n < 16 or n % 2 != 0:
            raise ValueError(f"n_points must be even and >= 16, got {n}")

    @property
    def dx(self):
        return 2.0 * self.half_length / self.n_points

    @cached_property
    def x(self):
        # sample points x_i = -L + i*dx
        pts = -self.half_length + self.dx * np.arange(self.n_points)
        pts.setflags(write=False)
        return pts

    @cached_property
    def modes(self):
        # integer mode numbers k in fft order
        k = np.fft.fftfreq(self.n_points, d=1.0 / self.n_points)
        k.setflags(write=False)
        return k

    @cached_property
    def xi(self):
        # angular frequencies xi_k = k*pi/L in fft order
        freqs = self.modes * (np.pi / self.half_length)
        freqs.setflags(write=False)
        return freqs

    @property
    def nyquist(self):
        return (self.n_points / 2) * np.pi / self.half_length


def make_grid(half_length, n_points):
    """Build a Grid, validating parity and positivity."""
    return Grid(float(half_length), int(n_points))


@dataclass(frozen=True, eq=False)
class Field:
    """Real-valued samples of a function on a Grid. Immutable."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (self.grid.n_points,):
            raise ValueError(
                f"values shape {vals.shape} does not match grid with N={self.grid.n_points}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("field values must be finite")
        if vals is self.values and vals.flags.writeable:
            vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, grid, fn):
        return cls(grid, fn(grid.x))

    @classmethod
    def from_spectrum(cls, grid, spectrum):
        """Inverse transform, discarding the (tiny) imaginary round-off part."""
        return cls(grid, np.fft.ifft(spectrum).real)

    @classmethod
    def zeros(cls, grid):
        return cls(grid, np.zeros(grid.n_points))

    def spectrum(self):
        return np.fft.fft(self.values)

    def __add__(self, other):
        if isinstance(other, Field):
            _check_same_grid(self, other)
            return Field(self.grid, self.values + other.values)
        return Field(self.grid, self.values + other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Field):
            _check_same_grid(self, other)
            return Field(self.grid, self.values - other.values)
        return Field(self.grid, self.values - other)

    def __mul__(self, other):
        if isinstance(other, Field):
            _check_same_grid(self, other)
            return Field(self.grid, self.values * other.values)
        return Field(self.grid, self.values * other)

    __rmul__ = __mul__

    def __neg__(self):
        return Field(self.grid, -self.values)


@dataclass(frozen=True, eq=False)
class Multiplier:
    """Per-frequency gains (fft order); complex gains allowed (e.g. i*xi)."""

    grid: Grid
    gains: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.gains)
        if g.shape != (self.grid.n_points,):
            raise ValueError("gains length must equal grid.n_points")
        if g.flags.writeable:
            g = g.copy()
        g.setflags(write=False)
        object.__setattr__(self, "gains", g)

    @classmethod
    def from_symbol(cls, grid, symbol):
        """Tabulate symbol(xi) at the grid frequencies."""
        return cls(grid, symbol(grid.xi))


def _check_same_grid(a, b):
    if a.grid != b.grid:
        raise GridMismatchError(
            f"objects live on different grids: {a.grid} vs {b.grid}"
        )


def apply_multiplier(f, m):
    """Multiply the spectrum of f by the gains of m."""
    _check_same_grid(f, m)
    return Field.from_spectrum(f.grid, m.gains * f.spectrum())


def derivative_multiplier(grid):
    """The spectral derivative i*xi with the Nyquist mode zeroed."""
    gains = 1j * grid.xi
    gains[np.abs(grid.modes) == grid.n_points // 2] = 0.0
    return Multiplier(grid, gains)


def derivative(f):
    """Spectral differentiation; exact for band-limited fields.

    Uses the real transform (fields are real-valued), with the Nyquist mode
    zeroed exactly as in derivative_multiplier.
    """
    grid = f.grid
    n = grid.n_points
    gains = 1j * np.arange(n // 2 + 1) * (np.pi / grid.half_length)
    gains[-1] = 0.0
    out = np.fft.irfft(gains * np.fft.rfft(f.values), n=n)
    out.setflags(write=False)
    return Field(grid, out)


def antiderivative(f):
    """Zero-mean spectral antiderivative (gain 1/(i*xi), zero at xi=0 and Nyquist)."""
    grid = f.grid
    gains = np.zeros(grid.n_points, dtype=complex)
    nz = grid.xi != 0.0
    gains[nz] = 1.0 / (1j * grid.xi[nz])
    gains[np.abs(grid.modes) == grid.n_points // 2] = 0.0
    return apply_multiplier(f, Multiplier(grid, gains))


def dealias_mask(grid, keep_fraction):
    """Boolean mask of retained modes: |k| <= keep_fraction * N/2."""
    if not 0.0 < keep_fraction <= 1.0:
        raise ValueError(f"keep_fraction must lie in (0, 1], got {keep_fraction}")
    return np.abs(grid.modes) <= keep_fraction * grid.n_points / 2


def dealias(f, keep_fraction):
    """Zero all modes with |k| > keep_fraction * N/2. Idempotent."""
    mask = dealias_mask(f.grid, keep_fraction)
    return Field.from_spectrum(f.grid, np.where(mask, f.spectrum(), 0.0))


def synthesize_from_transform(grid, transform_values):
    """Sample a continuous-transform table onto the grid via Poisson summation.

    Given values of the continuous Fourier transform F(xi_k) at the grid
    frequencies, returns the periodization of the underlying function:
    f(x_j) = (1/2L) * sum_k F(xi_k) e^{i xi_k x_j}.  Exact for transforms
    supported inside the resolved band.
    """
    transform_values = np.asarray(transform_values, dtype=complex)
    # phase (-1)^k accounts for the x-origin at -L rather than 0
    phase = np.where(np.asarray(grid.modes, dtype=np.int64) % 2 == 0, 1.0, -1.0)
    scale = grid.n_points / (2.0 * grid.half_length)
    return Field.from_spectrum(grid, scale * transform_values * phase)
