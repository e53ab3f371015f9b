"""High/low frequency data families and automatic grid sizing.

The carrier sits at (17/12) 2^n; the envelope is the inverse transform of the
canonical bump, dilated by 2^{delta n} with delta = p/2 (quadratic equation)
or p/3 (cubic equation).  Amplitudes:

    high: 2^{-n(s+1/2)} env * sin(carrier x)   resp. 2^{-n(s+1/3)} ...
    low:  2^{-n} env                           resp. 2^{-n/2} env
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .besov import envelope_hat_profile
from .equations import EquationKind
from .errors import ConfigurationError, ResourceCapError
from .spectral import Field, make_grid, synthesize_from_transform

CARRIER_FACTOR = 17.0 / 12.0

# default grid-size cap; the n=6 quadratic family already needs 2^23 points
DEFAULT_N_CAP = 2**23


@dataclass(frozen=True)
class FamilyParams:
    """Dyadic index n plus the Besov parameters fixing one data pair."""

    n: int
    s: float
    p: float
    delta: float
    kind: EquationKind

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"n must be >= 3, got {self.n}")
        if not 1 <= self.p < math.inf:
            raise ValueError(f"p must lie in [1, inf), got {self.p}")
        if self.delta <= 0:
            raise ValueError("delta must be positive")

    @classmethod
    def for_kind(cls, kind, n, s, p):
        delta = p / 2.0 if kind is EquationKind.CAMASSA_HOLM else p / 3.0
        return cls(n=n, s=s, p=p, delta=delta, kind=kind)

    @property
    def carrier(self):
        return CARRIER_FACTOR * 2.0**self.n

    @property
    def high_amplitude(self):
        if self.kind is EquationKind.CAMASSA_HOLM:
            return 2.0 ** (-self.n * (self.s + 0.5))
        return 2.0 ** (-self.n * (self.s + 1.0 / 3.0))

    @property
    def low_amplitude(self):
        if self.kind is EquationKind.CAMASSA_HOLM:
            return 2.0 ** (-self.n)
        return 2.0 ** (-self.n / 2.0)


def _scaled_envelope_values(grid, width):
    """Samples of env(x / width) via its transform width * env_hat(width xi).

    The transform table is real and even, so the Poisson synthesis reduces to
    an irfft of the non-negative frequencies (cf. synthesize_from_transform).
    """
    n = grid.n_points
    xi_half = np.arange(n // 2 + 1) * (np.pi / grid.half_length)
    table = width * envelope_hat_profile(width * xi_half)
    phase = np.where(np.arange(n // 2 + 1) % 2 == 0, 1.0, -1.0)
    scale = n / (2.0 * grid.half_length)
    return np.fft.irfft(scale * table * phase, n=n)


@lru_cache(maxsize=8)
def envelope_half_width(tail_tol=1e-10):
    """Measured |x| beyond which |env| <= tail_tol * env(0) (unit width)."""
    if not 0 < tail_tol <= 1e-6:
        raise ValueError(f"tail_tol must lie in (0, 1e-6], got {tail_tol}")
    ref = make_grid(1024.0, 2**19)
    vals = np.abs(_scaled_envelope_values(ref, 1.0))
    peak = vals[ref.n_points // 2]
    above = np.abs(ref.x[vals > tail_tol * peak])
    xc = float(np.max(above))
    if xc >= 0.9 * ref.half_length:
        raise ConfigurationError(
            f"envelope tail does not reach {tail_tol:g} inside the reference domain"
        )
    return xc


def synthesize_envelope(grid, cs):
    """Unit-width envelope on the grid (inverse transform of the bump table)."""
    n_inside = int(np.sum(np.abs(grid.xi) <= 0.5))
    if n_inside < 32:
        raise ConfigurationError(
            f"grid resolves only {n_inside} modes inside |xi| <= 1/2 (need >= 32)"
        )
    vals = synthesize_from_transform(grid, cs.envelope_hat(grid.xi)).values
    peak = np.abs(vals[grid.n_points // 2])
    boundary = abs(vals[0])
    if boundary > 1e-10 * peak:
        raise ConfigurationError(
            f"envelope boundary value {boundary:.3e} exceeds 1e-10 * env(0) = "
            f"{1e-10 * peak:.3e}; enlarge the domain"
        )
    return Field(grid, vals)


def recommend_grid(params, tail_tol=1e-10, n_cap=DEFAULT_N_CAP):
    """Smallest power-of-two grid meeting tail and Nyquist requirements."""
    xc = envelope_half_width(tail_tol)
    width = 2.0**(params.delta * params.n)
    half_length = float(math.ceil(width * xc))
    xi_needed = params.kind.nyquist_ratio * params.carrier
    n_min = 2.0 * half_length * xi_needed / np.pi
    n_points = max(16, 2 ** math.ceil(math.log2(n_min)))
    if n_points > n_cap:
        raise ResourceCapError(
            f"family n={params.n} needs N={n_points} > cap {n_cap}",
            limiting_n=params.n,
        )
    return make_grid(half_length, n_points)


def _band_energy_fraction(values, grid, lo, hi):
    """Fraction of spectral energy outside the band lo <= |xi| <= hi.

    Works on the rfft half-spectrum (real data), so the transient cost is one
    complex array of N/2 + 1 entries instead of two full-length ones.
    """
    power = np.abs(np.fft.rfft(values)) ** 2
    xi_half = np.arange(len(power)) * (np.pi / grid.half_length)
    total = float(np.sum(power))
    inside = (xi_half >= lo) & (xi_half <= hi)
    return float(np.sum(power[~inside])) / total


def make_family(params, grid, cs):
    """Build the (high, low) data pair on the grid, verifying supports."""
    if cs.grid != grid:
        raise ConfigurationError("cutoff system was built for a different grid")
    width = 2.0**(params.delta * params.n)
    env = _scaled_envelope_values(grid, width)
    high_vals = params.high_amplitude * env * np.sin(params.carrier * grid.x)
    low_vals = params.low_amplitude * env
    del env
    # freeze in place so the Field constructor keeps these arrays un-copied
    high_vals.setflags(write=False)
    low_vals.setflags(write=False)

    # support containments: high inside [33/24, 35/24] 2^n, low inside the
    # ball of radius 2^{-1 - delta n}
    two_n = 2.0**params.n
    out_high = _band_energy_fraction(
        high_vals, grid, (33.0 / 24.0) * two_n, (35.0 / 24.0) * two_n
    )
    out_low = _band_energy_fraction(low_vals, grid, 0.0, 0.5 / width)
    if out_high > 1e-8 or out_low > 1e-8:
        raise ConfigurationError(
            f"spectral containment failed for n={params.n}: out-of-band energy "
            f"high={out_high:.3e}, low={out_low:.3e} (tolerance 1e-8)"
        )
    return Field(grid, high_vals), Field(grid, low_vals)
