"""Equation-specific operators for the transport forms of both equations.

Camassa-Holm:  u_t + u u_x = P(u),  P(u) = -d/dx (1-d2/dx2)^{-1} (u^2 + u_x^2/2)
Novikov:       u_t + u^2 u_x = Q1(u) + Q2(u),
               Q1(u) = -(1/2) (1-d2/dx2)^{-1} u_x^3,
               Q2(u) = -d/dx (1-d2/dx2)^{-1} (3/2 u u_x^2 + u^3)

Pointwise products are formed in physical space after zeroing the top modes
(2/3 rule for the quadratic equation, 1/2 rule for the cubic one); linear
operators act in spectral space.  The hot path works on raw arrays through
numpy's real FFT; the public functions wrap it in Field objects.
"""

import enum
from functools import lru_cache

import numpy as np

from .spectral import Field


class EquationKind(enum.Enum):
    CAMASSA_HOLM = "ch"
    NOVIKOV = "novikov"

    @property
    def nonlinearity_degree(self):
        return 2 if self is EquationKind.CAMASSA_HOLM else 3

    @property
    def dealias_fraction(self):
        # alias-free fraction for quadratic vs cubic products
        return 2.0 / 3.0 if self is EquationKind.CAMASSA_HOLM else 0.5

    @property
    def nyquist_ratio(self):
        # resolved band above the carrier needed to hold the dealiased products
        return 3.0 if self is EquationKind.CAMASSA_HOLM else 4.0


@lru_cache(maxsize=32)
def _spectral_tables(grid):
    """Per-grid rfft-order frequency tables and dealias masks."""
    n = grid.n_points
    k = np.arange(n // 2 + 1)
    xi = k * np.pi / grid.half_length
    ik = 1j * xi
    ik[-1] = 0.0  # Nyquist derivative zeroed
    helm = 1.0 / (1.0 + xi**2)
    mask23 = (k <= (2.0 / 3.0) * (n / 2)).astype(float)
    mask12 = (k <= 0.5 * (n / 2)).astype(float)
    for arr in (xi, ik, helm, mask23, mask12):
        arr.setflags(write=False)
    return {"xi": xi, "ik": ik, "helm": helm, 2.0 / 3.0: mask23, 0.5: mask12}


def _truncated(grid, u, frac):
    """Dealiased samples and their derivative (array-level)."""
    tab = _spectral_tables(grid)
    mask = tab[frac]
    fm = np.fft.rfft(u) * mask
    ut = np.fft.irfft(fm, n=grid.n_points)
    ux = np.fft.irfft(tab["ik"] * fm, n=grid.n_points)
    return ut, ux


def _ch_source_values(grid, u):
    tab = _spectral_tables(grid)
    mask = tab[2.0 / 3.0]
    ut, ux = _truncated(grid, u, 2.0 / 3.0)
    src = ut * ut + 0.5 * ux * ux
    shat = np.fft.rfft(src) * mask
    return np.fft.irfft(-tab["ik"] * tab["helm"] * shat, n=grid.n_points)


def _novikov_source_values(grid, u):
    tab = _spectral_tables(grid)
    mask = tab[0.5]
    ut, ux = _truncated(grid, u, 0.5)
    q1_hat = -0.5 * tab["helm"] * (np.fft.rfft(ux**3) * mask)
    q2_hat = -tab["ik"] * tab["helm"] * (np.fft.rfft(1.5 * ut * ux**2 + ut**3) * mask)
    n = grid.n_points
    return np.fft.irfft(q1_hat, n=n), np.fft.irfft(q2_hat, n=n)


def _rhs_values(kind, grid, u):
    tab = _spectral_tables(grid)
    n = grid.n_points
    if kind is EquationKind.CAMASSA_HOLM:
        mask = tab[2.0 / 3.0]
        ut, ux = _truncated(grid, u, 2.0 / 3.0)
        adv_hat = np.fft.rfft(ut * ux) * mask
        src_hat = np.fft.rfft(ut * ut + 0.5 * ux * ux) * mask
        return np.fft.irfft(-adv_hat - tab["ik"] * tab["helm"] * src_hat, n=n)
    mask = tab[0.5]
    ut, ux = _truncated(grid, u, 0.5)
    adv_hat = np.fft.rfft(ut * ut * ux) * mask
    q1_hat = -0.5 * tab["helm"] * (np.fft.rfft(ux**3) * mask)
    q2_hat = -tab["ik"] * tab["helm"] * (np.fft.rfft(1.5 * ut * ux**2 + ut**3) * mask)
    return np.fft.irfft(-adv_hat + q1_hat + q2_hat, n=n)


def _drift_values(kind, grid, u):
    frac = kind.dealias_fraction
    tab = _spectral_tables(grid)
    ut, ux = _truncated(grid, u, frac)
    prod = ut * ux if kind is EquationKind.CAMASSA_HOLM else ut * ut * ux
    phat = np.fft.rfft(prod) * tab[frac]
    return np.fft.irfft(-phat, n=grid.n_points)


def helmholtz_inverse(f):
    """(1 - d2/dx2)^{-1} as the multiplier 1/(1 + xi^2)."""
    tab = _spectral_tables(f.grid)
    out = np.fft.irfft(tab["helm"] * np.fft.rfft(f.values), n=f.grid.n_points)
    return Field(f.grid, out)


def ch_source(u):
    """The nonlocal Camassa-Holm source P(u)."""
    return Field(u.grid, _ch_source_values(u.grid, u.values))


def novikov_sources(u):
    """The pair (Q1(u), Q2(u)) of Novikov sources."""
    q1, q2 = _novikov_source_values(u.grid, u.values)
    return Field(u.grid, q1), Field(u.grid, q2)


def rhs(kind, u):
    """Full right-hand side of the transport form for the given equation."""
    return Field(u.grid, _rhs_values(kind, u.grid, u.values))


def drift(kind, u0):
    """First-order drift: -u0 u0_x (Camassa-Holm) or -u0^2 u0_x (Novikov)."""
    return Field(u0.grid, _drift_values(kind, u0.grid, u0.values))
