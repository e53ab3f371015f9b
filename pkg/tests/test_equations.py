"""Closed-form oracles for the nonlocal operators of both equations."""

import numpy as np
import pytest

from besovlab.equations import (
    EquationKind,
    ch_source,
    drift,
    helmholtz_inverse,
    novikov_sources,
    rhs,
)
from besovlab.spectral import Field, make_grid


@pytest.fixture(scope="module")
def grid():
    return make_grid(np.pi, 512)


def _sin(grid):
    return Field.from_function(grid, np.sin)


def test_helmholtz_inverse_eigenfunction(grid):
    f = Field.from_function(grid, lambda x: np.cos(2 * x))
    g = helmholtz_inverse(f)
    assert np.max(np.abs(g.values - np.cos(2 * grid.x) / 5.0)) < 1e-13


def test_ch_source_of_sine(grid):
    # P(sin) = -d/dx (1-d2)^{-1} (sin^2 + cos^2/2) = -sin(2x)/10:
    # sin^2 + cos^2/2 = 3/4 - cos(2x)/4; (1-d2)^{-1} cos2x = cos2x/5
    p = ch_source(_sin(grid))
    assert np.max(np.abs(p.values - (-np.sin(2 * grid.x) / 10.0))) < 1e-12


def test_ch_rhs_of_sine(grid):
    # -u u_x + P(u) = -sin cos - sin(2x)/10 = -(3/5) sin(2x) ... with
    # sin cos = sin(2x)/2: total = -(1/2 + 1/10) sin 2x = -(3/5) sin 2x
    r = rhs(EquationKind.CAMASSA_HOLM, _sin(grid))
    assert np.max(np.abs(r.values - (-(3.0 / 5.0) * np.sin(2 * grid.x)))) < 1e-12


def test_novikov_q1_of_sine(grid):
    # Q1(sin) = -(1/2)(1-d2)^{-1} cos^3 = -(3/16)cos x - (1/80)cos 3x
    q1, _ = novikov_sources(_sin(grid))
    expected = -(3.0 / 16.0) * np.cos(grid.x) - (1.0 / 80.0) * np.cos(3 * grid.x)
    assert np.max(np.abs(q1.values - expected)) < 1e-12


def test_novikov_q2_of_sine(grid):
    # 3/2 sin cos^2 + sin^3 = (9/8) sin x + (1/8) sin 3x (expand in harmonics);
    # Q2 = -d/dx (1-d2)^{-1} of that = -(9/16) cos x - (3/80) cos 3x
    _, q2 = novikov_sources(_sin(grid))
    expected = -(9.0 / 16.0) * np.cos(grid.x) - (3.0 / 80.0) * np.cos(3 * grid.x)
    assert np.max(np.abs(q2.values - expected)) < 1e-12


def test_novikov_rhs_of_sine(grid):
    # -u^2 u_x = -sin^2 cos = -(1/4)(cos x - cos 3x); total rhs = advection + Q1 + Q2
    r = rhs(EquationKind.NOVIKOV, _sin(grid))
    adv = -0.25 * (np.cos(grid.x) - np.cos(3 * grid.x))
    q1 = -(3.0 / 16.0) * np.cos(grid.x) - (1.0 / 80.0) * np.cos(3 * grid.x)
    q2 = -(9.0 / 16.0) * np.cos(grid.x) - (3.0 / 80.0) * np.cos(3 * grid.x)
    assert np.max(np.abs(r.values - (adv + q1 + q2))) < 1e-12


def test_constant_is_steady(grid):
    c = Field(grid, np.full(grid.n_points, 0.7))
    for kind in EquationKind:
        assert np.max(np.abs(rhs(kind, c).values)) < 1e-13


def test_drift_forms(grid):
    u = _sin(grid)
    d_ch = drift(EquationKind.CAMASSA_HOLM, u)
    assert np.max(np.abs(d_ch.values - (-0.5 * np.sin(2 * grid.x)))) < 1e-12
    d_nov = drift(EquationKind.NOVIKOV, u)
    expected = -0.25 * (np.cos(grid.x) - np.cos(3 * grid.x))
    assert np.max(np.abs(d_nov.values - expected)) < 1e-12


def test_kind_properties():
    ch, nov = EquationKind.CAMASSA_HOLM, EquationKind.NOVIKOV
    assert ch.value == "ch" and nov.value == "novikov"
    assert ch.nonlinearity_degree == 2 and nov.nonlinearity_degree == 3
    assert ch.dealias_fraction == pytest.approx(2.0 / 3.0)
    assert nov.dealias_fraction == pytest.approx(0.5)


def test_rhs_band_limited(grid):
    # the dealiased rhs of band-limited data carries no energy above the
    # retained band
    u = Field.from_function(grid, lambda x: np.sin(40 * x))
    r = rhs(EquationKind.CAMASSA_HOLM, u)
    spec = np.abs(np.fft.rfft(r.values))
    k = np.arange(len(spec))
    outside = spec[k > (2.0 / 3.0) * (grid.n_points / 2)]
    assert np.max(outside) / np.max(spec) < 1e-13
