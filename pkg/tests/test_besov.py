"""Littlewood-Paley cutoffs and Besov-norm engine."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besovlab.besov import (
    BesovIndex,
    besov_norm,
    block_norms,
    build_cutoffs,
    chi_profile,
    dyadic_sup_norm,
    envelope_hat_profile,
    lebesgue_norm,
    lipschitz_norm,
    lp_block,
    phi_profile,
    smooth_step,
)
from besovlab.errors import ConfigurationError, GridMismatchError, UnsupportedIndexError
from besovlab.spectral import Field, make_grid


@pytest.fixture(scope="module")
def grid():
    return make_grid(np.pi, 512)


@pytest.fixture(scope="module")
def cs(grid):
    return build_cutoffs(grid)


def test_smooth_step_endpoints():
    t = np.array([-1.0, 0.0, 0.5, 1.0, 2.0])
    h = smooth_step(t)
    assert h[0] == 0.0 and h[1] == 0.0
    assert h[3] == 1.0 and h[4] == 1.0
    assert 0.0 < h[2] < 1.0
    # monotone on [0, 1], strictly so away from the flat tails (where the
    # double-precision value saturates at exactly 0 or 1)
    fine = smooth_step(np.linspace(0.01, 0.99, 99))
    assert np.all(np.diff(fine) >= 0)
    mid = smooth_step(np.linspace(0.2, 0.8, 61))
    assert np.all(np.diff(mid) > 0)


def test_chi_phi_supports():
    xi = np.linspace(-6.0, 6.0, 4001)
    chi = chi_profile(xi)
    phi = phi_profile(xi)
    assert np.all(chi[np.abs(xi) <= 0.75] == 1.0)
    assert np.all(chi[np.abs(xi) >= 4.0 / 3.0] == 0.0)
    assert np.all(phi[np.abs(xi) <= 0.75] == 0.0)
    assert np.all(phi[np.abs(xi) >= 8.0 / 3.0] == 0.0)
    on = (np.abs(xi) >= 4.0 / 3.0) & (np.abs(xi) <= 1.5)
    assert np.max(np.abs(phi[on] - 1.0)) < 1e-15


def test_envelope_hat_support():
    xi = np.linspace(-2.0, 2.0, 2001)
    env = envelope_hat_profile(xi)
    assert np.all(env[np.abs(xi) <= 0.25] == 1.0)
    assert np.all(env[np.abs(xi) >= 0.5] == 0.0)
    assert np.all((env >= 0.0) & (env <= 1.0))


def test_partition_of_unity(grid, cs):
    total = chi_profile(grid.xi).astype(float)
    for j in range(cs.j_max + 1):
        total = total + phi_profile(grid.xi / 2.0**j)
    assert np.max(np.abs(total - 1.0)) < 1e-12


def test_blocks_telescope(grid, cs):
    rng = np.random.default_rng(11)
    f = Field(grid, rng.standard_normal(grid.n_points))
    recon = Field.zeros(grid)
    for j in range(-1, cs.j_max + 1):
        recon = recon + lp_block(f, j, cs)
    assert np.max(np.abs(recon.values - f.values)) < 1e-10


def test_block_out_of_range(grid, cs):
    f = Field.from_function(grid, np.sin)
    assert np.all(lp_block(f, -3, cs).values == 0.0)
    assert np.all(lp_block(f, cs.j_max + 1, cs).values == 0.0)


def test_single_mode_block_norms(grid, cs):
    # frequency 10 lies in the annulus where phi(2^-3 xi) = 1 (10/8 in [4/3, 3/2]... )
    # use xi = 11: 11/8 = 1.375 in [4/3, 3/2], so block j=3 captures it exactly
    f = Field.from_function(grid, lambda x: np.sin(11 * x))
    norms = block_norms(f, 2, cs)
    expected = math.sqrt(np.pi)  # ||sin||_L2 on [-pi, pi)
    assert norms[3 + 1] == pytest.approx(expected, rel=1e-12)
    others = np.delete(norms, 3 + 1)
    assert np.max(others) < 1e-12


def test_besov_norm_single_mode(grid, cs):
    f = Field.from_function(grid, lambda x: np.sin(11 * x))
    idx = BesovIndex(1.5, 2, 2)
    expected = 2.0 ** (1.5 * 3) * math.sqrt(np.pi)
    assert besov_norm(f, idx, cs) == pytest.approx(expected, rel=1e-12)
    # the sigma override shifts the weight
    assert besov_norm(f, idx, cs, s=2.5) == pytest.approx(2.0**3 * expected, rel=1e-12)
    assert dyadic_sup_norm(f, 1.5, 2, cs) == pytest.approx(expected, rel=1e-12)


def test_fast_l2_path_matches_quadrature(grid, cs):
    rng = np.random.default_rng(3)
    f = Field(grid, rng.standard_normal(grid.n_points))
    fast = block_norms(f, 2, cs)
    slow = np.array(
        [lebesgue_norm(lp_block(f, j, cs), 2) for j in range(-1, cs.j_max + 1)]
    )
    assert np.max(np.abs(fast - slow)) < 1e-12


def test_besov_norm_r_inf_unsupported(grid, cs):
    f = Field.from_function(grid, np.sin)
    idx = BesovIndex(1.2, 2, np.inf)
    with pytest.raises(UnsupportedIndexError):
        besov_norm(f, idx, cs)


def test_index_validation():
    with pytest.raises(ValueError):
        BesovIndex(1.2, 0.5, 2)
    with pytest.raises(ValueError):
        BesovIndex(1.2, 2, 0.5)


def test_lebesgue_norms(grid):
    f = Field.from_function(grid, np.sin)
    assert lebesgue_norm(f, np.inf) == pytest.approx(1.0, abs=1e-4)
    assert lebesgue_norm(f, 2) == pytest.approx(math.sqrt(np.pi), rel=1e-12)
    assert lebesgue_norm(f, 1) == pytest.approx(4.0, rel=1e-4)
    with pytest.raises(ValueError):
        lebesgue_norm(f, 0.5)


def test_lipschitz_norm(grid):
    f = Field.from_function(grid, lambda x: np.sin(3 * x))
    assert lipschitz_norm(f) == pytest.approx(4.0, abs=1e-3)


def test_grid_mismatch(grid, cs):
    other = Field.from_function(make_grid(np.pi, 256), np.sin)
    with pytest.raises(GridMismatchError):
        lp_block(other, 0, cs)


def test_too_coarse_grid_rejected():
    with pytest.raises(ConfigurationError):
        build_cutoffs(make_grid(100.0, 16))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31 - 1), st.floats(1.0, 3.0))
def test_besov_triangle_inequality(seed, s):
    grid = make_grid(np.pi, 128)
    cs = build_cutoffs(grid)
    rng = np.random.default_rng(seed)
    f = Field(grid, rng.standard_normal(grid.n_points))
    g = Field(grid, rng.standard_normal(grid.n_points))
    idx = BesovIndex(s, 2, 2)
    lhs = besov_norm(f + g, idx, cs)
    rhs = besov_norm(f, idx, cs) + besov_norm(g, idx, cs)
    assert lhs <= rhs * (1 + 1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_besov_l2_comparable_to_h_s(seed):
    # for p = r = 2 the Besov norm is equivalent to the Sobolev norm; check
    # two-sided comparability with the explicit weight (1 + xi^2)^{s/2}
    grid = make_grid(np.pi, 128)
    cs = build_cutoffs(grid)
    rng = np.random.default_rng(seed)
    f = Field(grid, rng.standard_normal(grid.n_points))
    s = 1.4
    spec = f.spectrum()
    weight = (1.0 + grid.xi**2) ** (s / 2.0)
    sobolev = math.sqrt(
        float(np.sum(np.abs(weight * spec) ** 2)) * grid.dx / grid.n_points
    )
    bes = besov_norm(f, BesovIndex(s, 2, 2), cs)
    assert 0.05 * sobolev <= bes <= 20.0 * sobolev
