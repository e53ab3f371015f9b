"""Lemma suites and gap experiment at desk scale (small n, short t lists)."""

import numpy as np
import pytest

from besovlab.besov import BesovIndex
from besovlab.equations import EquationKind
from besovlab import experiments as ex

CH = EquationKind.CAMASSA_HOLM
NOV = EquationKind.NOVIKOV
IDX = BesovIndex(1.2, 2, 2)


@pytest.fixture(scope="module")
def constants():
    return ex.load_oracle_constants()


def test_oracle_constants_present(constants):
    for key in ("oscillation_limit", "oscillation_limit_cubic", "drift_law",
                "gap_floor", "apriori", "product_estimate_max", "envelope"):
        assert key in constants
    assert len(ex.oracle_constants_hash()) == 64


def test_abs_cos_moment():
    assert ex.abs_cos_moment(2) == pytest.approx(0.5, rel=1e-10)
    assert ex.abs_cos_moment(1) == pytest.approx(2.0 / np.pi, rel=1e-6)


def test_oscillation_limit_matches_oracle(constants):
    report = ex.run_oscillation_limit(2, n_list=(3, 4, 5))
    assert report.passed
    assert report.constants["measured_limit"] == pytest.approx(
        constants["oscillation_limit"]["p=2"], rel=1e-6
    )


def test_oscillation_limit_p1(constants):
    report = ex.run_oscillation_limit(1, n_list=(3, 4, 5))
    assert report.passed
    # the p = 1 limit is ||env^2||_L1 * (2/pi)
    expected = constants["envelope"]["env2_lp"]["p=1"] * 2.0 / np.pi
    assert report.constants["measured_limit"] == pytest.approx(expected, rel=1e-4)


@pytest.mark.parametrize("kind,rates", [
    (CH, {"m1_slope": -1.7, "m2_slope": -0.7, "m4_slope": -1.0, "m5_slope": -0.5}),
    (NOV, {"m1_slope": -(1.2 + 1 / 3), "m2_slope": -(1.2 - 2 / 3),
           "m4_slope": -0.5, "m5_slope": -1 / 6}),
])
def test_family_suite_quick(kind, rates):
    report = ex.run_family_suite(kind, IDX, n_list=(3, 4, 5))
    assert report.passed, report.failures
    for key, value in rates.items():
        assert report.constants[key] == pytest.approx(value, abs=0.05)
    assert report.constants["m3_slope_s"] == pytest.approx(0.0, abs=0.05)
    assert report.constants["m3_slope_sigma"] == pytest.approx(1.0, abs=0.05)


def test_family_suite_reports_thresholds():
    report = ex.run_family_suite(CH, IDX, n_list=(3, 4))
    for row in report.rows:
        assert row["identity_tol"] == 1e-8


def test_approx_suite_quick():
    report = ex.run_approx_suite(CH, IDX, n_list=(3, 4), t_list=(0.025, 0.05, 0.1))
    assert report.passed, report.failures
    assert report.constants["n_decay_exponent"] >= min(1.2 - 0.5, 2 * 0.2) - 0.1


def test_gap_quick_ch(constants):
    report = ex.run_gap(CH, IDX, n_list=(3, 4), t_list=(0.025, 0.1))
    assert report.passed, report.failures
    # t = 0 cells: separation equals the low norm exactly
    for cell in report.cells:
        if cell["t"] == 0.0:
            assert cell["sep"] == cell["low_norm"]
            assert cell["fn_err"] == 0.0 and cell["w_norm"] == 0.0
    assert report.constants["min_sep_over_t"] >= 0.9 * constants["gap_floor"]["ch"]
    for n in (3, 4):
        assert report.constants[f"w2_slope_n{n}"] >= 1.8


def test_gap_quick_novikov(constants):
    report = ex.run_gap(NOV, IDX, n_list=(3, 4), t_list=(0.025, 0.1))
    assert report.passed, report.failures
    assert report.constants["min_sep_over_t"] >= 0.9 * constants["gap_floor"]["novikov"]


def test_gap_incomplete_on_resource_cap():
    report = ex.run_gap(CH, IDX, n_list=(3, 6), t_list=(0.1,), n_cap=2**20)
    assert not report.complete
    assert not report.passed
    assert any("failed" in f for f in report.failures)


def test_product_estimate_corpus(constants):
    worst = ex.product_estimate_corpus(IDX, n_pairs=20)
    assert worst <= 1.0001 * constants["product_estimate_max"]


def test_drift_law_quick(constants):
    report = ex.run_drift_law(CH, IDX, t_list=(0.05, 0.1))
    assert report.passed, report.failures
    for row in report.rows:
        assert row["ratio_bound"] == pytest.approx(1.1 * constants["drift_law"]["ch"])


def test_worker_count(monkeypatch):
    monkeypatch.delenv("BESOVLAB_THREADS", raising=False)
    assert ex.worker_count() == 1
    monkeypatch.setenv("BESOVLAB_THREADS", "4")
    assert ex.worker_count() == 4
