"""CLI behaviour: exit codes, config handling, deterministic outputs."""

import json
import os

import numpy as np
import pytest

from besovlab.cli import ConfigError, load_config, main


def run(args):
    return main(list(args))


def test_unknown_subcommand(capsys):
    assert run(["frobnicate"]) == 2


def test_r_inf_rejected(tmp_path, capsys):
    rc = run(["gap", "--r", "inf", "--out", str(tmp_path / "o")])
    captured = capsys.readouterr()
    assert rc == 2
    assert "out of scope" in captured.err
    assert not (tmp_path / "o").exists()  # rejected configs write nothing


def test_condition_14_rejected(tmp_path, capsys):
    rc = run(["lemmas", "--s", "0.9", "--out", str(tmp_path / "o")])
    assert rc == 2
    assert "s > 1" in capsys.readouterr().err
    assert not (tmp_path / "o").exists()


def test_missing_config(tmp_path, capsys):
    rc = run(["lemmas", "--config", str(tmp_path / "nope.json")])
    assert rc == 2
    assert "not found" in capsys.readouterr().err


def test_load_config_parse_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError) as info:
        load_config(str(path))
    assert "line" in str(info.value)


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": 2, "n": "3,4", "out": str(tmp_path / "a")}))
    rc = run(["cutoffs", "--config", str(cfg), "--out", str(tmp_path / "b"),
              "--L", "16", "--N", "512"])
    assert rc == 0
    # the flag wins over the file value
    assert (tmp_path / "b" / "manifest.json").exists()
    assert not (tmp_path / "a").exists()


def test_cutoffs_outputs(tmp_path):
    out = tmp_path / "cut"
    assert run(["cutoffs", "--out", str(out), "--svg"]) == 0
    names = sorted(os.listdir(out))
    assert names == ["cutoffs.csv", "cutoffs.svg", "manifest.json"]
    lines = (out / "cutoffs.csv").read_text().splitlines()
    assert lines[0].startswith("# schema=besovlab-1/")
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["constants"]["partition_residual"] <= 1e-12
    assert "oracle_constants_sha256" in manifest


def test_solve_constant_flat(tmp_path, capsys):
    out = tmp_path / "sol"
    rc = run(["solve", "--kind", "ch", "--constant", "0.3", "--T", "0.5",
              "--out", str(out), "--dump"])
    assert rc == 0
    assert "energy_rel_drift=0.000e+00" in capsys.readouterr().out
    raw = np.fromfile(out / "final_state.f64", dtype="<f8")
    assert np.all(raw == 0.3)
    sidecar = json.loads((out / "final_state.json").read_text())
    assert sidecar["t"] == 0.5


def test_families_dump_roundtrip(tmp_path):
    out = tmp_path / "fam"
    assert run(["families", "--kind", "ch", "--n", "3", "--out", str(out),
                "--dump"]) == 0
    raw = np.fromfile(out / "family_ch_n3_high.f64", dtype="<f8")
    sidecar = json.loads((out / "family_ch_n3_high.json").read_text())
    assert len(raw) == sidecar["n_points"] == 2**17
    assert np.max(np.abs(raw)) < 2.0 ** (-3 * 1.7) * 0.2  # amp * envelope peak


def test_determinism_byte_identical(tmp_path):
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    for out in (out1, out2):
        assert run(["cutoffs", "--out", str(out)]) == 0
    assert (out1 / "cutoffs.csv").read_bytes() == (out2 / "cutoffs.csv").read_bytes()


def test_report_merge(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(["cutoffs", "--out", str(a)]) == 0
    assert run(["cutoffs", "--out", str(b)]) == 0
    merged = tmp_path / "merged"
    assert run(["report", str(a), str(b), "--out", str(merged)]) == 0
    payload = json.loads((merged / "manifest.json").read_text())
    assert payload["all_passed"] is True
    assert set(payload["manifests"]) == {str(a), str(b)}


def test_report_missing_manifest(tmp_path, capsys):
    os.makedirs(tmp_path / "empty")
    assert run(["report", str(tmp_path / "empty")]) == 2
