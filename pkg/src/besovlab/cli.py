"""Command-line front end: configuration, experiment dispatch, persistence.

Exit codes: 0 all assertions passed, 1 at least one assertion failed (reports
are still written), 2 configuration error (nothing is written).
"""

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .besov import BesovIndex, build_cutoffs, chi_profile, envelope_hat_profile, phi_profile
from .equations import EquationKind
from .errors import BesovLabError
from .experiments import (
    DEFAULT_N_LIST,
    DEFAULT_T_LIST,
    LARGE_N_LIST,
    oracle_constants_hash,
    run_approx_suite,
    run_family_suite,
    run_gap,
    run_oscillation_limit,
)
from .families import FamilyParams, make_family, recommend_grid
from .reporting import file_sha256, write_csv, write_field_dump, write_manifest, write_svg_lines
from .spectral import Field, make_grid
from .timestepping import SolveConfig, solve

SCHEMA_VERSION = "besovlab-1"


class ConfigError(Exception):
    pass


def _parse_list(text, cast):
    return tuple(cast(tok) for tok in str(text).split(",") if tok != "")


def load_config(path):
    """Read a JSON config file into a flat dict of defaults."""
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config parse error in {path}: line {exc.lineno}: {exc.msg}")
    if not isinstance(cfg, dict):
        raise ConfigError(f"config root must be an object, got {type(cfg).__name__}")
    return cfg


def _resolve(args, cfg, key, default):
    value = getattr(args, key.replace("-", "_"), None)
    if value is not None:
        return value
    if key in cfg:
        return cfg[key]
    return default


def _validate_index(s, p, r):
    if isinstance(r, str) and r.lower() in ("inf", "infinity"):
        r = math.inf
    s, p, r = float(s), float(p), float(r)
    if r == math.inf:
        raise ConfigError("r=∞ out of scope: the norm engine covers r in [1, ∞)")
    if not s > 1:
        raise ConfigError(f"condition (1.4) requires s > 1, got s={s:g}")
    if not 1 <= p < math.inf:
        raise ConfigError(f"p must lie in [1, ∞), got p={p:g}")
    if not 1 <= r < math.inf:
        raise ConfigError(f"r must lie in [1, ∞), got r={r:g}")
    return BesovIndex(s, p, r)


def _kind(text):
    try:
        return EquationKind(text)
    except ValueError:
        raise ConfigError(f"unknown kind {text!r}; use 'ch' or 'novikov'")


def _common_setup(args):
    cfg = load_config(args.config) if args.config else {}
    idx = _validate_index(
        _resolve(args, cfg, "s", 1.2), _resolve(args, cfg, "p", 2), _resolve(args, cfg, "r", 2)
    )
    mode = _resolve(args, cfg, "mode", "default")
    if mode not in ("default", "large"):
        raise ConfigError(f"mode must be 'default' or 'large', got {mode!r}")
    n_default = LARGE_N_LIST if mode == "large" else DEFAULT_N_LIST
    n_raw = _resolve(args, cfg, "n", None)
    n_list = _parse_list(n_raw, int) if n_raw is not None else n_default
    if not n_list or any(n < 3 for n in n_list):
        raise ConfigError(f"n list must be nonempty with entries >= 3, got {n_list}")
    t_raw = _resolve(args, cfg, "t", None)
    t_list = _parse_list(t_raw, float) if t_raw is not None else DEFAULT_T_LIST
    if any(t < 0 or t > 1 for t in t_list):
        raise ConfigError(f"t list entries must lie in [0, 1], got {t_list}")
    out_dir = _resolve(args, cfg, "out", "out")
    return cfg, idx, n_list, t_list, out_dir


def _emit_report(out_dir, name, report, header, rows, manifest_extra, svg=None):
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{name}.csv")
    write_csv(csv_path, f"{SCHEMA_VERSION}/{name}", header, rows)
    files = {f"{name}.csv": file_sha256(csv_path)}
    if svg:
        svg_path = os.path.join(out_dir, f"{name}.svg")
        write_svg_lines(svg_path, svg["series"], title=svg.get("title", name))
        files[f"{name}.svg"] = file_sha256(svg_path)
    payload = {
        "version": __version__,
        "schema": f"{SCHEMA_VERSION}/{name}",
        "oracle_constants_sha256": oracle_constants_hash(),
        "files": files,
        "constants": getattr(report, "constants", {}),
        "failures": getattr(report, "failures", []),
        "complete": getattr(report, "complete", True),
    }
    payload.update(manifest_extra)
    write_manifest(out_dir, payload)
    return csv_path


def _finish(report, label):
    if getattr(report, "passed", True):
        print(f"{label}: PASS")
        return 0
    for failure in report.failures:
        print(f"{label}: FAIL {failure}")
    if not report.complete:
        print(f"{label}: report incomplete (solver failure)")
    return 1


def cmd_cutoffs(args):
    cfg, idx, n_list, t_list, out_dir = _common_setup(args)
    half_length = float(_resolve(args, cfg, "L", 16.0))
    n_points = int(_resolve(args, cfg, "N", 1024))
    grid = make_grid(half_length, n_points)
    cs = build_cutoffs(grid)
    order = np.argsort(grid.xi)
    xi = grid.xi[order]
    partition = chi_profile(xi) + sum(
        phi_profile(xi / 2.0**j) for j in range(cs.j_max + 1)
    )
    rows = [
        {
            "xi": float(x),
            "chi": float(chi_profile(np.array([x]))[0]),
            "phi": float(phi_profile(np.array([x]))[0]),
            "envelope_hat": float(envelope_hat_profile(np.array([x]))[0]),
            "partition_sum": float(p_),
        }
        for x, p_ in zip(xi, partition)
    ]
    residual = float(np.max(np.abs(partition - 1.0)))

    class _Stub:
        constants = {"partition_residual": residual, "j_max": cs.j_max}
        failures = [] if residual <= 1e-12 else [f"partition residual {residual:.3e} > 1e-12"]
        complete = True
        passed = residual <= 1e-12

    svg = None
    if args.svg:
        svg = {
            "series": {
                "chi": (xi.tolist(), [r["chi"] for r in rows]),
                "phi": (xi.tolist(), [r["phi"] for r in rows]),
            },
            "title": "cutoff profiles",
        }
    _emit_report(
        out_dir, "cutoffs", _Stub, ["xi", "chi", "phi", "envelope_hat", "partition_sum"],
        rows, {"config": {"L": half_length, "N": n_points}}, svg=svg,
    )
    return _finish(_Stub, "cutoffs")


def cmd_families(args):
    cfg, idx, n_list, t_list, out_dir = _common_setup(args)
    kind = _kind(_resolve(args, cfg, "kind", "ch"))
    rows = []
    failures = []
    os.makedirs(out_dir, exist_ok=True)
    for n in n_list:
        params = FamilyParams.for_kind(kind, n, idx.s, idx.p)
        try:
            grid = recommend_grid(params)
            cs = build_cutoffs(grid)
            high, low = make_family(params, grid, cs)
        except BesovLabError as exc:
            failures.append(f"n={n}: {exc}")
            continue
        rows.append(
            {
                "n": n,
                "kind": kind.value,
                "L": grid.half_length,
                "N": grid.n_points,
                "carrier": params.carrier,
                "high_amplitude": params.high_amplitude,
                "low_amplitude": params.low_amplitude,
                "high_max": float(np.max(np.abs(high.values))),
                "low_max": float(np.max(np.abs(low.values))),
            }
        )
        if args.dump:
            for label, f in (("high", high), ("low", low)):
                base = os.path.join(out_dir, f"family_{kind.value}_n{n}_{label}")
                write_field_dump(
                    base, f,
                    {"n": n, "kind": kind.value, "role": label,
                     "half_length": grid.half_length, "n_points": grid.n_points,
                     "dtype": "<f8"},
                )

    class _Stub:
        constants = {}
        complete = not failures
        passed = not failures

    _Stub.failures = failures
    _emit_report(
        out_dir, "families", _Stub,
        ["n", "kind", "L", "N", "carrier", "high_amplitude", "low_amplitude",
         "high_max", "low_max"],
        rows, {"config": {"kind": kind.value, "n_list": list(n_list)}},
    )
    return _finish(_Stub, "families")


def cmd_lemmas(args):
    cfg, idx, n_list, t_list, out_dir = _common_setup(args)
    kind = _kind(_resolve(args, cfg, "kind", "ch"))
    t0 = time.time()
    osc = run_oscillation_limit(idx.p, n_list)
    fam = run_family_suite(kind, idx, n_list)
    wall = time.time() - t0
    os.makedirs(out_dir, exist_ok=True)
    write_csv(
        os.path.join(out_dir, "oscillation.csv"),
        f"{SCHEMA_VERSION}/oscillation",
        ["n", "lambda", "value", "rel_change", "rel_change_tol"],
        osc.rows,
    )
    header = sorted(fam.rows[0]) if fam.rows else []
    svg = None
    if args.svg and fam.rows:
        ns = [row["n"] for row in fam.rows]
        svg = {
            "series": {
                "log2 besov_high_s": (ns, [math.log2(r["besov_high_s"]) for r in fam.rows]),
                "log2 besov_low_s": (ns, [math.log2(r["besov_low_s"]) for r in fam.rows]),
            },
            "title": "family norms",
        }
    combined_failures = osc.failures + fam.failures

    class _Stub:
        constants = {**osc.constants, **fam.constants}
        failures = combined_failures
        complete = osc.complete and fam.complete
        passed = osc.passed and fam.passed

    _emit_report(
        out_dir, "family_suite", _Stub, header, fam.rows,
        {
            "config": {"kind": kind.value, "s": idx.s, "p": idx.p, "r": idx.r,
                       "n_list": list(n_list)},
            "wall_time_s": round(wall, 3),
            "grid_sizes": {str(row["n"]): row["N"] for row in fam.rows},
        },
        svg=svg,
    )
    return _finish(_Stub, "lemmas")


def _initial_field(args, cfg, kind, idx):
    constant = _resolve(args, cfg, "constant", None)
    family_n = _resolve(args, cfg, "family-n", None)
    if constant is not None:
        grid = make_grid(float(_resolve(args, cfg, "L", 16.0)),
                         int(_resolve(args, cfg, "N", 1024)))
        return Field(grid, np.full(grid.n_points, float(constant))), grid
    if family_n is not None:
        params = FamilyParams.for_kind(kind, int(family_n), idx.s, idx.p)
        grid = recommend_grid(params)
        cs = build_cutoffs(grid)
        high, low = make_family(params, grid, cs)
        return high + low, grid
    grid = make_grid(float(_resolve(args, cfg, "L", 24.0)),
                     int(_resolve(args, cfg, "N", 2048)))
    return Field(grid, 0.3 / np.cosh(grid.x) ** 2), grid


def cmd_solve(args):
    cfg, idx, n_list, t_list, out_dir = _common_setup(args)
    kind = _kind(_resolve(args, cfg, "kind", "ch"))
    t_final = float(_resolve(args, cfg, "T", 0.2))
    u0, grid = _initial_field(args, cfg, kind, idx)
    cs = build_cutoffs(grid)
    try:
        solve_cfg = SolveConfig(t_final=t_final, snapshot_times=(t_final,))
    except ValueError as exc:
        raise ConfigError(str(exc))
    t0 = time.time()
    try:
        result = solve(kind, u0, solve_cfg, cs, idx)
    except BesovLabError as exc:
        print(f"solve: FAIL {exc}")
        return 1
    wall = time.time() - t0
    d = result.diagnostics
    rows = [
        {name: float(d[name][i]) for name in d}
        for i in range(len(d["t"]))
    ]
    e0 = result.initial[0]
    drift = max(abs(e - e0) for e in d["energy"]) / e0 if len(d["energy"]) else 0.0

    class _Stub:
        constants = {"energy_rel_drift": drift, "accepted_steps": result.accepted_steps}
        failures = []
        complete = True
        passed = True

    svg = None
    if args.svg:
        svg = {"series": {"energy": (d["t"].tolist(), d["energy"].tolist())},
               "title": "energy"}
    _emit_report(
        out_dir, "trajectory", _Stub,
        ["t", "dt", "energy", "linf", "lipschitz", "besov"], rows,
        {"config": {"kind": kind.value, "T": t_final,
                    "L": grid.half_length, "N": grid.n_points},
         "wall_time_s": round(wall, 3)},
        svg=svg,
    )
    if args.dump:
        base = os.path.join(out_dir, "final_state")
        write_field_dump(base, result.snapshot_at(t_final),
                         {"t": t_final, "kind": kind.value,
                          "half_length": grid.half_length,
                          "n_points": grid.n_points, "dtype": "<f8"})
    print(f"solve: PASS energy_rel_drift={drift:.3e}")
    return 0


def cmd_approx(args):
    cfg, idx, n_list, t_list, out_dir = _common_setup(args)
    kind = _kind(_resolve(args, cfg, "kind", "ch"))
    t_list = tuple(t for t in t_list if t > 0)
    t0 = time.time()
    report = run_approx_suite(kind, idx, n_list, t_list)
    wall = time.time() - t0
    header = sorted(report.rows[0]) if report.rows else []
    _emit_report(
        out_dir, "approx", report, header, report.rows,
        {"config": {"kind": kind.value, "s": idx.s, "p": idx.p, "r": idx.r,
                    "n_list": list(n_list), "t_list": list(t_list)},
         "wall_time_s": round(wall, 3)},
    )
    return _finish(report, "approx")


def _run_gap_command(args, kind):
    cfg, idx, n_list, t_list, out_dir = _common_setup(args)
    t0 = time.time()
    report = run_gap(kind, idx, n_list, t_list)
    wall = time.time() - t0
    header = ["n", "t", "sep", "sep_over_t", "fn_err", "w_norm", "w2_norm",
              "low_norm", "drift_norm"]
    svg = None
    if args.svg and report.cells:
        series = {}
        for n in sorted({c["n"] for c in report.cells}):
            pts = [(c["t"], c["sep"]) for c in report.cells if c["n"] == n]
            series[f"n={n}"] = ([p[0] for p in pts], [p[1] for p in pts])
        svg = {"series": series, "title": "separation vs t"}
    os.makedirs(out_dir, exist_ok=True)
    per_n_path = os.path.join(out_dir, f"gap_{kind.value}_per_n.csv")
    write_csv(
        per_n_path,
        f"{SCHEMA_VERSION}/gap_per_n",
        sorted(report.per_n[0]) if report.per_n else [],
        report.per_n,
    )
    _emit_report(
        out_dir, f"gap_{kind.value}", report, header, report.cells,
        {"config": {"kind": kind.value, "s": idx.s, "p": idx.p, "r": idx.r,
                    "n_list": list(n_list), "t_list": list(t_list)},
         "wall_time_s": round(wall, 3),
         "per_n": report.per_n,
         "extra_files": {os.path.basename(per_n_path): file_sha256(per_n_path)},
         "grid_sizes": {str(row["n"]): row["N"] for row in report.per_n}},
        svg=svg,
    )
    return _finish(report, f"gap[{kind.value}]")


def cmd_gap(args):
    return _run_gap_command(args, EquationKind.CAMASSA_HOLM)


def cmd_novikov_gap(args):
    return _run_gap_command(args, EquationKind.NOVIKOV)


def cmd_report(args):
    merged = {"manifests": {}}
    for directory in args.dirs:
        path = os.path.join(directory, "manifest.json")
        if not os.path.isfile(path):
            raise ConfigError(f"no manifest.json in {directory}")
        with open(path) as fh:
            merged["manifests"][directory] = json.load(fh)
    ok = all(
        m.get("complete", True) and not m.get("failures")
        for m in merged["manifests"].values()
    )
    merged["all_passed"] = ok
    os.makedirs(args.out or "out", exist_ok=True)
    write_manifest(args.out or "out", merged)
    print(f"report: {'PASS' if ok else 'FAIL'} ({len(merged['manifests'])} manifests)")
    return 0 if ok else 1


def _add_common(sub):
    sub.add_argument("--config", help="JSON config file; flags override its values")
    sub.add_argument("--s", type=float)
    sub.add_argument("--p", type=float)
    sub.add_argument("--r", type=str)
    sub.add_argument("--n", type=str, help="comma-separated dyadic indices")
    sub.add_argument("--t", type=str, help="comma-separated snapshot times")
    sub.add_argument("--mode", choices=("default", "large"))
    sub.add_argument("--out", help="output directory")
    sub.add_argument("--svg", action="store_true", help="emit SVG line charts")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="besovlab",
        description="Besov-norm experiments for the Camassa-Holm and Novikov equations",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    handlers = {}
    for name, fn, extra in (
        ("cutoffs", cmd_cutoffs, ("L", "N")),
        ("families", cmd_families, ("kind", "dump")),
        ("lemmas", cmd_lemmas, ("kind",)),
        ("solve", cmd_solve, ("kind", "T", "L", "N", "constant", "family-n", "dump")),
        ("approx", cmd_approx, ("kind",)),
        ("gap", cmd_gap, ()),
        ("novikov-gap", cmd_novikov_gap, ()),
    ):
        sub = subs.add_parser(name)
        _add_common(sub)
        if "kind" in extra:
            sub.add_argument("--kind", choices=("ch", "novikov"))
        if "T" in extra:
            sub.add_argument("--T", type=float, dest="T")
        if "L" in extra:
            sub.add_argument("--L", type=float, dest="L")
        if "N" in extra:
            sub.add_argument("--N", type=int, dest="N")
        if "constant" in extra:
            sub.add_argument("--constant", type=float)
        if "family-n" in extra:
            sub.add_argument("--family-n", type=int, dest="family_n")
        if "dump" in extra:
            sub.add_argument("--dump", action="store_true",
                             help="write raw field dumps (.f64 + sidecar)")
        handlers[name] = fn

    rep = subs.add_parser("report")
    rep.add_argument("dirs", nargs="+", help="output directories to merge")
    rep.add_argument("--out", help="directory for the merged manifest")
    handlers["report"] = cmd_report
    return parser, handlers


def main(argv=None):
    parser, handlers = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; map --version/-h to 0
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except BesovLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
