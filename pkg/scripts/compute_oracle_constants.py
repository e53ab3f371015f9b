#!/usr/bin/env python3
"""Pre-build oracle run: freeze the empirical constants used by the tests.

Runs the quadrature oracles at doubled resolution and the full gap pipeline,
then writes src/besovlab/data/oracle_constants.json.  The acceptance suite
compares fresh measurements against these stored values within fixed margins,
so this script must be re-run (and the diff reviewed) whenever the cutoff
recipe, the data families, or the solver change.

Usage: python3 scripts/compute_oracle_constants.py [--quick]

--quick restricts the gap runs to n in {3, 4} (for sanity checks only; the
shipped JSON must come from a full run).
"""

import argparse
import json
import math
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from besovlab.besov import BesovIndex  # noqa: E402
from besovlab.equations import EquationKind  # noqa: E402
from besovlab import experiments as ex  # noqa: E402
from besovlab.families import envelope_half_width  # noqa: E402

OUT_PATH = (
    pathlib.Path(__file__).resolve().parents[1]
    / "src"
    / "besovlab"
    / "data"
    / "oracle_constants.json"
)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true")
    args = parser.parse_args(argv)

    t_start = time.time()
    idx = BesovIndex(1.2, 2.0, 2.0)
    n_list = (3, 4) if args.quick else ex.DEFAULT_N_LIST
    payload = {"script": "scripts/compute_oracle_constants.py", "quick": args.quick}

    # --- quadrature constants, at two refinements to witness convergence ---
    print("quadrature constants ...", flush=True)
    payload["envelope"] = {
        "half_width_tol": 1e-10,
        "half_width": envelope_half_width(1e-10),
        "env2_lp": {f"p={p:g}": ex.envelope_power_norm(2, p, refinement=2) for p in (1, 2)},
        "env3_lp": {f"p={p:g}": ex.envelope_power_norm(3, p, refinement=2) for p in (1, 2)},
    }
    for key, power in (("oscillation_limit", 2), ("oscillation_limit_cubic", 3)):
        coarse = {
            f"p={p:g}": ex.oscillation_oracle_limit(p, power=power, refinement=1)
            for p in (1, 2)
        }
        fine = {
            f"p={p:g}": ex.oscillation_oracle_limit(p, power=power, refinement=2)
            for p in (1, 2)
        }
        for name in coarse:
            rel = abs(fine[name] - coarse[name]) / fine[name]
            if rel > 1e-8:
                raise SystemExit(
                    f"{key}[{name}] not converged: refinements differ by {rel:.2e}"
                )
        payload[key] = fine

    # --- drift-law and a-priori corpus constants ---
    drift_law = {}
    apriori = {"c1": 0.0, "c2": 0.0}
    for kind in EquationKind:
        print(f"drift law corpus ({kind.value}) ...", flush=True)
        rep = ex.run_drift_law(kind, idx, oracle_constant=math.inf)
        drift_law[kind.value] = rep.constants["max_ratio"]
        c1, c2 = ex.apriori_corpus(kind, idx)
        apriori["c1"] = max(apriori["c1"], c1)
        apriori["c2"] = max(apriori["c2"], c2)
    payload["drift_law"] = drift_law
    payload["apriori"] = apriori

    # --- product estimate corpus ---
    print("product estimate corpus ...", flush=True)
    payload["product_estimate_max"] = ex.product_estimate_corpus(idx)

    # --- gap floors: production resolution plus a refined cross-check ---
    gap_floor = {}
    gap_floor_refined = {}
    for kind in EquationKind:
        print(f"gap pipeline ({kind.value}) ...", flush=True)
        rep = ex.run_gap(kind, idx, n_list=n_list, separation_floor=0.0)
        gap_floor[kind.value] = rep.constants["min_sep_over_t"]
        small = tuple(n for n in n_list if n <= 5)
        print(f"gap pipeline refined ({kind.value}, n={small}) ...", flush=True)
        rep_ref = ex.run_gap(kind, idx, n_list=small, separation_floor=0.0, refine=1)
        rep_base = ex.run_gap(kind, idx, n_list=small, separation_floor=0.0)
        rel = abs(
            rep_ref.constants["min_sep_over_t"] - rep_base.constants["min_sep_over_t"]
        ) / rep_ref.constants["min_sep_over_t"]
        gap_floor_refined[kind.value] = {
            "n_list": list(small),
            "refined_min_sep_over_t": rep_ref.constants["min_sep_over_t"],
            "production_min_sep_over_t": rep_base.constants["min_sep_over_t"],
            "rel_difference": rel,
        }
        if rel > 0.01:
            raise SystemExit(
                f"gap floor ({kind.value}) resolution-dependent: rel diff {rel:.2e}"
            )
    payload["gap_floor"] = gap_floor
    payload["gap_floor_refined_check"] = gap_floor_refined

    payload["wall_time_s"] = round(time.time() - t_start, 1)
    OUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT_PATH, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {OUT_PATH} in {payload['wall_time_s']}s")


if __name__ == "__main__":
    main()
