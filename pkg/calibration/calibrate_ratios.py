"""Pin the depth-ratio bands used by the n = 2**14 moment-curve acceptance check.

The limits 2 (d=1) and 12/7 (d=3) are approached like c + O(1/ln n), so at
n = 2**14 the ratios sit well below them.  Each band is centred on the exact
expectation of mean_depth / ln n (size recurrence, no sampling) with a
half-width of HALF_WIDTH, and the seeded 300-trial run is recorded next to it.

    python calibration/calibrate_ratios.py  # rewrites src/hstree/data/calibration.json
"""

import json
import math
import pathlib

from hstree import bounds, harness
from hstree.tree import expected_mean_depth

N = 2**14
TRIALS = 300
HALF_WIDTH = 0.03
SEEDS = {1: 140001, 3: 140003}
OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "hstree" / "data" / "calibration.json"


def main():
    ln = math.log(N)
    out = {"n": N, "trials": TRIALS, "half_width": HALF_WIDTH, "cases": {}}
    for d, seed in SEEDS.items():
        t = (d - 1) // 2
        cfg = harness.ExperimentConfig(
            source={"kind": "moment", "n": N, "d": d}, trials=TRIALS, base_seed=seed,
            mode="combinatorial",
        )
        recs = list(harness.run_experiment(cfg))
        r = harness.estimate_ratios(recs, N)
        exact = expected_mean_depth(N, d) / ln
        out["cases"][str(d)] = {
            "d": d,
            "t": t,
            "base_seed": seed,
            "limit_mean_depth_ratio": bounds.lambda_poblete(t).value,
            "exact_mean_depth_ratio": exact,
            "sample_mean_depth_ratio": r.mean_depth.mean,
            "sample_mean_depth_ratio_sd": r.mean_depth.sd,
            "mean_depth_band": [round(exact - HALF_WIDTH, 4), round(exact + HALF_WIDTH, 4)],
            "sample_height_ratio": r.height.mean,
            "max_height_ratio": max(x.height for x in recs) / ln,
            "height_constant": bounds.height_constant(t).value,
        }
        print(json.dumps(out["cases"][str(d)], indent=2))
    OUT.write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()
