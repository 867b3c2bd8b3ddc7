# %% [markdown]
# # Seeded experiments
#
# Trial i uses a seed derived from the base seed, so results do not depend on
# how trials are spread over worker processes.

# %%
import io

from hstree import harness

cfg = harness.ExperimentConfig(
    source={"kind": "moment", "n": 4096, "d": 3}, trials=50, base_seed=3, mode="combinatorial"
)
records = list(harness.run_experiment(cfg))
csv = harness.records_csv(records)
print(csv.splitlines()[:4])
r = harness.estimate_ratios(harness.read_records(io.StringIO(csv)))
print("height/ln n", r.height.mean, "mean depth/ln n", r.mean_depth.mean)

# %% [markdown]
# Root splits against the limiting beta law, and against the analytic tails.

# %%
n = 2**13
larger = harness.root_split_samples(n, 5, 3000, seed=1)
print(harness.ks_split_vs_beta(larger / (n - 5), 5, n=n))
rep = harness.verify_domination(9, 4096, 3000, seed=2)
print(rep.max_excess, rep.slack, rep.ok)

# %% [markdown]
# The same, from a shell:
#
#     hstree experiment --source moment --n 4096 --d 3 --trials 50 --threads 4 --out runs.csv
#     hstree report --in runs.csv
#     hstree verify --domination --d 9 --n 4096 --trials 10000
