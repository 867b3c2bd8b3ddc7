# %% [markdown]
# # Moment curve, interval model and median-of-(2t+1) trees
#
# For d = 2t+1 the moment-curve tree splits like a fringe-balanced search tree
# whose pivot is the median of 2t+1 sampled keys. We compare the exact root
# split laws, then the exact expected mean depth against its limit.

# %%
import math

from hstree import moment_curve
from hstree.bounds import lambda_poblete
from hstree.tree import (
    expected_mean_depth,
    fringe_root_split_distribution,
    moment_root_split_distribution,
    root_split_distribution,
)

for n in (5, 7, 8):
    geo = root_split_distribution(moment_curve(n, 3))
    print(n, geo == moment_root_split_distribution(n, 3) == fringe_root_split_distribution(n, 1))
    print("  ", {k: str(v) for k, v in geo.items()})

# %% [markdown]
# The limit of mean depth / ln n is Lambda(t), but the approach is slow: the
# correction is O(1 / ln n) with a negative constant.

# %%
for d, t in ((1, 0), (3, 1)):
    lim = lambda_poblete(t).value
    for k in (8, 11, 14):
        n = 2**k
        print(f"d={d} n=2^{k}: {expected_mean_depth(n, d) / math.log(n):.4f}  (limit {lim:.4f})")
