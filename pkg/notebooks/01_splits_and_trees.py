# %% [markdown]
# # Random hyperplane splits
#
# Pick d of the n points at random; the hyperplane through them cuts the rest
# in two. Recursing on both sides gives a hyperplane search tree. All side
# tests are exact: coordinates are rationals and orientations come from
# integer determinants.

# %%
from hstree import build_hst, moment_curve, random_pointset, stats
from hstree.geom import classify_split
from hstree.tree import format_tree

ps = random_pointset(12, 2, seed=1)
print(ps.label)
left, right = classify_split(ps, [0, 1])
print("pivots 0,1 ->", left, right)

# %% [markdown]
# One tree, and the quantities we care about: height and mean point depth
# (the root is at depth 0).

# %%
tree = build_hst(ps, seed=7)
print(format_tree(tree))
print(stats(tree))

# %% [markdown]
# The same seed always gives the same tree. On the moment curve the split only
# depends on which parameter intervals are odd-numbered, so the geometric build
# and the purely combinatorial model agree node for node.

# %%
from hstree import build_moment_hst

geo = build_hst(moment_curve(30, 3), seed=11)
comb = build_moment_hst(30, 3, seed=11)
print("identical:", geo.nodes == comb.nodes)
