# %% [markdown]
# # Balance lemmas, checked exactly
#
# The k-facet census of a point set gives the exact law of the split sizes.
# We compare its tail with the Cantelli-type bounds using rational arithmetic.

# %%
from fractions import Fraction

from hstree import moment_curve, random_pointset
from hstree.bounds import balance_bound_exact, simplified_balance_exact
from hstree.facets import census, cyclic_facet_count, larger_side_tail

cs = census(moment_curve(9, 3))
print("census", cs.table, "facets", cs.table[0], "cyclic", cyclic_facet_count(9, 3))
for k in range(3, 7):
    tail = larger_side_tail(cs, k)
    print(k, tail, "<=", balance_bound_exact(9, 3, k - Fraction(6, 2)),
          simplified_balance_exact(3, Fraction(k, 9)) if 2 * k > 9 else "")

# %% [markdown]
# Sets of d+2 points: the chance that the two unchosen points fall on the same
# side. In d >= 4 the convex sets come in more than one combinatorial type.

# %%
from hstree.facets import convex_same_side_values, same_side_probability, small_balance_cap
from hstree.geom import in_convex_position

seen = set()
for seed in range(60):
    ps = random_pointset(6, 4, seed=seed)
    seen.add((in_convex_position(ps), same_side_probability(ps)))
print(sorted(seen), "cap", small_balance_cap(4), "convex values", convex_same_side_values(4))

# %% [markdown]
# The harness runs the whole check over many seeded sets.

# %%
from hstree.harness import verify_lemmas

rep = verify_lemmas(3, 9, 10, seed=1)
print(rep.cases, rep.checks, len(rep.violations))
