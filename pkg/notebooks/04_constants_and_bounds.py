# %% [markdown]
# # Constants and analytic bounds
#
# Lambda(t) and C(t) are the limiting depth and height constants of the
# median-of-(2t+1) tree. Both fall toward 1/ln 2 as t grows.

# %%
import math

from hstree import bounds as b

for t in (0, 1, 2, 5, 20, 100):
    print(t, round(b.lambda_poblete(t).value, 5), round(b.height_constant(t).value, 5))
print("1/ln2 =", 1 / math.log(2))
print("C(0) per log2:", b.convert_log_base(b.height_constant(0), "two").value)

# %% [markdown]
# Dominated trees: the explicit split law with a = 1/sqrt(2d), b = ln 8 gives a
# height constant gamma(d) once d is large enough.

# %%
for d in (20, 26, 30, 100, 1000, 4096):
    g = b.dominated_height_gamma(b.theorem_height_law(d))
    print(d, g.valid, g.value)

# %% [markdown]
# Logarithmic moments of the two split laws, bound and quadrature.

# %%
for d in (50, 200, 1000):
    for law in (b.SplitLaw.example2(d), b.SplitLaw.wagner(d)):
        print(d, law.kind, round(b.log_moment_lower(law).value, 4), round(b.log_moment(law).value, 4))
