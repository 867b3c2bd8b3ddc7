"""k-facet census and the exact quantities the balance lemmas speak about."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Literal

from .geom import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    DegenerateInputError,
    PointSet,
    hyperplane,
    side_of,
)


@dataclass(frozen=True)
class SplitCensus:
    """``table[k]`` = number of oriented ``d``-subsets that are ``k``-facets.

    Each unordered subset with ``k`` points on its positive side contributes
    once to ``table[k]`` and once to ``table[n-d-k]``.
    """

    n: int
    d: int
    table: tuple[int, ...]

    @property
    def subsets(self) -> int:
        return math.comb(self.n, self.d)

    def check(self) -> None:
        assert sum(self.table) == 2 * self.subsets
        assert sum(k * c for k, c in enumerate(self.table)) == self.subsets * (self.n - self.d)


def census(ps: PointSet, budget: int = DEFAULT_BUDGET) -> SplitCensus:
    n, d = ps.n, ps.d
    if n < d:
        raise ValueError(f"census needs n >= d (n={n}, d={d})")
    total = math.comb(n, d)
    if total > budget:
        raise BudgetExceeded(f"C({n}, {d}) = {total} subsets exceeds budget {budget}")
    rows = ps.rows
    table = [0] * (n - d + 1)
    for piv in combinations(range(n), d):
        w = hyperplane(ps, piv)
        pset = set(piv)
        pos = 0
        for q in range(n):
            if q in pset:
                continue
            s = side_of(w, rows[q])
            if s == 0:
                raise DegenerateInputError(f"point {q} lies on the hyperplane through {piv}")
            pos += s > 0
        table[pos] += 1
        table[n - d - pos] += 1
    return SplitCensus(n, d, tuple(table))


def larger_side_tail(
    cs: SplitCensus, x, variant: Literal["randomized", "larger"] = "randomized"
) -> Fraction:
    """Exact ``P(N >= x)`` under a uniformly random pivot subset.

    ``randomized``: ``N`` is a fair-coin choice of the two sides, so the
    oriented census is exactly its law.  ``larger``: ``N`` is the larger side.
    """
    x = Fraction(x)
    m = cs.n - cs.d
    total = 2 * cs.subsets
    upper = sum(c for k, c in enumerate(cs.table) if k >= x)
    if variant == "randomized":
        return Fraction(upper, total)
    if variant == "larger":
        if 2 * x <= m:
            return Fraction(1)
        return Fraction(2 * upper, total)
    raise ValueError(f"unknown variant {variant!r}")


def cyclic_facet_count(n: int, d: int) -> int:
    """Number of facets of the cyclic polytope with ``n`` vertices in R^d."""
    if n < d + 1:
        raise ValueError("need n >= d+1")
    return math.comb(n - (d + 1) // 2, n - d) + math.comb(n - (d + 2) // 2, n - d)


def same_side_probability(ps: PointSet) -> Fraction:
    """For ``n = d+2``: P(the two non-pivot points lie on the same side)."""
    n, d = ps.n, ps.d
    if n != d + 2:
        raise ValueError("same_side_probability needs n = d+2")
    rows = ps.rows
    same = 0
    for piv in combinations(range(n), d):
        a, b = (q for q in range(n) if q not in piv)
        w = hyperplane(ps, piv)
        sa, sb = side_of(w, rows[a]), side_of(w, rows[b])
        if sa == 0 or sb == 0:
            raise DegenerateInputError("points are not in general position")
        same += sa == sb
    return Fraction(same, math.comb(n, d))


def small_balance_value(d: int, convex: bool) -> Fraction:
    """Same-side probability for ``d+2`` points: cyclic hull or one interior point.

    The convex value is the cyclic polytope's; for ``d >= 4`` other convex
    types exist, see :func:`convex_same_side_values`.
    """
    if not convex:
        return Fraction(2, d + 2)
    if d % 2 == 0:
        return Fraction(d + 2, 2 * (d + 1))
    return Fraction(d + 3, 2 * (d + 2))


def convex_same_side_values(d: int) -> set[Fraction]:
    """All same-side probabilities of ``d+2`` points in convex position.

    Their hull is a direct sum of simplices ``T_a + T_b`` with ``a + b = d``,
    which has ``(a+1)(b+1)`` facets.
    """
    total = math.comb(d + 2, 2)
    return {Fraction((a + 1) * (d - a + 1), total) for a in range(1, d // 2 + 1)}


def small_balance_cap(d: int) -> Fraction:
    return Fraction(1, 2) + Fraction(1, 2 * (d + 1))
