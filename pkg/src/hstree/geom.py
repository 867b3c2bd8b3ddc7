"""Exact orientation predicates over rational point sets.

Every predicate works on integer rows: each point ``(x_1, ..., x_d)`` is
written in homogeneous form ``(x_1, ..., x_d, 1)`` and scaled by the
(positive) lcm of its denominators.  Positive row scaling never changes a
determinant's sign, so all signs below are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Point = tuple[Fraction, ...]

DEFAULT_BUDGET = 2_000_000


class DegenerateInputError(ValueError):
    """Raised when a predicate meets affinely dependent points."""


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its budget."""


@dataclass(frozen=True)
class PointSet:
    """``n`` points in R^d with exact rational coordinates.

    Points are referred to everywhere else by their 0-based index.
    """

    d: int
    points: tuple[Point, ...]
    label: str = ""

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be positive")
        if len(self.points) < 1:
            raise ValueError("a point set needs at least one point")
        pts = []
        for i, p in enumerate(self.points):
            p = tuple(Fraction(c) for c in p)
            if len(p) != self.d:
                raise ValueError(f"point {i} has {len(p)} coordinates, expected {self.d}")
            pts.append(p)
        object.__setattr__(self, "points", tuple(pts))
        if "\n" in self.label:
            raise ValueError("label must be a single line")

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence], label: str = "") -> "PointSet":
        pts = tuple(tuple(Fraction(c) for c in p) for p in coords)
        if not pts:
            raise ValueError("a point set needs at least one point")
        return cls(len(pts[0]), pts, label)

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        """Homogeneous integer rows, one per point."""
        out = []
        for p in self.points:
            scale = math.lcm(*(c.denominator for c in p))
            out.append(tuple(int(c * scale) for c in p) + (scale,))
        return tuple(out)


def det_int(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(r) for r in matrix]
    k = len(a)
    if k == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(k - 1):
        if a[i][i] == 0:
            for r in range(i + 1, k):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[i][i]
        for r in range(i + 1, k):
            ar = a[r]
            ai = a[i]
            f = ar[i]
            for c in range(i + 1, k):
                ar[c] = (ar[c] * piv - f * ai[c]) // prev
            ar[i] = 0
        prev = piv
    return sign * a[k - 1][k - 1]


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _check_indices(ps: PointSet, idx: Sequence[int], expected: int) -> None:
    if len(idx) != expected:
        raise ValueError(f"expected {expected} indices for d={ps.d}, got {len(idx)}")
    if len(set(idx)) != len(idx):
        raise ValueError(f"repeated index in {tuple(idx)}")
    for i in idx:
        if not 0 <= i < ps.n:
            raise IndexError(f"point index {i} out of range for n={ps.n}")


def orientation(ps: PointSet, idx: Sequence[int]) -> int:
    """Sign of the homogeneous ``(d+1) x (d+1)`` determinant of ``d+1`` points.

    Rows are taken in the given order, so swapping two indices negates the
    result.  Returns -1, 0 or +1; 0 exactly when the points are affinely
    dependent.
    """
    _check_indices(ps, idx, ps.d + 1)
    rows = ps.rows
    return _sign(det_int([rows[i] for i in idx]))


def hyperplane(ps: PointSet, pivots: Sequence[int]) -> tuple[int, ...]:
    """Integer normal ``w`` with ``sign(w . row(q)) == orientation(pivots + [q])``.

    These are the signed cofactors of the last row of the orientation
    matrix, so the expansion is exact.
    """
    rows = [ps.rows[i] for i in pivots]
    d = ps.d
    w = []
    for j in range(d + 1):
        minor = [r[:j] + r[j + 1:] for r in rows]
        cof = det_int(minor)
        w.append(cof if (d + j) % 2 == 0 else -cof)
    return tuple(w)


def side_of(w: Sequence[int], row: Sequence[int]) -> int:
    return _sign(sum(a * b for a, b in zip(w, row)))


def classify_split(
    ps: PointSet, pivots: Iterable[int], candidates: Iterable[int] | None = None
) -> tuple[list[int], list[int]]:
    """Split the non-pivot points by the hyperplane through ``pivots``.

    A point goes left when ``orientation(sorted(pivots) + [point])`` is
    positive and right when it is negative.  ``candidates`` restricts the
    classification to a subset (defaults to every non-pivot index); output
    lists keep the candidates' order.
    """
    piv = sorted(pivots)
    _check_indices(ps, piv, ps.d)
    if candidates is None:
        pset = set(piv)
        candidates = [i for i in range(ps.n) if i not in pset]
    w = hyperplane(ps, piv)
    rows = ps.rows
    left, right = [], []
    for q in candidates:
        s = side_of(w, rows[q])
        if s > 0:
            left.append(q)
        elif s < 0:
            right.append(q)
        else:
            raise DegenerateInputError(
                f"point {q} lies on the hyperplane through pivots {tuple(piv)}"
            )
    return left, right


def is_general_position(ps: PointSet, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff every ``(d+1)``-subset is affinely independent.

    Raises :class:`BudgetExceeded` when ``C(n, d+1)`` exceeds ``budget``.
    """
    d = ps.d
    if ps.n <= d:
        return True
    total = math.comb(ps.n, d + 1)
    if total > budget:
        raise BudgetExceeded(f"C({ps.n}, {d + 1}) = {total} subsets exceeds budget {budget}")
    rows = ps.rows
    # one cofactor vector per d-subset covers all of its (d+1)-extensions
    for piv in combinations(range(ps.n), d):
        w = hyperplane(ps, piv)
        for q in range(piv[-1] + 1, ps.n):
            if side_of(w, rows[q]) == 0:
                return False
    return True


def in_convex_position(ps: PointSet) -> bool:
    """Convex-position test for ``n = d+2`` points in general position.

    The set is non-convex exactly when some point lies strictly inside the
    simplex of the other ``d+1``.
    """
    d = ps.d
    if ps.n != d + 2:
        raise ValueError("in_convex_position is only defined for n = d+2")
    for q in range(ps.n):
        others = [i for i in range(ps.n) if i != q]
        inside = True
        for drop in range(d + 1):
            facet = [others[k] for k in range(d + 1) if k != drop]
            w = hyperplane(ps, facet)
            sq = side_of(w, ps.rows[q])
            sv = side_of(w, ps.rows[others[drop]])
            if sq == 0 or sv == 0:
                raise DegenerateInputError("points are not in general position")
            if sq != sv:
                inside = False
                break
        if inside:
            return False
    return True
