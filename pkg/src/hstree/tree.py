"""Random hyperplane search trees and their combinatorial twins.

Three builders share one construction loop and one seeding scheme:

* :func:`build_hst` splits by actual hyperplanes over a :class:`PointSet`;
* :func:`build_moment_hst` uses the interval-alternation model of the moment
  curve (no coordinates at all);
* :func:`build_fringe_tree` is the median-of-(2t+1) tree with non-reused
  samples, i.e. ``d = 2t+1`` points per internal node.

Each node owns a seed; the node's draws come from ``SplitMix64(seed)`` and
its children get ``derive_seed(seed, 0)`` (left) and ``derive_seed(seed, 1)``
(right).  The same seed therefore gives the same tree regardless of
traversal order, and on the moment curve ``build_hst`` and
``build_moment_hst`` produce identical trees.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .geom import PointSet, classify_split
from .rng import SplitMix64, derive_seed


@dataclass(frozen=True)
class Internal:
    pivots: tuple[int, ...]
    left: int
    right: int


@dataclass(frozen=True)
class Leaf:
    points: tuple[int, ...]


@dataclass(frozen=True)
class HstTree:
    """Arena-stored tree; ``nodes`` is in preorder and ``root`` is 0."""

    d: int
    nodes: tuple
    root: int
    source: str
    seed: int

    @property
    def n(self) -> int:
        return sum(
            len(nd.pivots) if isinstance(nd, Internal) else len(nd.points) for nd in self.nodes
        )


@dataclass(frozen=True)
class TreeStats:
    n: int
    height: int
    mean_depth: Fraction
    root_split: tuple[int, int]


# A splitter maps (items, rng) to (node points, left items, right items).
Splitter = Callable[[list, SplitMix64], tuple[tuple, list, list]]


def _build(items: list, k: int, seed: int, splitter: Splitter, d: int, source: str) -> HstTree:
    nodes: list = []
    stack = [(items, seed, -1, 0)]
    while stack:
        its, s, parent, side = stack.pop()
        idx = len(nodes)
        if parent >= 0:
            nodes[parent][1 + side] = idx
        if len(its) < k:
            nodes.append(Leaf(tuple(its)))
            continue
        held, left, right = splitter(its, SplitMix64(s))
        nodes.append([held, -1, -1])
        stack.append((right, derive_seed(s, 1), idx, 1))
        stack.append((left, derive_seed(s, 0), idx, 0))
    frozen = tuple(
        nd if isinstance(nd, Leaf) else Internal(tuple(nd[0]), nd[1], nd[2]) for nd in nodes
    )
    return HstTree(d, frozen, 0, source, seed)


def _alternate(items: Sequence, positions: Sequence[int]) -> tuple[tuple, list, list]:
    """Split a rank-ordered list at sorted ``positions``; odd intervals go left."""
    held = tuple(items[p] for p in positions)
    left, right = [], []
    prev = -1
    for j, p in enumerate(list(positions) + [len(items)]):
        (left if j % 2 == 0 else right).extend(items[prev + 1:p])
        prev = p
    return held, left, right


def build_hst(ps: PointSet, seed: int) -> HstTree:
    """Random hyperplane search tree on ``ps``.

    Pivots are ``d`` positions drawn without replacement from the node's
    (ascending) index list.  Positive-orientation points go left.
    """
    d = ps.d

    def split(items, rng):
        pos = rng.sample(len(items), d)
        pivots = sorted(items[p] for p in pos)
        pset = set(pivots)
        left, right = classify_split(ps, pivots, [i for i in items if i not in pset])
        return tuple(pivots), left, right

    return _build(list(range(ps.n)), d, seed, split, d, ps.label)


def build_moment_hst(n: int, d: int, seed: int) -> HstTree:
    """Moment-curve tree built from parameter ranks alone.

    Node points are indices ``0..n-1`` into ``moment_curve(n, d)``.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")

    def split(items, rng):
        return _alternate(items, sorted(rng.sample(len(items), d)))

    return _build(list(range(n)), d, seed, split, d, f"moment:n={n}:d={d}")


def build_fringe_tree(n: int, t: int, seed: int) -> HstTree:
    """Median-of-(2t+1) search tree on keys ``0..n-1``.

    The ``2t+1`` sampled keys stay at the node; the keys below the median
    (excluding samples) go left, the rest right.
    """
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    k = 2 * t + 1

    def split(items, rng):
        pos = sorted(rng.sample(len(items), k))
        held = tuple(items[p] for p in pos)
        med = pos[t]
        sampled = set(pos)
        left = [items[i] for i in range(med) if i not in sampled]
        right = [items[i] for i in range(med + 1, len(items)) if i not in sampled]
        return held, left, right

    return _build(list(range(n)), k, seed, split, k, f"fringe:n={n}:t={t}")


def depth_profile(tree: HstTree) -> list[int]:
    """``counts[k]`` = number of data points held at depth ``k``."""
    counts: list[int] = []
    stack = [(tree.root, 0)]
    while stack:
        i, depth = stack.pop()
        nd = tree.nodes[i]
        held = len(nd.pivots) if isinstance(nd, Internal) else len(nd.points)
        if held:
            if len(counts) <= depth:
                counts.extend([0] * (depth + 1 - len(counts)))
            counts[depth] += held
        if isinstance(nd, Internal):
            stack.append((nd.left, depth + 1))
            stack.append((nd.right, depth + 1))
    return counts


def _subtree_size(tree: HstTree, i: int) -> int:
    total = 0
    stack = [i]
    while stack:
        nd = tree.nodes[stack.pop()]
        if isinstance(nd, Internal):
            total += len(nd.pivots)
            stack.extend((nd.left, nd.right))
        else:
            total += len(nd.points)
    return total


def stats(tree: HstTree) -> TreeStats:
    """Height, exact mean depth and root split sizes (depth of root = 0)."""
    prof = depth_profile(tree)
    n = sum(prof)
    height = len(prof) - 1 if prof else 0
    total = sum(k * c for k, c in enumerate(prof))
    root = tree.nodes[tree.root]
    if isinstance(root, Internal):
        split = (_subtree_size(tree, root.left), _subtree_size(tree, root.right))
    else:
        split = (0, 0)
    return TreeStats(n, height, Fraction(total, n) if n else Fraction(0), split)


# ---------------------------------------------------------------------------
# size-only fast paths (same draws as the tree builders, no index lists)


def _moment_sizes(m: int, d: int, rng: SplitMix64) -> tuple[int, int]:
    pos = sorted(rng.sample(m, d))
    odd = even = 0
    prev = -1
    for j, p in enumerate(pos + [m]):
        if j % 2 == 0:
            odd += p - prev - 1
        else:
            even += p - prev - 1
        prev = p
    return odd, even


def _fringe_sizes(m: int, k: int, rng: SplitMix64) -> tuple[int, int]:
    t = k // 2
    pos = sorted(rng.sample(m, k))
    med = pos[t]
    return med - t, m - 1 - med - t


def _size_stats(n: int, k: int, seed: int, sizes) -> TreeStats:
    height = 0
    total = 0
    root_split = (0, 0)
    stack = [(n, seed, 0)]
    while stack:
        m, s, depth = stack.pop()
        if m < k:
            if m:
                total += m * depth
                height = max(height, depth)
            continue
        total += k * depth
        height = max(height, depth)
        left, right = sizes(m, k, SplitMix64(s))
        if depth == 0:
            root_split = (left, right)
        stack.append((right, derive_seed(s, 1), depth + 1))
        stack.append((left, derive_seed(s, 0), depth + 1))
    return TreeStats(n, height, Fraction(total, n), root_split)


def moment_tree_stats(n: int, d: int, seed: int) -> TreeStats:
    """``stats(build_moment_hst(n, d, seed))`` without materialising the tree."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    return _size_stats(n, d, seed, _moment_sizes)


def fringe_tree_stats(n: int, t: int, seed: int) -> TreeStats:
    """``stats(build_fringe_tree(n, t, seed))`` without materialising the tree."""
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    return _size_stats(n, 2 * t + 1, seed, _fringe_sizes)


def simulate_moment_split(n: int, d: int, rng: SplitMix64) -> tuple[int, int]:
    """Root split of the interval-alternation model: ``(odd side, even side)``.

    ``d`` distinct parameters are drawn from ``1..n``; the ``d+1`` gaps are
    summed by parity of their (1-based) interval number.
    """
    if n < d:
        raise ValueError("need n >= d")
    return _moment_sizes(n, d, rng)


# ---------------------------------------------------------------------------
# exhaustive distributions (small n)


def _unordered(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


def _normalise(counts: dict, total: int) -> dict:
    return {k: Fraction(v, total) for k, v in sorted(counts.items())}


def root_split_distribution(ps: PointSet) -> dict[tuple[int, int], Fraction]:
    """Exact law of the unordered root split sizes over all pivot ``d``-subsets."""
    counts: dict = defaultdict(int)
    for piv in combinations(range(ps.n), ps.d):
        left, right = classify_split(ps, piv)
        counts[_unordered(len(left), len(right))] += 1
    return _normalise(counts, math.comb(ps.n, ps.d))


def moment_root_split_distribution(n: int, d: int) -> dict[tuple[int, int], Fraction]:
    counts: dict = defaultdict(int)
    for pos in combinations(range(n), d):
        _, left, right = _alternate(range(n), pos)
        counts[_unordered(len(left), len(right))] += 1
    return _normalise(counts, math.comb(n, d))


def fringe_root_split_distribution(n: int, t: int) -> dict[tuple[int, int], Fraction]:
    k = 2 * t + 1
    counts: dict = defaultdict(int)
    for pos in combinations(range(n), k):
        med = pos[t]
        counts[_unordered(med - t, n - 1 - med - t)] += 1
    return _normalise(counts, math.comb(n, k))


def exact_stats_distribution(ps: PointSet) -> dict[tuple[int, Fraction], Fraction]:
    """Exact joint law of ``(height, mean_depth)`` of ``build_hst`` on ``ps``.

    Enumerates every pivot choice at every node (memoised on the subset), so
    it is only practical for ``n`` up to about 8.
    """
    d = ps.d

    @lru_cache(maxsize=None)
    def sub(items: frozenset) -> dict:
        # law of (height, total depth) relative to this subtree's root;
        # height -1 marks an empty subtree
        m = len(items)
        if m < d:
            return {(0 if m else -1, 0): Fraction(1)}
        out: dict = defaultdict(Fraction)
        w = Fraction(1, math.comb(m, d))
        srt = sorted(items)
        for piv in combinations(srt, d):
            pset = set(piv)
            left, right = classify_split(ps, piv, [i for i in srt if i not in pset])
            dl, dr = sub(frozenset(left)), sub(frozenset(right))
            for (hl, tl), pl in dl.items():
                for (hr, tr), pr in dr.items():
                    h = max(0, hl + 1, hr + 1)
                    out[(h, tl + tr + len(left) + len(right))] += w * pl * pr
        return dict(out)

    res: dict = defaultdict(Fraction)
    for (h, tot), p in sub(frozenset(range(ps.n))).items():
        res[(max(h, 0), Fraction(tot, ps.n))] += p
    return dict(sorted(res.items()))


# ---------------------------------------------------------------------------
# exact expectation of the mean depth


def moment_split_law(m: int, d: int) -> np.ndarray:
    """``P(odd side = l)`` for ``l = 0..m-d`` in the interval-alternation model.

    With ``a`` odd and ``b`` even intervals the count of gap vectors whose odd
    part sums to ``l`` is ``C(l+a-1, a-1) * C(m-d-l+b-1, b-1)``.
    """
    a = (d + 2) // 2
    b = (d + 1) // 2
    l = np.arange(m - d + 1, dtype=float)
    r = (m - d) - l
    ca = np.ones_like(l)
    for j in range(1, a):
        ca *= (l + j) / j
    cb = np.ones_like(l)
    for j in range(1, b):
        cb *= (r + j) / j
    return ca * cb / math.comb(m, d)


def expected_mean_depth(n: int, d: int) -> float:
    """``E[mean_depth]`` of the moment-curve tree by the size recurrence.

    ``T(m) = (m-d) + sum_l P_m(l) (T(l) + T(m-d-l))`` with ``T(m) = 0`` for
    ``m < d``; the result is ``T(n)/n``.  O(n^2) vector work.
    """
    total = np.zeros(n + 1)
    for m in range(d, n + 1):
        p = moment_split_law(m, d)
        t_l = total[: m - d + 1]
        total[m] = (m - d) + p @ t_l + p @ t_l[::-1]
    return float(total[n] / n)


# ---------------------------------------------------------------------------
# text serialisation


def format_tree(tree: HstTree) -> str:
    lines = [f"# hst d={tree.d} seed={tree.seed} source={tree.source}"]
    for nd in tree.nodes:
        if isinstance(nd, Internal):
            lines.append("I " + " ".join(map(str, nd.pivots)))
        else:
            lines.append(" ".join(["L", *map(str, nd.points)]))
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> HstTree:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# hst "):
        raise ValueError("missing '# hst' header")
    head = lines[0][len("# hst "):]
    dpart, spart, src = head.split(" ", 2)
    d = int(dpart.removeprefix("d="))
    seed = int(spart.removeprefix("seed="))
    source = src.removeprefix("source=")
    body = [ln.split() for ln in lines[1:] if ln.strip()]
    nodes: list = []
    pos = 0

    def parse_at() -> int:
        nonlocal pos
        if pos >= len(body):
            raise ValueError("truncated tree")
        toks = body[pos]
        pos += 1
        idx = len(nodes)
        if toks[0] == "L":
            nodes.append(Leaf(tuple(int(x) for x in toks[1:])))
            return idx
        if toks[0] != "I":
            raise ValueError(f"bad node tag {toks[0]!r}")
        nodes.append(None)
        left = parse_at()
        right = parse_at()
        nodes[idx] = Internal(tuple(int(x) for x in toks[1:]), left, right)
        return idx

    parse_at()
    if pos != len(body):
        raise ValueError("trailing lines after tree")
    return HstTree(d, tuple(nodes), 0, source, seed)
