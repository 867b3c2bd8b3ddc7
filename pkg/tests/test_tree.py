from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hstree.points import moment_curve, random_pointset
from hstree.rng import SplitMix64
from hstree.tree import (
    HstTree,
    Internal,
    Leaf,
    build_fringe_tree,
    build_hst,
    build_moment_hst,
    depth_profile,
    exact_stats_distribution,
    expected_mean_depth,
    format_tree,
    fringe_root_split_distribution,
    fringe_tree_stats,
    moment_root_split_distribution,
    moment_split_law,
    moment_tree_stats,
    parse_tree,
    root_split_distribution,
    simulate_moment_split,
    stats,
)


def held(tree):
    out = []
    for nd in tree.nodes:
        out.extend(nd.pivots if isinstance(nd, Internal) else nd.points)
    return out


def test_fewer_points_than_d_is_one_leaf():
    tree = build_hst(moment_curve(2, 3), seed=1)
    assert tree.nodes == (Leaf((0, 1)),)
    st_ = stats(tree)
    assert (st_.height, st_.mean_depth, st_.root_split) == (0, 0, (0, 0))


def test_exactly_d_points():
    tree = build_hst(moment_curve(3, 3), seed=5)
    assert isinstance(tree.nodes[0], Internal)
    assert sorted(tree.nodes[0].pivots) == [0, 1, 2]
    assert stats(tree).root_split == (0, 0)
    assert stats(tree).height == 0


def _perfect(lo, hi, nodes):
    # balanced d=1 tree over lo..hi-1, appended in preorder
    idx = len(nodes)
    if lo >= hi:
        nodes.append(Leaf(()))
        return idx
    mid = (lo + hi) // 2
    nodes.append(None)
    left = _perfect(lo, mid, nodes)
    right = _perfect(mid + 1, hi, nodes)
    nodes[idx] = Internal((mid,), left, right)
    return idx


def test_stats_of_hand_built_perfect_tree():
    nodes = []
    _perfect(0, 7, nodes)
    tree = HstTree(1, tuple(nodes), 0, "hand", 0)
    s = stats(tree)
    assert s.height == 2
    assert s.mean_depth == Fraction(10, 7)
    assert s.root_split == (3, 3)
    assert depth_profile(tree) == [1, 2, 4]


def test_exact_distribution_three_points_on_a_line():
    # middle pivot: depths 0,1,1; end pivot: a path 0,1,2
    dist = exact_stats_distribution(moment_curve(3, 1))
    assert dist == {(1, Fraction(2, 3)): Fraction(1, 3), (2, Fraction(1)): Fraction(2, 3)}


def test_interval_split_enumeration_d2_n4():
    counts = Counter()
    dist = moment_root_split_distribution(4, 2)
    assert dist == {(0, 2): Fraction(2, 3), (1, 1): Fraction(1, 3)}
    for s in range(400):
        a, b = simulate_moment_split(4, 2, SplitMix64(s))
        counts[tuple(sorted((a, b)))] += 1
    assert set(counts) == {(0, 2), (1, 1)}


def test_d1_split_is_uniform():
    dist = root_split_distribution(moment_curve(5, 1))
    assert dist == {(0, 4): Fraction(2, 5), (1, 3): Fraction(2, 5), (2, 2): Fraction(1, 5)}


def test_fringe_t0_is_bst():
    assert fringe_root_split_distribution(5, 0) == root_split_distribution(moment_curve(5, 1))


def test_median_of_three_matches_moment_d3():
    assert fringe_root_split_distribution(7, 1) == moment_root_split_distribution(7, 3)
    assert fringe_root_split_distribution(7, 1) == root_split_distribution(moment_curve(7, 3))


def test_split_law_sums_to_one():
    for m, d in [(10, 1), (10, 2), (12, 5), (30, 4)]:
        assert moment_split_law(m, d).sum() == pytest.approx(1.0, abs=1e-12)


def test_expected_mean_depth_bst_formula():
    # 2(1+1/n)H_n - 4, the random BST average node depth
    h6 = sum(Fraction(1, k) for k in range(1, 7))
    assert 2 * (1 + Fraction(1, 6)) * h6 - 4 == Fraction(103, 60)
    assert expected_mean_depth(6, 1) == pytest.approx(103 / 60, rel=1e-12)


@pytest.mark.parametrize("n,d", [(5, 1), (6, 2), (7, 3), (7, 2)])
def test_expected_mean_depth_matches_enumeration(n, d):
    dist = exact_stats_distribution(moment_curve(n, d))
    exact = sum(p * md for (_, md), p in dist.items())
    assert expected_mean_depth(n, d) == pytest.approx(float(exact), rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 40), st.integers(1, 4), st.integers(0, 2**64 - 1))
def test_build_invariants(n, d, seed):
    tree = build_moment_hst(n, d, seed)
    pts = held(tree)
    assert sorted(pts) == list(range(n))
    for nd in tree.nodes:
        if isinstance(nd, Internal):
            assert len(nd.pivots) == d
        else:
            assert len(nd.points) < d or (n < d and len(nd.points) == n)
    s = stats(tree)
    assert s.n == n
    if n >= d:
        assert sum(s.root_split) == n - d


def test_geometric_random_set_invariants():
    ps = random_pointset(25, 3, seed=8)
    tree = build_hst(ps, seed=3)
    assert sorted(held(tree)) == list(range(25))
    assert build_hst(ps, seed=3) == tree
    assert build_hst(ps, seed=4) != tree


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_geometric_moment_tree_equals_interval_model(d):
    for seed in range(5):
        geo = build_hst(moment_curve(30, d), seed)
        comb = build_moment_hst(30, d, seed)
        assert geo.nodes == comb.nodes


def test_fast_stats_equal_full_builds():
    for seed in range(10):
        assert moment_tree_stats(200, 3, seed) == stats(build_moment_hst(200, 3, seed))
        assert fringe_tree_stats(200, 1, seed) == stats(build_fringe_tree(200, 1, seed))


def test_fringe_tree_holds_median():
    tree = build_fringe_tree(50, 2, seed=9)
    assert sorted(held(tree)) == list(range(50))
    assert all(len(nd.pivots) == 5 for nd in tree.nodes if isinstance(nd, Internal))


def test_serialisation_round_trip():
    tree = build_hst(random_pointset(20, 2, seed=1), seed=77)
    text = format_tree(tree)
    assert text.startswith("# hst d=2 seed=77 source=")
    assert parse_tree(text) == tree


def test_parse_tree_rejects_garbage():
    with pytest.raises(ValueError):
        parse_tree("I 1 2\n")
    with pytest.raises(ValueError):
        parse_tree("# hst d=1 seed=0 source=x\nI 0\nL\n")
