from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from hstree.geom import (
    BudgetExceeded,
    DegenerateInputError,
    PointSet,
    classify_split,
    det_int,
    in_convex_position,
    is_general_position,
    orientation,
)
from hstree.points import moment_curve, random_pointset

from conftest import leibniz_det


def P(*coords, label=""):
    return PointSet.from_coords(coords, label)


def test_ccw_standard_simplex_is_positive():
    assert orientation(P((0, 0), (1, 0), (0, 1)), [0, 1, 2]) == 1


def test_collinear_is_zero():
    assert orientation(P((0, 0), (1, 1), (2, 2)), [0, 1, 2]) == 0


def test_swap_negates():
    ps = P((0, 0), (1, 0), (0, 1))
    assert orientation(ps, [1, 0, 2]) == -1


def test_orientation_errors():
    ps = P((0, 0), (1, 0), (0, 1))
    with pytest.raises(ValueError):
        orientation(ps, [0, 0, 1])
    with pytest.raises(ValueError):
        orientation(ps, [0, 1])


def test_pointset_rejects_ragged():
    with pytest.raises(ValueError):
        PointSet(2, ((Fraction(1), Fraction(2)), (Fraction(1),)))


small_int = st.integers(-6, 6)


@given(st.lists(st.lists(small_int, min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_leibniz(m):
    assert det_int(m) == leibniz_det(m)


coord = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def pointsets(d, n):
    return st.lists(st.tuples(*[coord] * d), min_size=n, max_size=n, unique=True).map(
        lambda pts: PointSet.from_coords(pts)
    )


@given(pointsets(2, 3), st.permutations([0, 1, 2]))
def test_orientation_is_determinant_sign(ps, perm):
    rows = [list(ps.points[i]) + [1] for i in perm]
    det = leibniz_det(rows)
    assert orientation(ps, perm) == (det > 0) - (det < 0)


@given(pointsets(3, 4), st.integers(0, 3), st.integers(0, 3))
def test_antisymmetry(ps, i, j):
    assume(i != j)
    idx = [0, 1, 2, 3]
    swapped = idx[:]
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert orientation(ps, swapped) == -orientation(ps, idx)


@given(pointsets(3, 4), st.fractions(1, 50, max_denominator=9))
def test_scaling_preserves_sign(ps, s):
    scaled = PointSet.from_coords([[c * s for c in p] for p in ps.points])
    assert orientation(scaled, [0, 1, 2, 3]) == orientation(ps, [0, 1, 2, 3])


def _gp(ps):
    try:
        return is_general_position(ps)
    except BudgetExceeded:
        return False


@settings(max_examples=50)
@given(pointsets(2, 7), st.tuples(coord, coord))
def test_translation_invariance(ps, shift):
    assume(_gp(ps))
    moved = PointSet.from_coords([[c + s for c, s in zip(p, shift)] for p in ps.points])
    for piv in ([0, 1], [2, 5], [3, 6]):
        assert classify_split(moved, piv) == classify_split(ps, piv)


@settings(max_examples=50)
@given(pointsets(2, 7), st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=2, max_size=2))
def test_linear_map_invariance_unordered(ps, a):
    assume(_gp(ps))
    assume(a[0][0] * a[1][1] - a[0][1] * a[1][0] != 0)
    mapped = PointSet.from_coords(
        [[sum(a[r][c] * p[c] for c in range(2)) for r in range(2)] for p in ps.points]
    )
    for piv in ([0, 1], [2, 5], [3, 6]):
        l1, r1 = classify_split(ps, piv)
        l2, r2 = classify_split(mapped, piv)
        assert {tuple(l1), tuple(r1)} == {tuple(l2), tuple(r2)}


def test_split_on_a_line():
    ps = P((1,), (2,), (3,))
    left, right = classify_split(ps, [1])
    assert {tuple(left), tuple(right)} == {(0,), (2,)}


def test_moment_points_between_pivots_share_a_side():
    left, right = classify_split(moment_curve(4, 2), [0, 3])
    assert sorted((len(left), len(right))) == [0, 2]
    assert sorted(left + right) == [1, 2]


def test_split_with_no_remaining_points():
    assert classify_split(P((0, 0), (1, 3)), [0, 1]) == ([], [])


def test_degenerate_split_raises():
    with pytest.raises(DegenerateInputError):
        classify_split(P((0, 0), (1, 1), (2, 2), (5, 0)), [0, 1])


def test_general_position_examples():
    assert is_general_position(moment_curve(6, 3))
    assert not is_general_position(P((0, 0), (1, 1), (2, 2), (5, 0)))
    assert is_general_position(P((0, 0), (3, 3)))


def test_general_position_budget():
    with pytest.raises(BudgetExceeded):
        is_general_position(moment_curve(30, 3), budget=100)


def test_convex_position():
    assert in_convex_position(P((0, 0), (1, 0), (1, 1), (0, 1)))
    assert not in_convex_position(P((0, 0), (4, 0), (0, 4), (1, 1)))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_moment_curve_general_position(d):
    assert is_general_position(moment_curve(8, d))


def test_random_sets_pass_general_position():
    for seed in range(5):
        assert is_general_position(random_pointset(9, 3, seed=seed))
