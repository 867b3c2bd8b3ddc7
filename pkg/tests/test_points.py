from fractions import Fraction

import pytest

from hstree.geom import PointSet, is_general_position
from hstree.points import (
    PointFileError,
    format_points,
    load_points,
    moment_curve,
    parse_points,
    random_pointset,
    save_points,
)


def test_moment_curve_values():
    assert moment_curve(3, 2).points == ((1, 1), (2, 4), (3, 9))
    assert moment_curve(1, 5).points == ((1, 1, 1, 1, 1),)
    assert moment_curve(4, 1).points == ((1,), (2,), (3,), (4,))


def test_random_is_deterministic():
    a = random_pointset(20, 3, seed=11)
    b = random_pointset(20, 3, seed=11)
    assert a == b


@pytest.mark.parametrize("model", ["unit-cube-rational", "sphere-rational"])
@pytest.mark.parametrize("seed", range(5))
def test_small_random_sets_in_general_position(model, seed):
    ps = random_pointset(4, 2, model, seed)
    assert is_general_position(ps)
    assert "nonce=" in ps.label


def test_seeds_differ():
    a = random_pointset(100, 3, seed=1)
    b = random_pointset(100, 3, seed=2)
    assert sorted(a.points) != sorted(b.points)


def test_dyadic_denominators():
    ps = random_pointset(10, 2, seed=3, precision=40)
    assert all((1 << 40) % c.denominator == 0 for p in ps.points for c in p)


def test_sphere_points_near_unit_sphere():
    ps = random_pointset(10, 3, "sphere-rational", seed=4, precision=48)
    for p in ps.points:
        assert abs(float(sum(c * c for c in p)) - 1.0) < 1e-9


def test_argument_checks():
    with pytest.raises(ValueError):
        random_pointset(5, 2, precision=16)
    with pytest.raises(ValueError):
        random_pointset(5, 2, model="torus")


def test_round_trip(tmp_path):
    ps = moment_curve(5, 3)
    path = tmp_path / "m.txt"
    save_points(ps, path)
    assert load_points(path) == ps


def test_round_trip_rationals_and_label(tmp_path):
    ps = PointSet.from_coords([(Fraction(1, 3), -2), (Fraction(-7, 4), Fraction(5, 9))], label=" odd  label ")
    assert parse_points(format_points(ps)) == ps
    rnd = random_pointset(7, 3, "sphere-rational", seed=9)
    assert parse_points(format_points(rnd)) == rnd


def test_short_row_names_row():
    with pytest.raises(PointFileError, match="row 2"):
        parse_points("2 2\n1 2\n3\n")


def test_empty_file():
    with pytest.raises(PointFileError, match="missing header"):
        parse_points("")


def test_bad_token_reports_column():
    with pytest.raises(PointFileError, match="column 2"):
        parse_points("2 1\n1 x\n")


def test_count_mismatch():
    with pytest.raises(PointFileError):
        parse_points("1 3\n1\n2\n")


def test_comments_ignored():
    ps = parse_points("# label: demo\n# a comment\n1 2\n# between\n1/2\n3\n")
    assert ps.label == "demo"
    assert ps.points == ((Fraction(1, 2),), (Fraction(3),))
