import math
from fractions import Fraction

import pytest

from conftest import EX2_POINTS
from polyaheig import oracle
from polyaheig.errors import AllStrategiesFailed, ZeroRootError
from polyaheig.interp import (
    combine_points,
    interlacing_check,
    nudge_root_hits,
    points_from_derivative,
    points_from_reversed,
    select_points,
)
from polyaheig.polynomial import Polynomial
from polyaheig.solver import generate_wilkinson


def poly(roots):
    return Polynomial([float(c) for c in oracle.poly_from_roots(roots)])


def test_derivative_points_small():
    assert points_from_derivative(Polynomial([1, -3, 2])) == [1.5]
    pts = points_from_derivative(Polynomial([1, 0, -1, 0]))
    assert pts == pytest.approx([1 / math.sqrt(3), -1 / math.sqrt(3)], rel=1e-15)


def test_reversed_points_small():
    assert points_from_reversed(Polynomial([1, -3, 2])) == pytest.approx([4 / 3], rel=1e-15)
    with pytest.raises(ZeroRootError):
        points_from_reversed(Polynomial([1, 0, -1, 0]))


@pytest.mark.parametrize("source", [points_from_derivative, points_from_reversed])
def test_w18_points_interlace_exactly(source):
    w = generate_wilkinson(18)
    pts = source(w)
    assert len(pts) == 17
    fc = [Fraction(c) for c in w.coeffs]
    for i, x in enumerate(sorted(pts)):
        assert i + 1 < x < i + 2
        # exact sign pattern
        v = oracle.rational_horner(fc, x)
        assert (v > 0) == ((17 - i) % 2 == 0)
    assert interlacing_check(w, pts)


def test_ex2_reciprocal_points_match_table(ex2):
    pts = points_from_reversed(ex2)
    for got, want in zip(pts, EX2_POINTS):
        assert got == pytest.approx(want, rel=1e-10)


def test_ex2_strategies(ex2):
    with pytest.raises(AllStrategiesFailed) as exc:
        select_points(ex2, "derivative")
    assert "derivative" in exc.value.attempts
    assert select_points(ex2, "auto").strategy == "reciprocal"
    assert select_points(Polynomial([1, -3, 2])).strategy == "derivative"


def test_interlacing_check():
    u = Polynomial([1, -3, 2])
    assert interlacing_check(u, [1.5])
    rep = interlacing_check(u, [2.5])
    assert not rep and "wrong sign" in rep.reason
    assert not interlacing_check(u, [1.5, 1.7])
    u3 = poly([1, 2, 3])
    assert not interlacing_check(u3, [2.5, 2.5])
    assert not interlacing_check(u3, [2.0, 1.5]).ok


def test_nudge_root_hits():
    u = poly([1, 2, 3])
    pts = nudge_root_hits(u, [2.0, 1.5])
    assert pts[0] != 2.0 and abs(pts[0] - 2.0) <= math.ulp(2.0)
    assert interlacing_check(u, pts)


def test_combine_points():
    u = poly([1, 2, 3, 4])
    # neither list alone interlaces
    a = [3.5, 3.2, 0.5]
    b = [2.5, 1.5, 1.2]
    assert not interlacing_check(u, a) and not interlacing_check(u, b)
    pts = combine_points(u, a, b)
    assert pts == [3.5, 2.5, 1.5]
    assert interlacing_check(u, pts)


def test_unknown_strategy():
    with pytest.raises(ValueError):
        select_points(Polynomial([1, -3, 2]), "newton")


def test_complex_derivative_roots_fail():
    # x^3 - x^2 + x - 1 = (x - 1)(x^2 + 1): derivative has complex roots
    with pytest.raises(AllStrategiesFailed):
        select_points(Polynomial([1, -1, 1, -1]), "derivative")
