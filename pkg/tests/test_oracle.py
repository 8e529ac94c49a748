import math
from fractions import Fraction

import pytest

from polyaheig import oracle
from polyaheig.dd import DoubleDouble
from polyaheig.solver import wilkinson_coeffs


def test_rational_horner():
    w = wilkinson_coeffs(18)
    assert oracle.rational_horner(w, 19) == math.factorial(18)
    for r in range(1, 19):
        assert oracle.rational_horner(w, r) == 0
    assert oracle.rational_horner([1, 0, -1], Fraction(1, 2)) == Fraction(-3, 4)


def test_to_fraction():
    assert oracle.to_fraction(DoubleDouble(1.0, 2.0**-60)) == 1 + Fraction(1, 2**60)
    assert oracle.to_fraction(0.1) == Fraction(0.1)


def test_bisect_sqrt2():
    r = oracle.bisect_root([1, 0, -2], (1, 2), bits=100)
    assert abs(r * r - 2) < Fraction(1, 2**98)


def test_bisect_detects_exact_root():
    w = wilkinson_coeffs(18)
    assert oracle.bisect_root(w, (16.5, 17.5), bits=80) == 17


def test_bisect_ex2_largest():
    from conftest import EX2_COEFFS

    r = oracle.bisect_root(EX2_COEFFS, (2e31, 2.1e31))
    assert f"{float(r):.15e}" == "2.028240960365167e+31"


def test_bisect_tiny_root_relative():
    # root 3e-200: relative, not absolute, resolution
    c = oracle.poly_from_roots([3e-200, 1.0])
    r = oracle.bisect_root(c, (1e-201, 1e-199))
    assert abs(r - Fraction(3e-200)) / Fraction(3e-200) < Fraction(1, 2**99)


def test_bisect_needs_sign_change():
    with pytest.raises(ValueError):
        oracle.bisect_root([1, 0, -2], (2, 3))


def test_poly_from_roots_and_char_poly():
    assert oracle.poly_from_roots([1, 2]) == [1, -3, 2]
    # [[1.5, .5], [.5, 1.5]]
    assert oracle.char_poly_exact([1.5], [0.25], 1.5) == [1, -3, 2]
    assert oracle.char_poly_exact([0.0], [1.0], 0.0) == [1, 0, -1]


def test_integer_sign_matches_fraction():
    c = [Fraction(1), Fraction(-7, 3), Fraction(1, 5), Fraction(2)]
    p = oracle._IntegerPoly(c)
    for x in (Fraction(-3), Fraction(1, 7), Fraction(2), Fraction(22, 7)):
        v = oracle.rational_horner(c, x)
        assert p.sign(x) == (v > 0) - (v < 0)


def test_cauchy_bound():
    assert oracle.cauchy_bound([1, -3, 2]) == 4
