import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polyaheig import oracle
from polyaheig.errors import ZeroRootError
from polyaheig.polynomial import (
    Polynomial,
    cond_at,
    deflate_zero_roots,
    derivative,
    evaluate,
    format_coeffs,
    horner,
    horner_compensated,
    horner_dd,
    parse_coeffs,
    reverse,
)
from polyaheig.solver import generate_wilkinson, wilkinson_coeffs

EPS = 2.0**-53


def dd_val(v) -> Fraction:
    return Fraction(v.hi) + Fraction(v.lo)


def test_normalization():
    u = Polynomial([2.0, -6.0, 4.0])
    assert u.coeffs == (1.0, -3.0, 2.0)
    assert u.scale == 2.0
    assert Polynomial([0.0, 1.0, 5.0]).degree == 1
    with pytest.raises(ValueError):
        Polynomial([3.0])
    with pytest.raises(ValueError):
        Polynomial([1.0, math.inf])


def test_horner_small():
    assert horner(Polynomial([1, 0, -1]), 0.0) == -1.0
    assert horner(Polynomial([1, -3, 2]), 1.5) == -0.25
    assert horner_dd(Polynomial([1, 0, -1]), 0.0) == (-1.0, 0.0)
    assert horner_compensated(Polynomial([1, 0, -1]), 0.0) == (-1.0, 0.0)
    assert horner_compensated(Polynomial([1, 0, 0, 0]), 2.0) == (8.0, 0.0)


def test_w18_at_19_is_18_factorial():
    w = generate_wilkinson(18)
    assert horner(w, 19.0) == float(math.factorial(18))
    assert dd_val(horner_dd(w, 19.0)) == math.factorial(18)


@pytest.mark.parametrize("x", [17.5, 8.5, 3.25, 12.75])
def test_w18_accurate_tiers(x):
    w = generate_wilkinson(18)
    exact = oracle.rational_horner(w.coeffs, x)
    c = cond_at(w, x)
    n = w.degree
    v = horner_dd(w, x)
    assert abs((dd_val(v) - exact) / exact) <= c * 2 * n * Fraction(EPS) ** 2
    h, cc = horner_compensated(w, x)
    # compensated: roughly eps + cond * eps**2
    assert abs((Fraction(h) + Fraction(cc) - exact) / exact) <= Fraction(EPS) + c * 2 * n * Fraction(EPS) ** 2


def test_w18_integer_roots_evaluate_to_zero():
    w = generate_wilkinson(18)
    for r in range(1, 19):
        assert horner_dd(w, float(r)) == (0.0, 0.0)
        assert cond_at(w, float(r)) == math.inf


def test_cond():
    assert cond_at(Polynomial([1, 0, -2]), 1.0) == 3.0
    ev = evaluate(Polynomial([1, 0, -2]), 1.0, "compensated")
    assert ev.cond == 3.0 and ev.tier == "compensated"
    with pytest.raises(ValueError):
        evaluate(Polynomial([1, 0, -2]), 1.0, "quad")


def test_cond_table_points(ex2):
    assert round(cond_at(ex2, 5.277655813324802e13)) == 4
    assert cond_at(ex2, 1.759218604441599e13) == pytest.approx(3.58e16, rel=0.02)


def test_derivative():
    assert derivative(Polynomial([1, -3, 2])).coeffs == (1.0, -1.5)
    assert derivative(Polynomial([1, 0, 0, 0, 0])).coeffs == (1.0, 0.0, 0.0, 0.0)
    w = generate_wilkinson(18)
    exact = wilkinson_coeffs(18)
    raw = [(18 - i) * c for i, c in enumerate(exact[:-1])]
    dw = derivative(w)
    assert dw.scale == 18
    for got, want in zip(dw.coeffs, raw):
        # one rounding for (n - i) * a, one for the division by n
        ref = Fraction(want, 18)
        assert abs(Fraction(got) - ref) <= 2 * Fraction(EPS) * abs(ref)


def test_reverse():
    r = reverse(Polynomial([1, -3, 2]))
    assert r.coeffs == (1.0, -1.5, 0.5)
    assert r.scale == 2.0
    with pytest.raises(ZeroRootError):
        reverse(Polynomial([1, 0, -1, 0]))


def test_reverse_ex2(ex2):
    r = reverse(ex2)
    lead = ex2.coeffs[-1]
    assert r.scale == lead
    for got, a in zip(r.coeffs, ex2.coeffs[::-1]):
        assert got == a / lead


@given(st.lists(st.integers(-50, 50).map(float), min_size=2, max_size=8).filter(lambda c: c[-1] != 0.0))
def test_reverse_involution(tail):
    u = Polynomial([1.0] + tail)
    back = reverse(reverse(u))
    for a, b in zip(back.coeffs, u.coeffs):
        assert a == pytest.approx(b, rel=4 * EPS, abs=0)


def test_deflate():
    core, k = deflate_zero_roots(Polynomial([1, -3, 2, 0, 0]))
    assert k == 2 and core.coeffs == (1.0, -3.0, 2.0)
    core, k = deflate_zero_roots(Polynomial([1, 0]))
    assert core is None and k == 1


def test_parse_and_format_roundtrip():
    text = "# comment\n1\n\n-0x1.8p+1\n2.5e-3\n"
    assert parse_coeffs(text) == [1.0, -3.0, 0.0025]
    with pytest.raises(ValueError, match="line 2"):
        parse_coeffs("1\nabc\n")
    vals = [1.0, -0.1, 1e300, 2.0**70]
    for hexfloat in (False, True):
        assert parse_coeffs(format_coeffs(vals, hexfloat=hexfloat, header="x")) == vals
