import math
import random
from fractions import Fraction

import pytest

from polyaheig import Polynomial, oracle

# Degree-5 test polynomial with two tiny, two clustered and one huge root.
# Exact integer coefficients; all of them are binary64 numbers.
EX2_COEFFS = [
    1,
    -20282409603651670423947251286016,
    713623846352979940529142984724747568191373312,
    -6277101735386680066937501969125693243111159424202737451008,
    4181389724724490601097907890741292883247104,
    -618970019642690000010608640,
]
# reference roots, 16 significant digits
EX2_ROOTS = [
    2.028240960365167e31,
    1.759218623050247e13,
    1.759218585832953e13,
    4.440892098500624e-16,
    2.220446049250314e-16,
]
# reference interpolating points (reciprocal strategy) and cond(u, d_j)
EX2_POINTS = [5.277655813324802e13, 1.759218604441599e13, 6.253878705847983e-16, 2.627905491153268e-16]
EX2_CONDS = [4.0, 3.58e16, 12.4, 46.4]
EX2_KB = [1.0, 3.01e15, 3.01e15, 12.6, 12.6]

W18_COEFFS_HEAD = [1, -171, 13566]
W18_COEFFS_TAIL = 6402373705728000

_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def ex2() -> Polynomial:
    for c in EX2_COEFFS:
        assert int(float(c)) == c
    return Polynomial([float(c) for c in EX2_COEFFS], name="ex2")


def ulps(x: float, ref: float) -> float:
    return (x - ref) / math.ulp(ref)


def random_real_rooted(rng: random.Random, degrees=(3, 12), max_spread=1e8, signs=(-1, 1)):
    """Random monic polynomial with distinct real roots, binary64 coefficients.

    Roots are 6-digit decimals, log-uniform over a random magnitude range up
    to ``max_spread``, relatively separated by 5%.  The exact polynomial is
    rounded to binary64 and kept only if exact sign checks show it still has
    one root between consecutive intended roots.  Returns the coefficients
    and exact separating points, highest first.
    """
    lo_deg, hi_deg = degrees
    while True:
        n = rng.randint(lo_deg, hi_deg)
        spread = 10 ** rng.uniform(0, math.log10(max_spread))
        mags = sorted(10 ** rng.uniform(0, math.log10(spread)) for _ in range(n))
        roots = sorted({float(f"{m:.6g}") * rng.choice(signs) for m in mags}, reverse=True)
        if len(roots) != n:
            continue
        if not all(abs(a - b) > 0.05 * max(abs(a), abs(b)) for a, b in zip(roots, roots[1:])):
            continue
        coeffs = [float(c) for c in oracle.poly_from_roots(roots)]
        fc = [Fraction(c) for c in coeffs]
        bound = oracle.cauchy_bound(fc)
        edges = [bound] + [(Fraction(a) + Fraction(b)) / 2 for a, b in zip(roots, roots[1:])] + [-bound]
        poly = oracle._IntegerPoly(fc)
        signs_at = [poly.sign(e) for e in edges]
        if 0 in signs_at or any(a == b for a, b in zip(signs_at, signs_at[1:])):
            continue
        return coeffs, edges
