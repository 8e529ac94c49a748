"""Exact rational reference computations.

Nothing here is used on the solver path; these routines exist so tests,
acceptance runs and ``solve --verify`` can compare against exact values.
Every binary64 number is a dyadic rational, so ``Fraction(x)`` is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .dd import DoubleDouble


def to_fraction(x) -> Fraction:
    if isinstance(x, DoubleDouble):
        return Fraction(x.hi) + Fraction(x.lo)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(float(x))


def exact_coeffs(u) -> list[Fraction]:
    coeffs = getattr(u, "coeffs", u)
    return [to_fraction(c) for c in coeffs]


def poly_from_roots(roots: Sequence) -> list[Fraction]:
    """Monic coefficients of prod (x - r), descending powers, exactly."""
    c = [Fraction(1)]
    for r in roots:
        r = to_fraction(r)
        nxt = c + [Fraction(0)]
        for i in range(1, len(nxt)):
            nxt[i] -= r * c[i - 1]
        c = nxt
    return c


def rational_horner(coeffs: Sequence, x) -> Fraction:
    x = to_fraction(x)
    r = Fraction(0)
    for a in coeffs:
        r = r * x + to_fraction(a)
    return r


class _IntegerPoly:
    """Sign evaluation of a rational polynomial with integer arithmetic only."""

    def __init__(self, coeffs: Sequence):
        fr = [to_fraction(c) for c in coeffs]
        den = 1
        for f in fr:
            den = den * f.denominator // math.gcd(den, f.denominator)
        self.ints = [int(f * den) for f in fr]

    def sign(self, x: Fraction) -> int:
        p, q = x.numerator, x.denominator
        # q**n * den * u(p/q) = sum c_i p**(n-i) q**i
        r = 0
        qpow = 1
        n = len(self.ints) - 1
        ppow = [1] * (n + 1)
        for k in range(1, n + 1):
            ppow[k] = ppow[k - 1] * p
        for i, c in enumerate(self.ints):
            if c:
                r += c * ppow[n - i] * qpow
            qpow *= q
        return (r > 0) - (r < 0)


def bisect_root(coeffs: Sequence, bracket, bits: int = 100) -> Fraction:
    """Exact-arithmetic bisection for a root inside ``bracket``.

    Returns the midpoint of the final enclosure.  The enclosure width is at
    most ``2**-bits * max(1, |root|)``; when the bracket does not contain 0
    the stronger relative bound ``2**-bits * min(|lo|, |hi|)`` is used, so
    tiny roots are resolved to full relative precision.  A midpoint at
    which the polynomial vanishes is returned immediately.
    """
    lo, hi = (to_fraction(b) for b in bracket)
    if lo > hi:
        lo, hi = hi, lo
    poly = _IntegerPoly(coeffs)
    slo, shi = poly.sign(lo), poly.sign(hi)
    if slo == 0:
        return lo
    if shi == 0:
        return hi
    if slo == shi:
        raise ValueError(f"no sign change on [{float(lo)!r}, {float(hi)!r}]")
    scale = Fraction(1, 2**bits)
    floor_width = Fraction(1, 2**1200)
    while True:
        if lo > 0 or hi < 0:
            tol = scale * min(abs(lo), abs(hi))
        else:
            tol = floor_width
        if hi - lo <= tol:
            return (lo + hi) / 2
        mid = (lo + hi) / 2
        s = poly.sign(mid)
        if s == 0:
            return mid
        if s == slo:
            lo = mid
        else:
            hi = mid


def cauchy_bound(coeffs: Sequence) -> Fraction:
    """All roots of a monic polynomial satisfy |x| < 1 + max |a_i|."""
    fr = [to_fraction(c) for c in coeffs]
    return 1 + max(abs(c) for c in fr[1:])


def _polymul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polyadd(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    off = len(a) - len(b)
    for i, y in enumerate(b):
        out[off + i] += y
    return out


def char_poly_exact(d: Sequence, zeta_sq: Sequence, alpha, absolute: bool = False) -> list[Fraction]:
    """Exact ``det(xI - A)`` for the arrowhead matrix ``[[diag(d), z], [z^T, alpha]]``.

    Uses the exact expansion

        det(xI - A) = (x - alpha) prod_j (x - d_j) - sum_j zeta_j**2 prod_{i != j} (x - d_i).

    With ``absolute=True`` every contribution is taken in magnitude, which
    gives the coefficient scale used for rounding-error tolerances.
    """
    d = [to_fraction(x) for x in d]
    z2 = [to_fraction(x) for x in zeta_sq]
    alpha = to_fraction(alpha)
    sgn = (lambda t: abs(t)) if absolute else (lambda t: t)

    def lin(root):
        return [Fraction(1), sgn(-root)]

    full = [Fraction(1)]
    for dj in d:
        full = _polymul(full, lin(dj))
    out = _polymul(full, lin(alpha))
    for j, zj in enumerate(z2):
        part = [sgn(-zj)]
        for i, di in enumerate(d):
            if i != j:
                part = _polymul(part, lin(di))
        out = _polyadd(out, part)
    return out
