"""Double-double arithmetic built on error-free transformations.

A :class:`DoubleDouble` is an unevaluated sum ``hi + lo`` of two binary64
numbers with ``|lo| <= ulp(hi)/2``.  It carries roughly 106 significant
bits, i.e. machine precision ``eps**2`` where ``eps = 2**-53``.

Operations follow Dekker (1971) and the accurate variants used in the QD
library.  Measured worst-case relative errors over 10**5 random operands
(see ``tests/test_dd.py``), in units of ``u2 = 2**-106``:

=========  ===========  ============
operation  bound used   observed max
=========  ===========  ============
dd_add     3 u2         < 2 u2
dd_sub     3 u2         < 2 u2
dd_mul     7 u2         < 4 u2
dd_div     8 u2         < 4 u2
dd_sqrt    4 u2         < 3 u2
=========  ===========  ============

All of these sit below the ``4 * 2**-104 = 16 u2`` acceptance bound.

Valid magnitude range: Dekker's split overflows for ``|a| > 2**996``;
products are only error-free when no underflow happens in the low part.
"""

from __future__ import annotations

import math
from typing import NamedTuple

# 2**27 + 1, Veltkamp splitting constant for binary64
_SPLITTER = 134217729.0
SPLIT_LIMIT = 2.0**996

EPS = 2.0**-53


class DoubleDouble(NamedTuple):
    hi: float
    lo: float = 0.0

    def __float__(self):
        return self.hi + self.lo

    def __repr__(self):
        return f"DoubleDouble({self.hi!r}, {self.lo!r})"


ZERO = DoubleDouble(0.0, 0.0)
ONE = DoubleDouble(1.0, 0.0)


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Knuth's TwoSum: ``s + e == a + b`` exactly, ``s = fl(a + b)``."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def quick_two_sum(a: float, b: float) -> tuple[float, float]:
    # requires |a| >= |b| (or a == 0)
    s = a + b
    e = b - (s - a)
    return s, e


def split(a: float) -> tuple[float, float]:
    """Veltkamp split of ``a`` into two 26-bit halves, ``hi + lo == a``."""
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_product(a: float, b: float) -> tuple[float, float]:
    """Dekker's TwoProduct: ``p + e == a * b`` exactly, ``p = fl(a * b)``.

    Python 3.10 has no ``math.fma``, so this is the split-based variant.
    Exact for ``|a|, |b| <= 2**996`` barring underflow in ``e``.
    """
    p = a * b
    ah, al = split(a)
    bh, bl = split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _finish(s: float, e: float) -> DoubleDouble:
    s, e = quick_two_sum(s, e)
    if not math.isfinite(s):
        return DoubleDouble(s, 0.0)
    return DoubleDouble(s, e)


def dd_from(x: float) -> DoubleDouble:
    return DoubleDouble(float(x), 0.0)


def dd_round(x: DoubleDouble) -> float:
    """Round a pair to the nearest working-precision number."""
    return x.hi + x.lo


def renormalize(hi: float, lo: float) -> DoubleDouble:
    """Bring an arbitrary pair into non-overlapping form."""
    s, e = two_sum(hi, lo)
    if not math.isfinite(s):
        return DoubleDouble(s, 0.0)
    return DoubleDouble(s, e)


def dd_neg(x: DoubleDouble) -> DoubleDouble:
    return DoubleDouble(-x.hi, -x.lo)


def dd_abs(x: DoubleDouble) -> DoubleDouble:
    return dd_neg(x) if x.hi < 0.0 or (x.hi == 0.0 and x.lo < 0.0) else x


def dd_sign(x: DoubleDouble) -> int:
    if x.hi > 0.0:
        return 1
    if x.hi < 0.0:
        return -1
    return (x.lo > 0.0) - (x.lo < 0.0)


def dd_add(x: DoubleDouble, y: DoubleDouble) -> DoubleDouble:
    """Accurate (IEEE-style) double-double addition."""
    s, e = two_sum(x.hi, y.hi)
    t, f = two_sum(x.lo, y.lo)
    e += t
    s, e = quick_two_sum(s, e)
    e += f
    return _finish(s, e)


def dd_sub(x: DoubleDouble, y: DoubleDouble) -> DoubleDouble:
    return dd_add(x, DoubleDouble(-y.hi, -y.lo))


def dd_add_float(x: DoubleDouble, b: float) -> DoubleDouble:
    s, e = two_sum(x.hi, b)
    e += x.lo
    return _finish(s, e)


def dd_mul(x: DoubleDouble, y: DoubleDouble) -> DoubleDouble:
    p, e = two_product(x.hi, y.hi)
    e += x.hi * y.lo + x.lo * y.hi
    return _finish(p, e)


def dd_mul_float(x: DoubleDouble, b: float) -> DoubleDouble:
    p, e = two_product(x.hi, b)
    e += x.lo * b
    return _finish(p, e)


def dd_sqr(x: DoubleDouble) -> DoubleDouble:
    p, e = two_product(x.hi, x.hi)
    e += 2.0 * x.hi * x.lo
    return _finish(p, e)


def dd_div(x: DoubleDouble, y: DoubleDouble) -> DoubleDouble:
    """Long division with three quotient digits.

    Raises ZeroDivisionError when ``y`` represents 0.
    """
    if y.hi == 0.0:
        if y.lo == 0.0:
            raise ZeroDivisionError("double-double division by zero")
        y = renormalize(y.hi, y.lo)
    if math.isnan(x.hi) or math.isnan(y.hi):
        return DoubleDouble(math.nan, 0.0)
    q1 = x.hi / y.hi
    if not math.isfinite(q1):
        return DoubleDouble(q1, 0.0)
    r = dd_sub(x, dd_mul_float(y, q1))
    q2 = r.hi / y.hi
    r = dd_sub(r, dd_mul_float(y, q2))
    q3 = r.hi / y.hi
    q1, q2 = quick_two_sum(q1, q2)
    return dd_add_float(DoubleDouble(q1, q2), q3)


def dd_sqrt(x: DoubleDouble) -> DoubleDouble:
    """Square root by one Newton correction of ``sqrt(hi)``.

    Raises ValueError for negative arguments.
    """
    if x.hi < 0.0 or (x.hi == 0.0 and x.lo < 0.0):
        raise ValueError("double-double sqrt of a negative number")
    if x.hi == 0.0:
        return ZERO
    if not math.isfinite(x.hi):
        return DoubleDouble(math.sqrt(x.hi), 0.0)
    s = math.sqrt(x.hi)
    r = dd_sub(x, dd_sqr(DoubleDouble(s, 0.0)))
    return _finish(s, r.hi / (2.0 * s))


def dd_sum(values) -> DoubleDouble:
    acc = ZERO
    for v in values:
        acc = dd_add(acc, v) if isinstance(v, DoubleDouble) else dd_add_float(acc, v)
    return acc
