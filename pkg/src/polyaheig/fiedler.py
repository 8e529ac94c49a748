"""Generalized companion arrowhead matrix of a monic polynomial.

For interpolating points ``d_1 > ... > d_{n-1}`` that interlace the roots
of ``u``, the matrix

    A = [[diag(d), z], [z^T, alpha]]

with ``zeta_j**2 = -u(d_j) / prod_{i != j} (d_j - d_i)`` and
``alpha = -a_1 - sum d_j`` has characteristic polynomial ``u``.  The
entries ``z`` and ``alpha`` are produced in double-double arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .dd import (
    EPS,
    DoubleDouble,
    dd_add_float,
    dd_div,
    dd_mul,
    dd_neg,
    dd_sqr,
    dd_sqrt,
    two_sum,
)
from .errors import NotInterlacingError, RootHitError
from .polynomial import Polynomial, horner_dd, horner_compensated


@dataclass(frozen=True)
class ArrowheadMatrix:
    """Real symmetric irreducible arrowhead matrix of order ``n``.

    ``d`` is strictly decreasing; ``perm[j]`` is the input position of
    ``d[j]``.  ``z`` and ``alpha`` are double-double; their ``.hi`` parts
    are the working-precision copies used by the eigensolver.
    """

    d: tuple[float, ...]
    z: tuple[DoubleDouble, ...]
    alpha: DoubleDouble
    perm: tuple[int, ...] = ()
    source: Polynomial | None = None
    strategy: str | None = None
    zeta_sq: tuple[DoubleDouble, ...] = ()

    @property
    def order(self) -> int:
        return len(self.d) + 1

    @property
    def z_hi(self) -> tuple[float, ...]:
        return tuple(zj.hi for zj in self.z)

    @property
    def alpha_hi(self) -> float:
        return self.alpha.hi

    def dense(self):
        """Dense working-precision copy, for tests and small-n checks."""
        import numpy as np

        n = self.order
        a = np.zeros((n, n))
        a[np.arange(n - 1), np.arange(n - 1)] = self.d
        a[:-1, -1] = self.z_hi
        a[-1, :-1] = self.z_hi
        a[-1, -1] = self.alpha_hi
        return a


def _sorted_points(d: Sequence[float]) -> tuple[tuple[float, ...], tuple[int, ...]]:
    pts = [float(x) for x in d]
    if not all(math.isfinite(x) for x in pts):
        raise ValueError("interpolating points must be finite")
    perm = tuple(sorted(range(len(pts)), key=lambda j: -pts[j]))
    ds = tuple(pts[j] for j in perm)
    for a, b in zip(ds, ds[1:]):
        if not a > b:
            raise ValueError(f"interpolating points must be distinct (repeated {a!r})")
    return ds, perm


def _dd_diff(a: float, b: float) -> DoubleDouble:
    return DoubleDouble(*two_sum(a, -b))


def vprime_products(d: Sequence[float]) -> list[DoubleDouble]:
    """``prod_{i != j} (d_j - d_i)`` in double-double, O(n) per point."""
    out = []
    for j, dj in enumerate(d):
        p = DoubleDouble(1.0, 0.0)
        for i, di in enumerate(d):
            if i != j:
                p = dd_mul(p, _dd_diff(dj, di))
        out.append(p)
    return out


def build_from_values(
    d: Sequence[float],
    values: Sequence[DoubleDouble],
    a1,
    *,
    perm: Sequence[int] | None = None,
    source: Polynomial | None = None,
    strategy: str | None = None,
) -> ArrowheadMatrix:
    """Assemble the matrix from ``u(d_j)`` already known in double-double.

    ``d`` must be strictly decreasing and aligned with ``values``.  ``a1``
    is the subdegree coefficient, a float or a DoubleDouble.
    """
    d = tuple(float(x) for x in d)
    for j, val in enumerate(values):
        if val.hi == 0.0 and val.lo == 0.0:
            raise RootHitError(f"u(d[{j}]) is exactly zero at d = {d[j]!r}", j, d[j])
    prods = vprime_products(d)
    z = []
    squares = []
    for j, (val, pj) in enumerate(zip(values, prods)):
        zsq = dd_div(dd_neg(val), pj)
        if not zsq.hi > 0.0:
            raise NotInterlacingError(
                f"zeta_{j + 1}^2 = {zsq.hi!r} <= 0: points do not interlace the roots", j, d[j]
            )
        squares.append(zsq)
        z.append(dd_sqrt(zsq))
    alpha = a1 if isinstance(a1, DoubleDouble) else DoubleDouble(float(a1), 0.0)
    alpha = dd_neg(alpha)
    for dj in d:
        alpha = dd_add_float(alpha, -dj)
    return ArrowheadMatrix(
        d=d,
        z=tuple(z),
        alpha=alpha,
        perm=tuple(perm) if perm is not None else tuple(range(len(d))),
        source=source,
        strategy=strategy,
        zeta_sq=tuple(squares),
    )


def _compensated_dd(u: Polynomial, x: float) -> DoubleDouble:
    h, c = horner_compensated(u, x)
    return DoubleDouble(*two_sum(h, c))


EVALUATORS: dict[str, Callable[[Polynomial, float], DoubleDouble]] = {
    "double-double": horner_dd,
    "compensated": _compensated_dd,
}


def build(u: Polynomial, d: Sequence[float], *, horner: str = "double-double", strategy: str | None = None) -> ArrowheadMatrix:
    """Fiedler's arrowhead matrix for ``u`` and interpolating points ``d``.

    ``d`` is sorted descending here; the permutation is kept in ``perm``.
    Raises RootHitError if some ``u(d_j)`` evaluates to exactly 0, and
    NotInterlacingError if some ``zeta_j**2`` comes out non-positive.
    """
    if len(d) != u.degree - 1:
        raise ValueError(f"need {u.degree - 1} interpolating points, got {len(d)}")
    ds, perm = _sorted_points(d)
    evaluate = EVALUATORS[horner]
    values = [evaluate(u, x) for x in ds]
    return build_from_values(ds, values, u.a1, perm=perm, source=u, strategy=strategy)


def k_alpha(m: ArrowheadMatrix, a1: float | None = None) -> float:
    """Amplification factor ``(|a1| + sum |d_j|) / |alpha|`` for ``alpha``."""
    if a1 is None:
        if m.source is None:
            raise ValueError("a1 required when the matrix has no source polynomial")
        a1 = m.source.a1
    alpha = abs(m.alpha.hi + m.alpha.lo)
    num = abs(a1) + math.fsum(abs(x) for x in m.d)
    if alpha == 0.0:
        return math.inf
    return num / alpha


def k_alpha_flagged(k: float) -> bool:
    return not k <= 1.0 / EPS


def trace_defect(m: ArrowheadMatrix, a1: float) -> Fraction:
    """Exact ``sum d_j + alpha + a1``; zero for an exact construction."""
    total = Fraction(m.alpha.hi) + Fraction(m.alpha.lo) + Fraction(a1)
    for x in m.d:
        total += Fraction(x)
    return total


def char_poly_check(m: ArrowheadMatrix) -> list[Fraction]:
    """Exact characteristic polynomial of ``m`` (``n <= 10`` only)."""
    from .oracle import char_poly_exact, to_fraction

    if m.order > 10:
        raise ValueError("exact characteristic polynomial limited to order <= 10")
    zsq = [to_fraction(zj) ** 2 for zj in m.z]
    return char_poly_exact(m.d, zsq, m.alpha)


def zeta_squared(m: ArrowheadMatrix) -> tuple[DoubleDouble, ...]:
    """``zeta_j**2`` in double-double, as computed before the square root."""
    return m.zeta_sq if m.zeta_sq else tuple(dd_sqr(zj) for zj in m.z)


__all__ = [
    "ArrowheadMatrix",
    "build",
    "build_from_values",
    "char_poly_check",
    "k_alpha",
    "k_alpha_flagged",
    "trace_defect",
    "vprime_products",
    "zeta_squared",
]
