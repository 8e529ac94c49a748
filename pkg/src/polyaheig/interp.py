"""Interpolating points that interlace the roots of a real-rooted polynomial.

Two sources of candidate points:

* ``derivative``  the roots of ``u'``;
* ``reciprocal``  the reciprocals of the roots of ``rev(u)'`` where
  ``rev(u)(x) = x**n u(1/x)``; better when root magnitudes differ wildly.

Candidate roots only seed the construction, so they are computed with an
ordinary companion-matrix eigensolver (``numpy.roots``).  Whatever the
source, points are accepted only after :func:`interlacing_check`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import AllStrategiesFailed, StrategyError, ZeroRootError
from .polynomial import Polynomial, derivative, horner_dd, reverse

STRATEGIES = ("derivative", "reciprocal", "auto")
DEFAULT_SPREAD = 1e6


@dataclass
class PointReport:
    point: float
    value: float
    expected_sign: int
    ok: bool


@dataclass
class InterlacingReport:
    ok: bool
    points: list[PointReport]
    reason: str = ""

    def __bool__(self):
        return self.ok


@dataclass
class Selection:
    points: list[float]
    strategy: str
    attempts: dict[str, str] = field(default_factory=dict)


def _sign_dd(v) -> int:
    if v.hi != 0.0:
        return 1 if v.hi > 0.0 else -1
    return (v.lo > 0.0) - (v.lo < 0.0)


def _real_roots(coeffs, what: str) -> list[float]:
    import numpy as np

    r = np.roots(np.asarray(coeffs, dtype=float))
    if np.iscomplexobj(r):
        if np.any(r.imag != 0.0):
            raise StrategyError(f"{what} has complex roots; cannot interlace")
        r = r.real
    if not np.all(np.isfinite(r)):
        raise StrategyError(f"{what} has non-finite computed roots")
    return [float(x) for x in r]


def points_from_derivative(u: Polynomial) -> list[float]:
    """Roots of ``u'``, sorted descending."""
    if u.degree < 2:
        return []
    du = derivative(u)
    return sorted(_real_roots(du.coeffs, "u'"), reverse=True)


def points_from_reversed(u: Polynomial) -> list[float]:
    """Reciprocals of the roots of ``rev(u)'``, sorted descending."""
    if u.degree < 2:
        return []
    ru = reverse(u)
    roots = _real_roots(derivative(ru).coeffs, "rev(u)'")
    if any(r == 0.0 for r in roots):
        raise StrategyError("rev(u)' has a zero root; reciprocal undefined")
    return sorted((1.0 / r for r in roots), reverse=True)


def interlacing_check(u: Polynomial, d) -> InterlacingReport:
    """Do the points ``d`` (any order) interlace the roots of ``u``?

    With ``d`` sorted descending, interlacing is equivalent to
    ``sign u(d_j) = (-1)**j`` for ``j = 1..n-1``: then every one of the
    ``n`` gaps cut out by the points holds an odd number of sign changes,
    hence exactly one root.  Signs come from double-double Horner.
    """
    ds = sorted((float(x) for x in d), reverse=True)
    n = u.degree
    reports = []
    ok = True
    reason = ""
    if len(ds) != n - 1:
        ok = False
        reason = f"expected {n - 1} points, got {len(ds)}"
    if any(a == b for a, b in zip(ds, ds[1:])):
        ok = False
        reason = reason or "points are not distinct"
    for j, x in enumerate(ds, 1):
        v = horner_dd(u, x)
        expected = -1 if j % 2 else 1
        good = _sign_dd(v) == expected
        reports.append(PointReport(x, v.hi + v.lo, expected, good))
        if not good:
            ok = False
            if not reason:
                reason = f"wrong sign of u at d_{j} = {x!r}" if v.hi != 0.0 or v.lo != 0.0 else f"u(d_{j}) == 0 at {x!r}"
    return InterlacingReport(ok, reports, reason)


def nudge_root_hits(u: Polynomial, d) -> list[float]:
    """Move points where ``u`` evaluates to exactly zero by one ulp.

    The direction is the one giving the sign the interlacing pattern asks
    for at that position.
    """
    ds = sorted((float(x) for x in d), reverse=True)
    out = []
    for j, x in enumerate(ds, 1):
        v = horner_dd(u, x)
        if v.hi == 0.0 and v.lo == 0.0:
            expected = -1 if j % 2 else 1
            for cand in (math.nextafter(x, math.inf), math.nextafter(x, -math.inf)):
                if _sign_dd(horner_dd(u, cand)) == expected:
                    x = cand
                    break
        out.append(x)
    return out


def combine_points(u: Polynomial, *candidate_lists) -> list[float]:
    """Pick one point per root gap from a pool of candidates.

    Walk the pooled candidates from the top and take each one whose sign
    of ``u`` is the next one the interlacing pattern needs.  This is a
    heuristic: it succeeds whenever every gap holds some candidate.
    """
    pool = sorted({float(x) for lst in candidate_lists for x in lst}, reverse=True)
    chosen = []
    n = u.degree
    for x in pool:
        if len(chosen) == n - 1:
            break
        expected = -1 if (len(chosen) + 1) % 2 else 1
        if _sign_dd(horner_dd(u, x)) == expected:
            chosen.append(x)
    return chosen


def _spread(u: Polynomial) -> float:
    import numpy as np

    est = np.abs(np.roots(np.asarray(u.coeffs, dtype=float)))
    est = est[np.isfinite(est)]
    if est.size == 0:
        return 1.0
    lo = float(est.min())
    return math.inf if lo == 0.0 else float(est.max()) / lo


_SOURCES = {"derivative": points_from_derivative, "reciprocal": points_from_reversed}


def select_points(u: Polynomial, strategy: str = "auto", spread_threshold: float = DEFAULT_SPREAD) -> Selection:
    """Interlacing points for ``u`` by the requested strategy.

    ``auto`` tries ``reciprocal`` first when the estimated root magnitudes
    span more than ``spread_threshold``, else ``derivative``; then the other
    one; then a combination of both candidate lists.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if strategy == "auto":
        order = ["reciprocal", "derivative"] if _spread(u) > spread_threshold else ["derivative", "reciprocal"]
    else:
        order = [strategy]

    from numpy.linalg import LinAlgError

    attempts: dict[str, str] = {}
    candidates = {}
    for name in order:
        try:
            pts = nudge_root_hits(u, _SOURCES[name](u))
        except (StrategyError, ZeroRootError, LinAlgError) as exc:
            attempts[name] = str(exc)
            continue
        candidates[name] = pts
        report = interlacing_check(u, pts)
        if report.ok:
            return Selection(pts, name, attempts)
        attempts[name] = report.reason

    if strategy == "auto" and len(candidates) == 2:
        pts = combine_points(u, *candidates.values())
        report = interlacing_check(u, pts)
        if report.ok:
            return Selection(pts, "combined", attempts)
        attempts["combined"] = report.reason or "no interlacing subset"
    raise AllStrategiesFailed(
        "; ".join(f"{k}: {v}" for k, v in attempts.items()) or "no strategy succeeded", attempts
    )
