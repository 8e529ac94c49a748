"""Forward-stable eigenvalues of real symmetric arrowhead matrices.

Each eigenvalue ``lambda_k`` (``k = 1`` largest) of ``A = [[D, z], [z^T, alpha]]``
is computed on its own, in O(n) operations:

1. pick the pole ``d_i`` nearest to ``lambda_k``;
2. form ``A_i^{-1} = (A - d_i I)^{-1}`` explicitly.  It is again an
   arrowhead matrix (arrow through row ``i``) whose entries are all
   computable to high relative accuracy; only the tip ``b`` can suffer
   cancellation, measured by ``K_b``, in which case it is recomputed from
   the double-double ``z`` and ``alpha``;
3. find the extremal eigenvalue ``nu`` of ``A_i^{-1}`` by bisection;
4. ``lambda = 1/nu + d_i``.

Step 3 is accurate when ``nu`` is the eigenvalue of ``A_i^{-1}`` of largest
magnitude, and step 4 when ``|lambda|`` is not much smaller than ``|d_i|``.
When either fails (an eigenvalue far from every pole, or close to 0 with a
distant pole) the amplification is measured and ``lambda`` is recomputed
with the shift ``sigma = lambda_hat``: ``(A - sigma I)^{-1}`` is diagonal
plus rank one, ``phi_A(sigma)`` is evaluated in double-double, and
``lambda = sigma + 1/nu`` with ``|1/nu|`` tiny next to ``|sigma|``.

Pole and eigenvalue indices are 1-based, matching ``d_1 > d_2 > ...`` and
``lambda_1 > lambda_2 > ...``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .dd import (
    EPS,
    ONE,
    DoubleDouble,
    dd_add,
    dd_add_float,
    dd_div,
    dd_round,
    dd_sub,
    two_product,
    two_sum,
)
from .errors import BracketError, PoleError
from .fiedler import ArrowheadMatrix, zeta_squared
from .polynomial import horner_abs, horner_compensated

# b is escalated once its sum loses a bit: the double-double tip costs O(n)
# per root, small next to the bisection, and a non-escalated b with K_b of
# a few already moves tiny roots by ulps
DEFAULT_TAU_B = 2.0
DEFAULT_TAU_NU = 10.0
LOW_CONFIDENCE = 1e-8
# bisection on binary64 brackets: mantissa bits plus full exponent range, twice
MAX_BISECT = 2 * (53 + 2098)


@dataclass(frozen=True)
class ShiftedInverse:
    """Explicit ``(A - d_i I)^{-1}``.

    After moving row/column ``i`` to the front it reads

        [[b,  w^T,          1/zeta_i],
         [w,  diag(inv_gaps), 0     ],
         [1/zeta_i, 0,        0     ]]

    with ``w = w1 + w2`` (poles above ``d_i`` first).
    """

    i: int
    shift: float
    inv_gaps: tuple[float, ...]
    w1: tuple[float, ...]
    w2: tuple[float, ...]
    b: float
    inv_zeta: float
    b_escalated: bool
    K_b: float

    @property
    def w(self) -> tuple[float, ...]:
        return self.w1 + self.w2

    def dense(self):
        import numpy as np

        p = len(self.inv_gaps)
        m = np.zeros((p + 2, p + 2))
        m[0, 0] = self.b
        m[0, 1 : p + 1] = m[1 : p + 1, 0] = self.w
        m[0, -1] = m[-1, 0] = self.inv_zeta
        m[np.arange(1, p + 1), np.arange(1, p + 1)] = self.inv_gaps
        return m


@dataclass(frozen=True)
class RootResult:
    lam: float
    lam_lo: float
    k: int
    shift_index: int  # nearest pole, 1-based
    shift: float  # shift actually used: the pole, or sigma on the "sigma" route
    side: str
    K_b: float
    b_escalated: bool
    kappa_bound: float
    residual: float
    residual_scale: float
    iterations: int
    route: str = "pole"
    capped: bool = False
    amplification: float = 1.0  # max(kappa_nu, bisection amplification) of the pole route
    K_shift: float = 1.0  # K_b, or the cancellation factor of phi(sigma) on the sigma route

    @property
    def low_confidence(self) -> bool:
        return not self.kappa_bound * EPS <= LOW_CONFIDENCE

    @property
    def error_bound(self) -> float:
        """A priori relative forward error bound ``kappa_bound * eps``."""
        return self.kappa_bound * EPS

    def residual_ok(self, n: int) -> bool:
        return self.residual <= self.residual_scale * (self.kappa_bound + 4 * n) * EPS


def kappa_bound(n: int, K_b: float, escalated: bool) -> float:
    """Bound on ``|kappa_lambda|`` in ``lambda_hat = lambda (1 + kappa_lambda eps)``."""
    rn = math.sqrt(n)
    bisect = 3.18 * n * (rn + 1.0)
    if escalated:
        return (6 * n + 21) * rn + bisect + 4.0
    return 3.0 * rn * ((3 * n + 6) * K_b + 2 * n + 7) + bisect + 4.0


# --- secular function of A ---------------------------------------------------


def secular_eval(m: ArrowheadMatrix, lam: float) -> tuple[float, int]:
    """``alpha - lam - sum zeta_j**2 / (d_j - lam)``, left to right."""
    value = m.alpha_hi - lam
    for dj, zj in zip(m.d, m.z_hi):
        gap = dj - lam
        if gap == 0.0:
            raise PoleError(f"secular function evaluated at pole {dj!r}")
        value -= zj * zj / gap
    return value, (value > 0.0) - (value < 0.0)


# --- shift and invert ----------------------------------------------------------


def _escalated_b_numerator(m: ArrowheadMatrix, idx: int) -> DoubleDouble:
    """``d_i - alpha + sum_{j != i} zeta_j**2 / (d_j - d_i)`` in double-double."""
    di = m.d[idx]
    acc = dd_sub(DoubleDouble(di, 0.0), m.alpha)  # -a = d_i - alpha
    s, e = acc.hi, acc.lo
    squares = zeta_squared(m)
    for j, (dj, zsq) in enumerate(zip(m.d, squares)):
        if j == idx:
            continue
        # (zsq.hi + zsq.lo) / (g + gl), with g + gl = d_j - d_i exactly
        g, gl = two_sum(dj, -di)
        q1 = zsq.hi / g
        p, pe = two_product(q1, g)
        r = ((zsq.hi - p) - pe) + zsq.lo - q1 * gl
        q2 = r / g
        # acc += q1 + q2
        t, te = two_sum(s, q1)
        te += e + q2
        s = t + te
        e = te - (s - t)
    return DoubleDouble(s, e)


def shift_invert(m: ArrowheadMatrix, i: int, tau_b: float = DEFAULT_TAU_B, escalate: bool | None = None) -> ShiftedInverse:
    """Entries of ``(A - d_i I)^{-1}`` for the 1-based pole index ``i``.

    ``escalate`` forces (True) or forbids (False) the double-double tip;
    by default it is used when ``K_b > tau_b``.
    """
    p = len(m.d)
    if not 1 <= i <= p:
        raise IndexError(f"pole index {i} outside 1..{p}")
    idx = i - 1
    d = m.d
    z = m.z_hi
    alpha = m.alpha_hi
    di = d[idx]
    zi = z[idx]
    inv_zeta = 1.0 / zi

    inv_gaps = []
    w1 = []
    w2 = []
    s1 = 0.0
    s2 = 0.0
    for j in range(p):
        if j == idx:
            continue
        zj = z[j]
        ig = 1.0 / (d[j] - di)
        inv_gaps.append(ig)
        t = zj * ig
        if j < idx:
            w1.append(-t * inv_zeta)
            s1 += zj * t
        else:
            w2.append(-t * inv_zeta)
            s2 += zj * t
    a = alpha - di
    num = (s1 + s2) - a
    scale = abs(alpha) + abs(di) + abs(s1) + abs(s2)
    K_b = scale / abs(num) if num != 0.0 else math.inf

    escalated = K_b > tau_b if escalate is None else bool(escalate)
    if escalated:
        b = dd_round(dd_div(_escalated_b_numerator(m, idx), zeta_squared(m)[idx]))
    else:
        b = num / zi / zi
    return ShiftedInverse(
        i=i,
        shift=di,
        inv_gaps=tuple(inv_gaps),
        w1=tuple(w1),
        w2=tuple(w2),
        b=b,
        inv_zeta=inv_zeta,
        b_escalated=escalated,
        K_b=K_b,
    )


def _bisect(f, lo: float, hi: float) -> tuple[float, int, bool]:
    """Bisection for an increasing-sign-convention root: ``f(x) > 0`` left of it.

    Runs until no representable midpoint remains.
    """
    it = 0
    while it < MAX_BISECT:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            mid = lo + 0.5 * (hi - lo)
            if not lo < mid < hi:
                break
        it += 1
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    else:
        return 0.5 * (lo + hi), it, True
    flo, fhi = abs(f(lo)), abs(f(hi))
    return (lo if flo < fhi else hi), it, False


def inverse_secular(s: ShiftedInverse):
    """Secular function of the shifted inverse, as a callable of ``nu``."""
    b = s.b
    y0 = s.inv_zeta * s.inv_zeta
    poles = s.inv_gaps
    weights = tuple(w * w for w in s.w)

    def f(nu):
        acc = b - nu + y0 / nu
        for g, w2 in zip(poles, weights):
            acc -= w2 / (g - nu)
        return acc

    return f


def extremal_inverse_eig(s: ShiftedInverse, side: str, info: bool = False):
    """Largest or smallest eigenvalue ``nu`` of the shifted inverse by bisection.

    The bracket is the exterior interval between the outermost pole of the
    inverse (including its zero diagonal entry) and the Gershgorin bound.
    With ``info=True`` returns ``(nu, iterations, capped)``.
    """
    f = inverse_secular(s)
    w = s.w
    aiz = abs(s.inv_zeta)
    radius_i = math.fsum(abs(x) for x in w) + aiz
    if side == "largest":
        lo = max((g for g in s.inv_gaps if g > 0.0), default=0.0)
        hi = max([s.b + radius_i, aiz] + [g + abs(x) for g, x in zip(s.inv_gaps, w)])
        if not hi > lo:
            hi = lo + radius_i
        grow = 0
        while f(hi) > 0.0:
            hi = lo + 2.0 * (hi - lo)
            grow += 1
            if grow > 2100:
                raise BracketError("no sign change above the largest pole of the inverse")
    elif side == "smallest":
        hi = min((g for g in s.inv_gaps if g < 0.0), default=0.0)
        lo = min([s.b - radius_i, -aiz] + [g - abs(x) for g, x in zip(s.inv_gaps, w)])
        if not lo < hi:
            lo = hi - radius_i
        grow = 0
        while f(lo) <= 0.0:
            lo = hi - 2.0 * (hi - lo)
            grow += 1
            if grow > 2100:
                raise BracketError("no sign change below the smallest pole of the inverse")
    else:
        raise ValueError(f"side must be 'largest' or 'smallest', not {side!r}")
    nu, it, capped = _bisect(f, lo, hi)
    if info:
        return nu, it, capped
    return nu


# --- shift away from the poles: (A - sigma I)^{-1} = diag(e, 0) + rho v v^T ----


def _phi_dd(m: ArrowheadMatrix, sigma: float) -> tuple[DoubleDouble, float]:
    """``phi_A(sigma)`` in double-double, with the sum of its term magnitudes."""
    acc = dd_add_float(m.alpha, -sigma)
    mag = abs(m.alpha_hi) + abs(sigma)
    for dj, zsq in zip(m.d, zeta_squared(m)):
        t = dd_div(zsq, DoubleDouble(*two_sum(dj, -sigma)))
        acc = dd_sub(acc, t)
        mag += abs(t.hi)
    return acc, mag


def _sigma_eig(m: ArrowheadMatrix, sigma: float):
    """Eigenvalue of ``A`` nearest to ``sigma`` as ``sigma + 1/nu``.

    ``sigma`` must not be a pole.  ``nu`` is the eigenvalue of
    ``(A - sigma I)^{-1}`` of largest magnitude; its sign is that of
    ``phi_A(sigma)``.  Returns ``(lam_dd, nu, iterations, capped, K_phi)``.
    """
    phi, mag = _phi_dd(m, sigma)
    phi_s = dd_round(phi)
    if phi_s == 0.0:
        return DoubleDouble(sigma, 0.0), math.inf, 0, False, math.inf
    K_phi = mag / abs(phi_s)
    e = [1.0 / (dj - sigma) for dj in m.d]
    v2 = [(zj * ej) ** 2 for zj, ej in zip(m.z_hi, e)]
    vnorm2 = math.fsum(v2) + 1.0

    # h increases through its root; negate to reuse the bisection convention
    def f(mu):
        acc = 1.0 / mu - phi_s
        for ej, vj in zip(e, v2):
            acc -= vj / (ej - mu)
        return acc

    if phi_s > 0.0:
        lo = max(max(e, default=0.0), 0.0)
        hi = lo + vnorm2 / phi_s
        while f(hi) > 0.0:
            hi = lo + 2.0 * (hi - lo)
    else:
        hi = min(min(e, default=0.0), 0.0)
        lo = hi + vnorm2 / phi_s
        while f(lo) <= 0.0:
            lo = hi - 2.0 * (hi - lo)
    nu, it, capped = _bisect(f, lo, hi)
    lam = dd_add_float(dd_div(ONE, DoubleDouble(nu, 0.0)), sigma)
    return lam, nu, it, capped, K_phi


def bisection_amplification(s: ShiftedInverse, nu: float) -> float:
    """Relative condition of the computed root ``nu`` of the inverse secular function.

    Sum of term magnitudes over ``|nu f'(nu)|``.  It stays below about 4
    when ``nu`` is the eigenvalue of largest magnitude of the inverse.
    """
    y0 = s.inv_zeta * s.inv_zeta
    mag = abs(s.b) + abs(nu) + abs(y0 / nu)
    slope = 1.0 + y0 / (nu * nu)
    for g, w in zip(s.inv_gaps, s.w):
        gap = g - nu
        t = w * w / gap
        mag += abs(t)
        slope += t / gap
    return mag / (abs(nu) * slope)


# --- driver --------------------------------------------------------------------


def _midpoint_sign(m: ArrowheadMatrix, upper: int, lower: int) -> int:
    """Sign of the secular function at the midpoint of ``(d[lower], d[upper])``.

    Evaluated in coordinates shifted by ``d[lower]``; falls back to
    double-double when the working-precision value is within its own
    rounding-error estimate of zero.
    """
    d = m.d
    z = m.z_hi
    dl = d[lower]
    half = 0.5 * (d[upper] - dl)
    first = m.alpha_hi - dl
    value = first - half
    mag = abs(first) + abs(half)
    for dj, zj in zip(d, z):
        t = zj * zj / ((dj - dl) - half)
        value -= t
        mag += abs(t)
    if abs(value) > 4.0 * (len(d) + 4) * EPS * mag:
        return 1 if value > 0.0 else -1
    # exact midpoint offset (d_u - d_l)/2 as a pair
    hg = two_sum(d[upper], -dl)
    half_dd = DoubleDouble(0.5 * hg[0], 0.5 * hg[1])
    acc = dd_sub(dd_add_float(m.alpha, -dl), half_dd)
    for dj, zsq in zip(d, zeta_squared(m)):
        gap = dd_sub(DoubleDouble(*two_sum(dj, -dl)), half_dd)
        acc = dd_sub(acc, dd_div(zsq, gap))
    return (acc.hi > 0.0) - (acc.hi < 0.0) if acc.hi != 0.0 else (acc.lo > 0.0) - (acc.lo < 0.0)


def select_shift(m: ArrowheadMatrix, k: int) -> tuple[int, str]:
    """1-based nearest-pole index and side of ``nu`` for eigenvalue ``k``."""
    n = m.order
    if k == 1:
        return 1, "largest"
    if k == n:
        return n - 1, "smallest"
    upper, lower = k - 2, k - 1  # 0-based: lambda_k in (d[lower], d[upper])
    sgn = _midpoint_sign(m, upper, lower)
    if sgn == 0:
        # equidistant: prefer the pole with the larger weight
        sgn = -1 if abs(m.z_hi[lower]) >= abs(m.z_hi[upper]) else 1
    if sgn < 0:
        return lower + 1, "largest"
    return upper + 1, "smallest"


def _residual(m: ArrowheadMatrix, lam: float) -> tuple[float, float]:
    if m.source is None:
        return math.nan, math.nan
    h, c = horner_compensated(m.source, lam)
    return abs(h + c), horner_abs(m.source, lam)


def eigenvalue_k(
    m: ArrowheadMatrix,
    k: int,
    tau_b: float = DEFAULT_TAU_B,
    tau_nu: float = DEFAULT_TAU_NU,
    escalate: bool | None = None,
) -> RootResult:
    """The ``k``-th largest eigenvalue of ``m`` (``1 <= k <= n``)."""
    n = m.order
    if not 1 <= k <= n:
        raise IndexError(f"eigenvalue index {k} outside 1..{n}")
    i, side = select_shift(m, k)
    s = shift_invert(m, i, tau_b=tau_b, escalate=escalate)
    nu, it, capped = extremal_inverse_eig(s, side, info=True)
    inv = dd_div(ONE, DoubleDouble(nu, 0.0))
    lam = dd_add_float(inv, s.shift)
    route = "pole"
    K_b, escalated, shift = s.K_b, s.b_escalated, s.shift
    K_shift = K_b

    # the pole route is accurate only when nu dominates the inverse and the
    # final addition does not cancel; otherwise shift next to lambda itself
    lam_v = lam.hi
    k_nu = (abs(s.shift) + abs(inv.hi)) / abs(lam_v) if lam_v != 0.0 else math.inf
    amp = max(k_nu, bisection_amplification(s, nu))
    if amp > tau_nu and _inside(m, k, lam_v):
        lam, _, it0, capped0, K_phi = _sigma_eig(m, lam_v)
        route = "sigma"
        shift = lam_v
        K_shift = K_phi
        it += it0
        capped = capped or capped0

    kb = kappa_bound(n, K_b, escalated) if route == "pole" else kappa_bound(n, K_shift, True)
    residual, rscale = _residual(m, lam.hi)
    return RootResult(
        lam=lam.hi,
        lam_lo=lam.lo,
        k=k,
        shift_index=i,
        shift=shift,
        side=side,
        K_b=K_b,
        b_escalated=escalated,
        kappa_bound=kb,
        residual=residual,
        residual_scale=rscale,
        iterations=it,
        route=route,
        capped=capped,
        amplification=amp,
        K_shift=K_shift,
    )


def _inside(m: ArrowheadMatrix, k: int, x: float) -> bool:
    """Is ``x`` strictly inside the interlacing interval of ``lambda_k``?"""
    d = m.d
    upper = d[k - 2] if k >= 2 else math.inf
    lower = d[k - 1] if k <= len(d) else -math.inf
    return lower < x < upper


def eigenvalues(
    m: ArrowheadMatrix,
    ks: Sequence[int] | None = None,
    threads: int = 1,
    **options,
) -> list[RootResult]:
    """All (or the selected) eigenvalues, in the order of ``ks``.

    Each eigenvalue is independent of the others, so a thread pool may be
    used; results come back in input order regardless.
    """
    if ks is None:
        ks = range(1, m.order + 1)
    ks = list(ks)
    if threads <= 1 or len(ks) < 2:
        return [eigenvalue_k(m, k, **options) for k in ks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda k: eigenvalue_k(m, k, **options), ks))
