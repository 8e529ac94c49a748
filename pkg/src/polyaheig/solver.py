"""End-to-end root finder: points -> arrowhead matrix -> eigenvalues."""

from __future__ import annotations

import gc
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__
from .aheig import DEFAULT_TAU_B, DEFAULT_TAU_NU, RootResult, eigenvalues
from .dd import EPS, DoubleDouble, dd_add_float, dd_mul, dd_neg, two_sum
from .errors import NotInterlacingError
from .fiedler import ArrowheadMatrix, build, build_from_values, k_alpha
from .interp import DEFAULT_SPREAD, interlacing_check, select_points
from .polynomial import Polynomial, cond_at, deflate_zero_roots, horner_abs, horner_compensated


@dataclass
class PointInfo:
    value: float
    cond: float


@dataclass
class SolveReport:
    """Roots (descending) with the diagnostics that back their error bounds."""

    roots: list[RootResult]
    d_points: list[PointInfo]
    strategy: str
    k_alpha: float
    max_cond: float
    max_K_b: float
    escalation_count: int
    timings: dict[str, float]
    degree: int
    zero_roots: int = 0
    kappa_A: list[float] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    matrix: ArrowheadMatrix | None = field(default=None, repr=False)

    @property
    def values(self) -> list[float]:
        return [r.lam for r in self.roots]


def _trivial_root(u: Polynomial | None, lam: float, k: int, route: str) -> RootResult:
    if u is None:
        residual, scale = 0.0, 0.0
    else:
        h, c = horner_compensated(u, lam)
        residual, scale = abs(h + c), horner_abs(u, lam)
    return RootResult(
        lam=lam, lam_lo=0.0, k=k, shift_index=0, shift=0.0, side="-", K_b=1.0,
        b_escalated=False, kappa_bound=0.0, residual=residual, residual_scale=scale,
        iterations=0, route=route,
    )


def kappa_A_bounds(n: int, conds: Sequence[float], K_alpha: float) -> list[float]:
    """``max(2 max_{j != i} |kappa_zeta_j|, |kappa_alpha|)`` for each pole ``i``.

    Uses ``|kappa_zeta_j| <= n cond(u, d_j) + (n + 1)/2`` and
    ``|kappa_alpha| <= K_alpha (n - 1)``.
    """
    kz = [n * c + (n + 1) / 2 for c in conds]
    ka = K_alpha * (n - 1)
    out = []
    for i in range(len(kz)):
        others = [x for j, x in enumerate(kz) if j != i]
        out.append(max(2 * max(others, default=0.0), ka))
    return out


def solve(
    u: Polynomial,
    strategy: str = "auto",
    points: Sequence[float] | None = None,
    tau_b: float = DEFAULT_TAU_B,
    tau_nu: float = DEFAULT_TAU_NU,
    threads: int = 1,
    horner: str = "double-double",
    spread_threshold: float = DEFAULT_SPREAD,
    escalate: bool | None = None,
) -> SolveReport:
    """All roots of the monic, real-rooted polynomial ``u``.

    Exact zero roots are split off first and merged back at the end.
    ``points`` overrides the strategy with user-supplied interpolating
    points (checked for interlacing).
    """
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    core, nzero = deflate_zero_roots(u)
    warnings: list[str] = []

    if core is None:
        roots = [_trivial_root(u, 0.0, k, "deflated") for k in range(1, nzero + 1)]
        return SolveReport(roots, [], "none", math.nan, math.nan, math.nan, 0,
                           {"total": time.perf_counter() - t0}, u.degree, nzero)

    m = None
    if core.degree == 1:
        core_roots = [_trivial_root(core, -core.a1, 1, "linear")]
        d_points: list[PointInfo] = []
        used, K_alpha, max_cond, kA = "none", math.nan, math.nan, []
        timings["build"] = 0.0
        timings["roots"] = 0.0
    else:
        if points is not None:
            if nzero:
                raise ValueError("--points cannot be combined with exact zero roots")
            report = interlacing_check(core, points)
            if not report.ok:
                raise NotInterlacingError(f"supplied points do not interlace the roots: {report.reason}")
            pts, used = list(points), "points"
        else:
            sel = select_points(core, strategy, spread_threshold)
            pts, used = sel.points, sel.strategy
        m = build(core, pts, horner=horner, strategy=used)
        conds = [cond_at(core, x) for x in m.d]
        d_points = [PointInfo(x, c) for x, c in zip(m.d, conds)]
        K_alpha = k_alpha(m)
        max_cond = max(conds)
        t1 = time.perf_counter()
        timings["build"] = t1 - t0
        core_roots = eigenvalues(m, threads=threads, tau_b=tau_b, tau_nu=tau_nu, escalate=escalate)
        timings["roots"] = time.perf_counter() - t1
        n = core.degree
        kA = kappa_A_bounds(n, conds, K_alpha)
        if max_cond > 1 / EPS:
            warnings.append(f"cond(u, d_j) = {max_cond:.3g} exceeds 1/eps")
        if not K_alpha <= 1 / EPS:
            warnings.append(f"K_alpha = {K_alpha:.3g} exceeds 1/eps")
        for r in core_roots:
            if r.K_b > 1 / EPS:
                warnings.append(f"root {r.k}: K_b = {r.K_b:.3g} exceeds 1/eps")
            if r.b_escalated and r.shift_index and kA[r.shift_index - 1] * r.K_b > 1 / EPS:
                warnings.append(
                    f"root {r.k}: kappa_A * K_b = {kA[r.shift_index - 1] * r.K_b:.3g} exceeds 1/eps"
                )
            if r.low_confidence:
                warnings.append(f"root {r.k}: error bound {r.error_bound:.3g} is large")
            if r.capped:
                warnings.append(f"root {r.k}: bisection hit its iteration cap")

    merged = [(r.lam, r) for r in core_roots] + [
        (0.0, _trivial_root(None, 0.0, 0, "deflated")) for _ in range(nzero)
    ]
    merged.sort(key=lambda t: -t[0])
    roots = []
    for k, (_, r) in enumerate(merged, 1):
        roots.append(r if r.k == k else _renumber(r, k))
    timings["total"] = time.perf_counter() - t0
    kbs = [r.K_b for r in core_roots if r.route != "linear"]
    return SolveReport(
        roots=roots,
        d_points=d_points,
        strategy=used,
        k_alpha=K_alpha,
        max_cond=max_cond,
        max_K_b=max(kbs) if kbs and m is not None else math.nan,
        escalation_count=sum(r.b_escalated for r in core_roots),
        timings=timings,
        degree=u.degree,
        zero_roots=nzero,
        kappa_A=kA,
        warnings=warnings,
        matrix=m,
    )


def _renumber(r: RootResult, k: int) -> RootResult:
    from dataclasses import replace

    return replace(r, k=k)


# --- verification against the exact oracle ------------------------------------


def verify(u: Polynomial, report: SolveReport, bits: int = 100) -> dict:
    """Compare every computed root with an exact bisection of ``u``.

    Brackets come from the interpolating points (the roots interlace them),
    closed off by the Cauchy bound.  Returns per-root relative deviations
    and whether each is inside its a priori bound.
    """
    from .oracle import bisect_root, cauchy_bound

    core, _ = deflate_zero_roots(u)
    rows = []
    if core is not None:
        coeffs = [Fraction(c) for c in core.coeffs]
        bound = cauchy_bound(coeffs)
        edges = [bound] + [Fraction(p.value) for p in report.d_points] + [-bound]
        nonzero = [r for r in report.roots if r.route != "deflated"]
        for r, hi, lo in zip(nonzero, edges, edges[1:]):
            exact = bisect_root(coeffs, (lo, hi), bits)
            if exact == 0:
                dev = abs(r.lam)
            else:
                dev = float(abs((Fraction(r.lam) - exact) / exact))
            rows.append({
                "k": r.k, "computed": r.lam, "exact": float(exact), "rel_dev": dev,
                "bound": r.error_bound, "ok": dev <= max(r.error_bound, EPS),
            })
    return {
        "bits": bits,
        "max_rel_dev": max((row["rel_dev"] for row in rows), default=0.0),
        "all_within_bound": all(row["ok"] for row in rows),
        "roots": rows,
    }


# --- generators and benchmark ----------------------------------------------------


def wilkinson_coeffs(n: int) -> list[int]:
    """Exact integer coefficients of ``prod_{i=1}^{n} (x - i)``."""
    if n < 1:
        raise ValueError("Wilkinson degree must be >= 1")
    c = [1]
    for r in range(1, n + 1):
        c = [a - r * b for a, b in zip(c + [0], [0] + c)]
    return c


def generate_wilkinson(n: int, strict: bool = True) -> Polynomial:
    """Wilkinson's polynomial ``W_n`` with binary64 coefficients.

    ``strict`` requires every coefficient to be exactly representable
    (true up to ``n = 18``), otherwise raises ValueError.
    """
    if n > 20:
        raise ValueError("Wilkinson polynomials are supported for n <= 20")
    exact = wilkinson_coeffs(n)
    floats = [float(c) for c in exact]
    bad = [i for i, (c, f) in enumerate(zip(exact, floats)) if int(f) != c]
    if bad and strict:
        raise ValueError(
            f"W_{n}: coefficients {bad} are not representable in binary64; pass strict=False to round"
        )
    return Polynomial(floats, name=f"W{n}")


def _chebyshev_instance(n: int):
    """Roots and interlacing points of the monic ``2 T_n(x/2)``.

    Held in product form: its monomial coefficients cannot be rounded to
    binary64 at large ``n`` without destroying the real roots.
    """
    roots = [2.0 * math.cos((2 * k - 1) * math.pi / (2 * n)) for k in range(1, n + 1)]
    pts = [2.0 * math.cos(j * math.pi / n) for j in range(1, n)]
    return roots, pts


def _product_value(roots: Sequence[float], x: float) -> DoubleDouble:
    p = DoubleDouble(1.0, 0.0)
    for r in roots:
        p = dd_mul(p, DoubleDouble(*two_sum(x, -r)))
    return p


def bench(sizes: Sequence[int], threads: int = 1, tau_b: float = DEFAULT_TAU_B, repeat: int = 3) -> list[dict]:
    """Time the two phases on Chebyshev-spread synthetic polynomials.

    Build phase: ``u(d_j)`` in double-double (O(n) per point), the
    ``v'(d_j)`` products, ``z`` and ``alpha``.  Root phase: all ``n``
    eigenvalues.  Both are O(n**2) overall.  Each size is run ``repeat``
    times and the fastest run is kept; the roots must agree bit for bit
    across runs.
    """
    for n in sizes:
        if n < 2:
            raise ValueError("bench sizes must be >= 2")
    # like timeit: keep the cyclic collector out of the measurements
    enabled = gc.isenabled()
    gc.disable()
    try:
        return _bench(sizes, threads, tau_b, repeat)
    finally:
        if enabled:
            gc.enable()


def _bench(sizes, threads, tau_b, repeat) -> list[dict]:
    instances = {n: _chebyshev_instance(n) for n in sizes}
    best: dict[int, tuple[float, float, float]] = {}
    seen: dict[int, list[float]] = {}
    # sizes are interleaved within each round so that drift in machine
    # speed hits all of them alike
    for _ in range(max(1, repeat)):
        for n in sizes:
            roots, pts = instances[n]
            t0 = time.perf_counter()
            values = [_product_value(roots, x) for x in pts]
            a1 = dd_neg(_dd_total(roots))
            m = build_from_values(pts, values, a1, strategy="chebyshev")
            t1 = time.perf_counter()
            res = eigenvalues(m, threads=threads, tau_b=tau_b)
            t2 = time.perf_counter()
            lams = [r.lam for r in res]
            if n in seen and lams != seen[n]:
                raise RuntimeError(f"bench: roots differ between runs at n = {n}")
            seen[n] = lams
            if n not in best or t2 - t0 < best[n][2]:
                best[n] = (t1 - t0, t2 - t1, t2 - t0)

    rows = []
    prev = None
    for n in sizes:
        build_s, roots_s, total = best[n]
        roots = instances[n][0]
        err = max(abs(lam - x) / abs(x) for lam, x in zip(seen[n], roots))
        rows.append({
            "n": n,
            "build_s": build_s,
            "roots_s": roots_s,
            "per_root_s": roots_s / n,
            "total_s": total,
            "ratio": total / prev if prev else math.nan,
            "max_rel_err": err,
        })
        prev = total
    return rows


def _dd_total(xs: Sequence[float]) -> DoubleDouble:
    acc = DoubleDouble(0.0, 0.0)
    for x in xs:
        acc = dd_add_float(acc, x)
    return acc
