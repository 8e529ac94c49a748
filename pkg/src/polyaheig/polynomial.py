"""Monic real polynomials and Horner evaluation at three accuracy tiers.

Coefficients are stored in descending powers, ``a[0] = 1``.  Evaluation
tiers:

* ``horner``             plain binary64 Horner, error <= cond * 2n * eps
* ``horner_compensated`` Graillat-Langlois-Louvet compensated Horner,
                         result ``h + c`` behaves as if computed in twice
                         the working precision
* ``horner_dd``          Horner carried out in double-double arithmetic,
                         error <= cond * 2n * eps**2
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .dd import (
    DoubleDouble,
    dd_add_float,
    dd_mul_float,
    two_product,
    two_sum,
)
from .errors import ZeroRootError

TIERS = ("standard", "compensated", "double-double")


@dataclass(frozen=True)
class Polynomial:
    """Monic polynomial ``x**n + a1 x**(n-1) + ... + an``.

    Non-monic input is divided through by its leading coefficient on
    construction; that coefficient is kept in ``scale`` so the original is
    ``scale * self``.  Division may round, so the normalized coefficients
    are exact only when ``scale`` is a power of two (or 1).
    """

    coeffs: tuple[float, ...]
    scale: float = 1.0
    name: str = field(default="", compare=False)

    def __init__(self, coeffs: Iterable[float], name: str = ""):
        cs = [float(c) for c in coeffs]
        while cs and cs[0] == 0.0:
            cs.pop(0)
        if len(cs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        if not all(math.isfinite(c) for c in cs):
            raise ValueError("coefficients must be finite")
        lead = cs[0]
        if lead != 1.0:
            cs = [1.0] + [c / lead for c in cs[1:]]
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "scale", lead)
        object.__setattr__(self, "name", name)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def a1(self) -> float:
        return self.coeffs[1]

    def __call__(self, x: float) -> float:
        return horner(self, x)

    def __len__(self):
        return len(self.coeffs)


@dataclass(frozen=True)
class EvalResult:
    value: DoubleDouble
    cond: float
    tier: str


def horner(u: Polynomial, x: float) -> float:
    r = 0.0
    for a in u.coeffs:
        r = r * x + a
    return r


def horner_dd(u: Polynomial, x: float) -> DoubleDouble:
    r = DoubleDouble(u.coeffs[0], 0.0)
    for a in u.coeffs[1:]:
        r = dd_add_float(dd_mul_float(r, x), a)
    return r


def horner_compensated(u: Polynomial, x: float) -> tuple[float, float]:
    """Compensated Horner scheme; returns ``(h, c)`` with ``u(x) ~ h + c``.

    Both parts are returned because callers continue in double-double.
    """
    coeffs = u.coeffs
    h = coeffs[0]
    c = 0.0
    for a in coeffs[1:]:
        p, pi = two_product(h, x)
        h, sigma = two_sum(p, a)
        c = c * x + (pi + sigma)
    return h, c


def horner_abs(u: Polynomial, x: float) -> float:
    """``sum |a_i| |x|**(n-i)``, the numerator of the condition number."""
    ax = abs(x)
    r = 0.0
    for a in u.coeffs:
        r = r * ax + abs(a)
    return r


def cond_at(u: Polynomial, x: float) -> float:
    """Condition number of evaluating ``u`` at ``x``; +inf at a numerical root."""
    value = horner_dd(u, x)
    mag = abs(value.hi + value.lo)
    if mag == 0.0:
        return math.inf
    return horner_abs(u, x) / mag


def evaluate(u: Polynomial, x: float, tier: str = "double-double") -> EvalResult:
    if tier == "standard":
        value = DoubleDouble(horner(u, x), 0.0)
    elif tier == "compensated":
        h, c = horner_compensated(u, x)
        value = DoubleDouble(*two_sum(h, c))
    elif tier == "double-double":
        value = horner_dd(u, x)
    else:
        raise ValueError(f"unknown tier {tier!r}; expected one of {TIERS}")
    mag = abs(value.hi + value.lo)
    cond = math.inf if mag == 0.0 else horner_abs(u, x) / mag
    return EvalResult(value, cond, tier)


def derivative(u: Polynomial) -> Polynomial:
    """Derivative, renormalized to monic (``scale`` = degree of ``u``)."""
    n = u.degree
    if n < 2:
        raise ValueError("derivative of a linear polynomial is constant")
    raw = [(n - i) * a for i, a in enumerate(u.coeffs[:-1])]
    return Polynomial(raw, name=f"{u.name}'" if u.name else "")


def reverse(u: Polynomial) -> Polynomial:
    """``x**n u(1/x)``, renormalized to monic with ``scale = a_n``."""
    if u.coeffs[-1] == 0.0:
        raise ZeroRootError("reverse polynomial undefined: u has a zero root (a_n == 0)")
    return Polynomial(u.coeffs[::-1])


def count_zero_roots(coeffs: Sequence[float]) -> int:
    k = 0
    for c in reversed(coeffs):
        if c != 0.0:
            break
        k += 1
    return k


def deflate_zero_roots(u: Polynomial) -> tuple[Polynomial | None, int]:
    """Strip exact zero roots; returns ``(remaining or None, count)``."""
    k = count_zero_roots(u.coeffs)
    if k == 0:
        return u, 0
    rest = u.coeffs[: len(u.coeffs) - k]
    if len(rest) < 2:
        return None, k
    return Polynomial(rest, name=u.name), k


# --- text format -----------------------------------------------------------


def _parse_number(tok: str) -> float:
    t = tok.strip()
    low = t.lower()
    if "0x" in low or low.startswith(("+0x", "-0x")):
        return float.fromhex(t)
    return float(t)


def parse_coeffs(text: str) -> list[float]:
    """One coefficient per line, descending powers; ``#`` lines ignored."""
    coeffs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            coeffs.append(_parse_number(s))
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {s!r} as a number") from None
    if len(coeffs) < 2:
        raise ValueError("need at least two coefficients")
    return coeffs


def format_coeffs(coeffs: Iterable[float], hexfloat: bool = False, header: str = "") -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    for c in coeffs:
        c = float(c)
        if hexfloat:
            lines.append(c.hex())
        elif c == int(c) and abs(c) < 2**63:
            lines.append(str(int(c)))
        else:
            lines.append(repr(c))
    return "\n".join(lines) + "\n"


def read_polynomial(path) -> Polynomial:
    with open(path) as fh:
        return Polynomial(parse_coeffs(fh.read()), name=str(path))
