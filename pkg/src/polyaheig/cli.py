"""Command line interface: ``polyaheig solve | gen | bench``.

Exit codes: 0 success, 2 no interlacing points / strategy failure,
3 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .aheig import DEFAULT_TAU_B
from .errors import AllStrategiesFailed, NotInterlacingError, RootHitError, StrategyError
from .interp import STRATEGIES
from .polynomial import Polynomial, format_coeffs, parse_coeffs
from .solver import SolveReport, bench, generate_wilkinson, solve, verify

EXIT_OK = 0
EXIT_STRATEGY = 2
EXIT_INPUT = 3


class InputError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_polynomial(path: str) -> Polynomial:
    try:
        return Polynomial(parse_coeffs(_read_text(path)), name=path)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_points(path: str) -> list[float]:
    text = _read_text(path)
    pts = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            pts.append(float.fromhex(s) if "0x" in s.lower() else float(s))
        except ValueError:
            raise InputError(f"{path}, line {lineno}: cannot parse {s!r}") from None
    return pts


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _json_num(x: float):
    # JSON has no inf/nan; keep them readable as strings
    return x if math.isfinite(x) else repr(x)


def report_json(report: SolveReport, check: dict | None = None) -> dict:
    out = {
        "roots": [
            {
                "value_hex": r.lam.hex(),
                "value_dec": _fmt(r.lam),
                "k_b": _json_num(r.K_b),
                "kappa_bound": _json_num(r.kappa_bound),
                "residual": _json_num(r.residual),
                "escalated": r.b_escalated,
            }
            for r in report.roots
        ],
        "diagnostics": {
            "k_alpha": _json_num(report.k_alpha),
            "max_cond": _json_num(report.max_cond),
            "strategy": report.strategy,
            "d_points": [
                {"value_hex": p.value.hex(), "value_dec": _fmt(p.value), "cond": _json_num(p.cond)}
                for p in report.d_points
            ],
            "max_k_b": _json_num(report.max_K_b),
            "escalation_count": report.escalation_count,
            "zero_roots": report.zero_roots,
            "warnings": report.warnings,
        },
        "meta": {"degree": report.degree, "version": __version__},
    }
    if check is not None:
        out["verify"] = {
            "bits": check["bits"],
            "max_rel_dev": check["max_rel_dev"],
            "all_within_bound": check["all_within_bound"],
        }
    return out


def report_text(report: SolveReport, check: dict | None = None) -> str:
    lines = [f"# degree {report.degree}, strategy {report.strategy}"]
    for r in report.roots:
        flag = " escalated" if r.b_escalated else ""
        lines.append(f"{_fmt(r.lam)}  # K_b={r.K_b:.3g} kappa<={r.kappa_bound:.3g}{flag}")
    if report.d_points:
        lines.append(f"# K_alpha={report.k_alpha:.4g} max_cond={report.max_cond:.4g} "
                     f"max_K_b={report.max_K_b:.4g} escalations={report.escalation_count}")
    for w in report.warnings:
        lines.append(f"# warning: {w}")
    if check is not None:
        verdict = "within bounds" if check["all_within_bound"] else "OUTSIDE bounds"
        lines.append(f"# verify ({check['bits']} bits): max rel dev {check['max_rel_dev']:.3g}, {verdict}")
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    u = _load_polynomial(args.coeffs)
    points = _load_points(args.points) if args.points else None
    if not args.tau_b > 0:
        raise InputError("--tau-b must be positive")
    report = solve(u, strategy=args.strategy, points=points, tau_b=args.tau_b, threads=args.threads)
    check = verify(u, report) if args.verify else None
    if args.format == "json":
        sys.stdout.write(json.dumps(report_json(report, check), indent=2) + "\n")
    else:
        sys.stdout.write(report_text(report, check))
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        u = generate_wilkinson(args.n, strict=not args.round)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(format_coeffs(u.coeffs, hexfloat=args.hex, header=f"Wilkinson W_{args.n}"))
    return EXIT_OK


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None
    if not sizes or any(n < 2 for n in sizes):
        raise argparse.ArgumentTypeError("sizes must be integers >= 2")
    return sizes


def cmd_bench(args) -> int:
    rows = bench(args.sizes, threads=args.threads, repeat=args.repeat)
    print(f"{'n':>6} {'build_s':>9} {'roots_s':>9} {'per_root_s':>11} {'total_s':>9} {'ratio':>6} {'max_rel_err':>11}")
    for r in rows:
        ratio = "-" if math.isnan(r["ratio"]) else f"{r['ratio']:.2f}"
        print(f"{r['n']:>6} {r['build_s']:9.4f} {r['roots_s']:9.4f} {r['per_root_s']:11.2e} "
              f"{r['total_s']:9.4f} {ratio:>6} {r['max_rel_err']:11.2e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyaheig", description="Real roots of real-rooted polynomials via arrowhead eigenvalues")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute all roots")
    p.add_argument("--coeffs", default="-", help="coefficient file, one per line, descending powers ('-' = stdin)")
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.add_argument("--points", help="file with n-1 interpolating points (overrides --strategy)")
    p.add_argument("--tau-b", type=float, default=DEFAULT_TAU_B, help="K_b threshold for the double-double tip")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--verify", action="store_true", help="check against exact bisection")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="generate a test polynomial")
    gsub = g.add_subparsers(dest="family", required=True)
    w = gsub.add_parser("wilkinson", help="prod_{i=1}^{N} (x - i)")
    w.add_argument("n", type=int)
    w.add_argument("--round", action="store_true", help="allow coefficients that round in binary64")
    w.add_argument("--hex", action="store_true", help="print hexfloats")
    w.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="O(n^2) timing run")
    b.add_argument("--sizes", type=_sizes, default=[128, 256, 512])
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--repeat", type=int, default=3, help="runs per size; the fastest is reported")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotInterlacingError, RootHitError, AllStrategiesFailed, StrategyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRATEGY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
