"""Command-line front end.

    farhi eta [--method closed|quadrature|malmsten|all]
    farhi check [IDS...|--all] [--tol-scale X] [--format text|json|md] [--out PATH]
    farhi constants
    farhi list

Exit codes: 0 all selected checks pass, 1 a check failed or a numerical
error occurred, 2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional, Sequence

from . import __version__, constants, identities, quadrature, series

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

METHODS = ("closed", "quadrature", "malmsten", "all")


@dataclass
class Report:
    version: str
    timestamp: str
    checks: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "timestamp": self.timestamp,
            "checks": [dict(c) for c in self.checks],
            "summary": dict(self.summary),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(data["version"], data["timestamp"], list(data["checks"]), dict(data["summary"]))


def _num(x: float) -> Optional[float]:
    return x if math.isfinite(x) else None


def build_report(results: Sequence[identities.CheckResult], timestamp: Optional[str] = None) -> Report:
    checks = []
    for r in results:
        record = identities.get_record(r.id)
        checks.append({
            "id": r.id.value,
            "description": record.description,
            "paper_ref": record.paper_ref,
            "lhs": _num(r.lhs_value),
            "rhs": _num(r.rhs_value),
            "abs_err": _num(r.abs_err),
            "rel_err": _num(r.rel_err),
            "tol": r.tol,
            "pass": r.passed,
            "evals": r.evals,
            "runtime_ms": r.runtime_ms,
        })
    passed = sum(1 for r in results if r.passed)
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds").replace("+00:00", "Z")
    return Report(
        version=__version__,
        timestamp=timestamp,
        checks=checks,
        summary={"total": len(results), "passed": passed, "failed": len(results) - passed},
    )


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, allow_nan=False) + "\n"


def _fmt(x) -> str:
    return "nan" if x is None else f"{x:.3e}"


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def render_text(report: Report, color: bool = False) -> str:
    ok, bad, reset = ("\x1b[32m", "\x1b[31m", "\x1b[0m") if color else ("", "", "")
    width = max((len(c["id"]) for c in report.checks), default=0)
    lines = []
    for c in report.checks:
        tag = f"{ok}PASS{reset}" if c["pass"] else f"{bad}FAIL{reset}"
        lhs = "nan" if c["lhs"] is None else f"{c['lhs']:.15g}"
        rhs = "nan" if c["rhs"] is None else f"{c['rhs']:.15g}"
        lines.append(
            f"{tag}  {c['id']:<{width}}  lhs={lhs}  rhs={rhs}  abs_err={_fmt(c['abs_err'])}  tol={c['tol']:.0e}"
        )
    s = report.summary
    lines.append(f"{s['passed']}/{s['total']} passed, {s['failed']} failed")
    return "\n".join(lines) + "\n"


def render_markdown(report: Report) -> str:
    lines = [
        f"# Identity checks ({report.timestamp})",
        "",
        "| | id | lhs | rhs | abs err | tol |",
        "|---|---|---|---|---|---|",
    ]
    for c in report.checks:
        mark = "✓" if c["pass"] else "✗"
        lhs = "nan" if c["lhs"] is None else f"{c['lhs']:.15g}"
        rhs = "nan" if c["rhs"] is None else f"{c['rhs']:.15g}"
        lines.append(f"| {mark} | `{c['id']}` | {lhs} | {rhs} | {_fmt(c['abs_err'])} | {c['tol']:.0e} |")
    s = report.summary
    lines += ["", f"**{s['passed']}/{s['total']} passed**, {s['failed']} failed"]
    return "\n".join(lines) + "\n"


def cmd_eta(method: str, out=None) -> int:
    out = out or sys.stdout
    routes = {
        "closed": constants.eta_closed_form,
        "quadrature": quadrature.eta_by_direct_quadrature,
        "malmsten": quadrature.eta_by_malmsten,
    }
    names = list(routes) if method == "all" else [method]
    values = {}
    try:
        for name in names:
            values[name] = routes[name]()
    except (ArithmeticError, ValueError) as exc:
        print(f"error: {name}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if method != "all":
        print(f"{values[method]:.15g}", file=out)
        return EXIT_OK
    for name in names:
        print(f"{name:<11} {values[name]:.15g}", file=out)
    for a, b in itertools.combinations(names, 2):
        print(f"|{a} - {b}| = {abs(values[a] - values[b]):.3e}", file=out)
    return EXIT_OK


def cmd_constants(out=None) -> int:
    out = out or sys.stdout
    t = constants.table()
    rows = [
        ("gamma", t.gamma, "harmonic sum H_(N-1) - log N, N = 10^4, Euler-Maclaurin through B4"),
        ("log_A", t.log_glaisher, "solved from zeta'(2), gamma and log(2 pi)"),
        ("zeta'(2)", t.zeta_prime_2, "-(sum log n / n^2), direct to 10^5 plus Euler-Maclaurin tail"),
        ("Ci(2pi)", t.ci_two_pi, "continued fraction for E1(ix)"),
        ("log(2pi)", t.log_two_pi, "libm log"),
        ("eta", t.eta_closed, "(gamma + log(2 pi)) / pi"),
    ]
    for name, value, route in rows:
        print(f"{name} = {value:.15g}  # {route}", file=out)
    return EXIT_OK


def cmd_list(out=None) -> int:
    out = out or sys.stdout
    width = max(len(r.id.value) for r in identities.REGISTRY)
    for r in identities.REGISTRY:
        print(f"{r.id.value:<{width}}  tol={r.tol:.0e}  {r.paper_ref}  -- {r.description}", file=out)
    return EXIT_OK


def cmd_check(ids: Sequence[str], run_all: bool, tol_scale: float, fmt: str,
              out_path: Optional[str] = None, out=None) -> int:
    out = out or sys.stdout
    if run_all:
        selected = None
    else:
        valid = {i.value for i in identities.IdentityId}
        unknown = [i for i in ids if i not in valid]
        if unknown:
            print(f"error: unknown identity id(s): {', '.join(unknown)}", file=sys.stderr)
            print("valid ids: " + " ".join(i.value for i in identities.IdentityId), file=sys.stderr)
            return EXIT_USAGE
        selected = list(ids)
    results = identities.run_all(tol_scale=tol_scale, ids=selected)
    report = build_report(results)
    for r in results:
        if r.error:
            print(f"error: {r.error}", file=sys.stderr)

    if fmt == "json":
        text = render_json(report)
    elif fmt == "md":
        text = render_markdown(report)
    else:
        text = render_text(report, color=out_path is None and _use_color(out))
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK if report.summary["failed"] == 0 else EXIT_FAIL


def _positive_float(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}")
    if not v > 0.0:
        raise argparse.ArgumentTypeError(f"must be positive: {s!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="farhi", description="Farhi's constant and identity checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eta", help="compute eta by one or all routes")
    p.add_argument("--method", choices=METHODS, default="closed")

    p = sub.add_parser("check", help="run identity checks")
    p.add_argument("ids", nargs="*", metavar="ID")
    p.add_argument("--all", action="store_true", dest="run_all")
    p.add_argument("--tol-scale", type=_positive_float, default=1.0)
    p.add_argument("--format", choices=("text", "json", "md"), default="text")
    p.add_argument("--out", metavar="PATH")

    sub.add_parser("constants", help="print the constants table")
    sub.add_parser("list", help="list registered identities")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "eta":
        return cmd_eta(args.method)
    if args.command == "check":
        if not args.ids and not args.run_all:
            parser.error("check: give identity ids or --all")
        if args.ids and args.run_all:
            parser.error("check: ids and --all are mutually exclusive")
        return cmd_check(args.ids, args.run_all, args.tol_scale, args.format, args.out)
    if args.command == "constants":
        return cmd_constants()
    return cmd_list()


if __name__ == "__main__":
    sys.exit(main())
