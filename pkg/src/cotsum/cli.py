"""Command-line front end: ``cotsum {eval,table,coeffs,verify}``.

Output goes to stdout as CSV (header row) or JSON (array of objects keyed by
the CSV header); diagnostics go to stderr.  Exit codes: 0 success, 1 usage
error, 2 a numerical bound was violated or a quadrature failed.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from .asymptotics import (
    c0_approx_series,
    expansion_terms,
    remainder_bernoulli_form,
    remainder_difference,
    remainder_reference,
)
from .exact_sum import EvalReport, c0_exact
from .quadrature import QuadratureConfig, QuadratureError, verify_psf

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2

EVAL_FIELDS = ["k", "exact", "approx", "abs_err", "rel_err", "sig_digits"]


@dataclass(frozen=True)
class OutputFormat:
    kind: str = "csv"
    precision: int = 15

    def __post_init__(self):
        if self.kind not in ("csv", "json"):
            raise ValueError(f"unknown format {self.kind!r}")
        if not 1 <= self.precision <= 17:
            raise ValueError("precision must be in 1..17")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _csv_cell(v, precision: int) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, str)):
        return str(v)
    return f"{v:.{precision}g}"


def _json_value(v, precision: int):
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if not math.isfinite(v):
        return repr(float(v))
    return float(f"{v:.{precision}g}")


def emit(rows: List[Dict[str, Any]], fields: Sequence[str], fmt: OutputFormat, out=None) -> None:
    """Write rows as CSV or JSON with ``fmt.precision`` significant digits."""
    out = out or sys.stdout
    if fmt.kind == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow([_csv_cell(row[f], fmt.precision) for f in fields])
    else:
        data = [{f: _json_value(row[f], fmt.precision) for f in fields} for row in rows]
        json.dump(data, out, indent=1)
        out.write("\n")


def _report_row(k: int) -> Dict[str, Any]:
    rep = EvalReport.from_values(k, c0_exact(k), c0_approx_series(k))
    return {f: getattr(rep, f) for f in EVAL_FIELDS}


def cmd_eval(args) -> int:
    emit([_report_row(args.k)], EVAL_FIELDS, args.output)
    return EXIT_OK


def cmd_table(args) -> int:
    if args.kmin > args.kmax:
        raise _UsageError(f"--kmin ({args.kmin}) must not exceed --kmax ({args.kmax})")
    emit([_report_row(k) for k in range(args.kmin, args.kmax + 1)], EVAL_FIELDS, args.output)
    return EXIT_OK


def cmd_coeffs(args) -> int:
    views = {"psi": [False], "folded": [True], "both": [False, True]}[args.view]
    rows = []
    for folded in views:
        for term in expansion_terms(args.max_j, folded=folded):
            rows.append({
                "form": "folded" if folded else "psi",
                "power": term.power,
                "exact": str(term.coefficient_exact),
                "value": term.coefficient_value,
            })
    emit(rows, ["form", "power", "exact", "value"], args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    q = QuadratureConfig(nodes_per_half_period=args.nodes, max_modes=args.modes)
    psf = verify_psf(args.k, args.modes, q)
    diff = remainder_difference(args.k)
    ref = remainder_reference(args.k, args.modes, q)
    bern = remainder_bernoulli_form(args.k, q)
    rows = [
        {"quantity": "psf_residual", "value": psf.residual, "bound": psf.bound, "ok": psf.passed},
        {"quantity": "psf_endpoint_constant_error", "value": psf.endpoint_constant_error,
         "bound": 1e-14, "ok": psf.endpoint_constant_error <= 1e-14},
        {"quantity": "psf_integral_constant_error", "value": psf.integral_constant_error,
         "bound": 1e-10, "ok": psf.integral_constant_error <= 1e-10},
    ]
    for est in (ref, bern, diff):
        rows.append({"quantity": f"remainder_{est.method}", "value": est.value, "bound": est.bound, "ok": True})
    for a, b in ((ref, bern), (ref, diff), (bern, diff)):
        rows.append({"quantity": f"agreement_{a.method}_vs_{b.method}", "value": abs(a.value - b.value),
                     "bound": a.bound + b.bound, "ok": a.agrees_with(b)})
    emit(rows, ["quantity", "value", "bound", "ok"], args.output)
    failed = [r["quantity"] for r in rows if not r["ok"]]
    if failed:
        print(f"bound violated: {', '.join(failed)}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--precision", type=int, default=15, help="significant digits (1..17)")

    parser = _Parser(prog="cotsum", description="Exact and asymptotic evaluation of c0(1/k).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="exact vs five-term expansion at one k")
    p.add_argument("--k", type=_positive_int, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", parents=[common], help="eval rows for a range of k")
    p.add_argument("--kmin", type=_positive_int, required=True)
    p.add_argument("--kmax", type=_positive_int, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("coeffs", parents=[common], help="regenerated expansion coefficients")
    p.add_argument("--max-j", type=_positive_int, default=3)
    p.add_argument("--view", choices=("psi", "folded", "both"), default="both")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("verify", parents=[common], help="Poisson-summation and remainder cross-checks")
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--modes", type=_positive_int, default=50)
    p.add_argument("--nodes", type=int, default=8, help="Gauss nodes per half period")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.output = OutputFormat(args.format, args.precision)
        if args.command == "verify" and args.k < 2:
            raise _UsageError("verify needs --k >= 2")
        return args.func(args)
    except (_UsageError, ValueError) as exc:
        print(f"cotsum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureError as exc:
        print(f"cotsum: quadrature failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
