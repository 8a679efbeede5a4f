"""Command-line front end.

Every subcommand builds a report dictionary and writes it as canonical JSON
(sorted keys, shortest round-trip floats) or as two-column CSV. Exit codes:
0 success, 1 domain error, 2 verification failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from rlkummer.errors import DomainError
from rlkummer.hadamard import CATALOG, finite_part
from rlkummer.kummer import (
    KummerParams,
    closed_form_coefficients,
    kummer_1f1,
    normalization_constant,
    second_solution_series,
    verify_solution,
)
from rlkummer.leibniz import frac_leibniz
from rlkummer.operator import rl_series
from rlkummer.series import GenPowerSeries

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VERIFY = 2
EXIT_USAGE = 64

COMMANDS = ("apply", "finite-part", "leibniz", "chg-verify", "kummer")
MAX_ORDER = 500


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    truncation_order: int = 40
    tolerance: float = 1e-10
    output_format: str = "json"
    output_path: Path | None = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not 1 <= self.truncation_order <= MAX_ORDER:
            raise UsageError(f"--order must lie in [1, {MAX_ORDER}]")
        if not (self.tolerance > 0.0 and math.isfinite(self.tolerance)):
            raise UsageError("--tolerance must be a positive number")
        if self.output_format not in ("json", "csv"):
            raise UsageError(f"unknown format {self.output_format!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


# {{{ argument types


def _real(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def _real_list(text: str) -> list[float]:
    items = [t.strip() for t in text.split(",")]
    if not all(items):
        raise argparse.ArgumentTypeError(f"empty entry in list {text!r}")
    return [_real(t) for t in items]


def _order(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 1 <= value <= MAX_ORDER:
        raise argparse.ArgumentTypeError(f"order must lie in [1, {MAX_ORDER}]")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _positive(text: str) -> float:
    value = _real(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


# }}}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", type=Path, default=argparse.SUPPRESS,
                        help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"),
                        default=argparse.SUPPRESS, help="report format")

    parser = _Parser(
        prog="rlkummer",
        description="Riemann-Liouville operators on power series and "
        "the second solution of Kummer's equation.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("apply", parents=[common],
                       help="apply the operator of order nu to a series")
    p.add_argument("--nu", type=_real, required=True)
    p.add_argument("--series", type=_real_list, required=True,
                   help="comma-separated coefficients c0,c1,...")
    p.add_argument("--offset", type=_real, default=0.0)
    p.add_argument("--base", type=_real, default=0.0)
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--at", type=_real, help="evaluate the result here")
    where.add_argument("--emit-series", action="store_true",
                       help="print the resulting series")

    p = sub.add_parser("finite-part", parents=[common],
                       help="Hadamard finite part of int_a^b (x-a)^-beta f(x) dx")
    p.add_argument("--beta", type=_real, required=True)
    p.add_argument("--fn", choices=sorted(CATALOG), required=True)
    p.add_argument("--a", type=_real, required=True)
    p.add_argument("--b", type=_real, required=True)

    p = sub.add_parser("leibniz", parents=[common],
                       help="fractional Leibniz rule for f*g")
    p.add_argument("--nu", type=_real, required=True)
    p.add_argument("--f", type=_real_list, required=True)
    p.add_argument("--g", type=_real_list, required=True)
    p.add_argument("--g-offset", type=_real, default=0.0)
    p.add_argument("--terms", type=_nonneg_int, required=True)

    p = sub.add_parser("chg-verify", parents=[common],
                       help="verify the second solution of Kummer's equation")
    p.add_argument("--a", type=_real, required=True)
    p.add_argument("--c", type=_real, required=True)
    p.add_argument("--grid", type=_real_list, required=True)
    p.add_argument("--tolerance", type=_positive, default=1e-10)
    p.add_argument("--order", type=_order, default=40)

    p = sub.add_parser("kummer", parents=[common], help="evaluate 1F1(alpha; gamma; x)")
    p.add_argument("--alpha", type=_real, required=True)
    p.add_argument("--gamma", type=_real, required=True)
    p.add_argument("--x", type=_real, required=True)

    return parser


# {{{ subcommands


def _cmd_apply(args: argparse.Namespace, cfg: RunConfig) -> tuple[dict, int]:
    s = GenPowerSeries(tuple(args.series), args.offset, args.base)
    out = rl_series(s, args.nu)
    report: dict[str, Any] = {"nu": args.nu, "input": s.to_dict()}
    if args.emit_series:
        report["series"] = out.to_dict()
    else:
        report["x"] = args.at
        report["value"] = out(args.at)
    return report, EXIT_OK


def _cmd_finite_part(args: argparse.Namespace, cfg: RunConfig) -> tuple[dict, int]:
    res = finite_part(CATALOG[args.fn](), args.a, args.b, args.beta)
    report = {"fn": args.fn, "a": args.a, "b": args.b, "beta": args.beta}
    report.update(res.to_dict())
    return report, EXIT_OK


def _cmd_leibniz(args: argparse.Namespace, cfg: RunConfig) -> tuple[dict, int]:
    f = GenPowerSeries(tuple(args.f))
    g = GenPowerSeries(tuple(args.g), args.g_offset)
    exp = frac_leibniz(f, g, args.nu, args.terms)
    report = {
        "nu": args.nu,
        "series": exp.result.to_dict(),
        "terms_used": exp.terms_used,
        "last_term_norm": exp.last_term_norm,
    }
    return report, EXIT_OK


def _series_agreement(params: KummerParams, order: int) -> float | None:
    """Largest relative gap between the Leibniz series and the closed form."""
    if not params.a - params.c > -1.0:
        return None
    series = second_solution_series(params, N=order)
    exact = closed_form_coefficients(params, order)
    worst = 0.0
    for k, want in enumerate(exact):
        got = series.coefficient(1.0 - params.c + k)
        worst = max(worst, abs(got - want) / max(abs(want), 1e-300))
    return worst


def _cmd_chg_verify(args: argparse.Namespace, cfg: RunConfig) -> tuple[dict, int]:
    params = KummerParams(args.a, args.c)
    res = verify_solution(params, args.grid)
    report = res.to_dict()
    report["tolerance"] = cfg.tolerance
    report["order"] = cfg.truncation_order
    report["normalization_constant"] = normalization_constant(params)
    report["series_max_rel_diff"] = _series_agreement(params, cfg.truncation_order)
    passed = res.max_normalized_residual <= cfg.tolerance
    report["passed"] = passed
    return report, EXIT_OK if passed else EXIT_VERIFY


def _cmd_kummer(args: argparse.Namespace, cfg: RunConfig) -> tuple[dict, int]:
    value = kummer_1f1(args.alpha, args.gamma, args.x)
    return {"alpha": args.alpha, "gamma": args.gamma, "x": args.x, "value": value}, EXIT_OK


_HANDLERS = {
    "apply": _cmd_apply,
    "finite-part": _cmd_finite_part,
    "leibniz": _cmd_leibniz,
    "chg-verify": _cmd_chg_verify,
    "kummer": _cmd_kummer,
}


# }}}


# {{{ output


def dump_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _flatten(value: Any, prefix: str, rows: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(value[key], f"{prefix}.{key}" if prefix else key, rows)
    elif isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            _flatten(item, f"{prefix}[{i}]", rows)
    elif value is None:
        rows.append((prefix, ""))
    elif isinstance(value, bool):
        rows.append((prefix, "true" if value else "false"))
    else:
        rows.append((prefix, repr(value)))


def dump_csv(report: dict) -> str:
    rows: list[tuple[str, str]] = []
    _flatten(report, "", rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("key", "value"))
    writer.writerows(rows)
    return buf.getvalue()


# }}}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = RunConfig(
            command=args.command,
            truncation_order=getattr(args, "order", 40),
            tolerance=getattr(args, "tolerance", 1e-10),
            output_format=getattr(args, "format", "json"),
            output_path=getattr(args, "output", None),
        )
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    try:
        report, code = _HANDLERS[cfg.command](args, cfg)
    except DomainError as exc:
        print(f"{parser.prog}: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    text = dump_json(report) if cfg.output_format == "json" else dump_csv(report)
    if cfg.output_path is None:
        sys.stdout.write(text)
    else:
        cfg.output_path.write_text(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
