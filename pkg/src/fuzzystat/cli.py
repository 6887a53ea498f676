"""fuzzystat command line: analyze, generate, verify.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import generators as gen
from .core import EstimatorConfig, UsageError
from .readers import ParseError, infer_format, read_series
from .report import analyze, render_text, to_json
from .verification import SUITES, render_json, run_suites
from .verification import render_text as render_verify_text

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_PARSE, EXIT_USAGE = 0, 1, 2, 3
KINDS = ("spike", "evens", "even-digit-evens", "planted", "convergent")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _float_or_auto(text: str):
    return text if text == "auto" else float(text)


def _candidates(text: str):
    if text == "auto":
        return None
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad candidate list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fuzzystat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    an = sub.add_parser("analyze", help="analyze a numeric series")
    an.add_argument("--input", required=True, help="path, or - for stdin")
    an.add_argument("--format", choices=("csv", "jsonl"))
    an.add_argument("--column", type=int, default=0)
    an.add_argument("--field")
    an.add_argument("--tail-fraction", type=float, default=0.5)
    an.add_argument("--eps-min", type=float)
    an.add_argument("--eps-max", type=_float_or_auto, default="auto")
    an.add_argument("--eps-count", type=int, default=20)
    an.add_argument("--r", type=float, default=0.0)
    an.add_argument("--candidates", type=_candidates, default=None)
    an.add_argument("--a", type=float)
    an.add_argument("--m", type=_float_or_auto)
    an.add_argument("--tol", type=float, default=1e-3)
    an.add_argument("--out-format", choices=("json", "text"), default="json")
    an.add_argument("--seed", type=int, default=0, help="accepted for symmetry; analysis is deterministic")

    ge = sub.add_parser("generate", help="write a canonical sequence or index set")
    ge.add_argument("--kind", required=True)
    ge.add_argument("--n", type=int, required=True)
    ge.add_argument("--a", type=float, default=0.0)
    ge.add_argument("--r", type=float, default=0.0)
    ge.add_argument("--m", type=float, default=1.0)
    ge.add_argument("--mode", choices=("deterministic", "random"), default="deterministic")
    ge.add_argument("--profile", choices=("1/i", "geometric"), default="1/i")
    ge.add_argument("--ratio", type=float, default=0.5)
    ge.add_argument("--seed", type=int, default=0)

    ve = sub.add_parser("verify", help="run the law-checking suites")
    ve.add_argument("--suite", action="append", choices=("all", *SUITES))
    ve.add_argument("--n", type=int, default=100_000)
    ve.add_argument("--seed", type=int, default=42)
    ve.add_argument("--trials", type=int)
    ve.add_argument("--out-format", choices=("json", "text"), default="text")
    return parser


def _format_value(x: float) -> str:
    if float(x).is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def cmd_analyze(args, out) -> int:
    try:
        if args.input == "-":
            values = read_series(sys.stdin, args.format or "csv", args.column, args.field)
        else:
            with open(args.input, encoding="utf-8") as fh:
                values = read_series(fh, args.format or infer_format(args.input), args.column, args.field)
    except ParseError as exc:
        print(f"fuzzystat: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"fuzzystat: cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = EstimatorConfig(
        tail_fraction=args.tail_fraction,
        verdict_tol=args.tol,
        eps_count=args.eps_count,
        eps_max=None if args.eps_max == "auto" else args.eps_max,
        eps_min=args.eps_min,
    )
    report = analyze(values, r=args.r, candidates=args.candidates, a=args.a, m=args.m, cfg=cfg)
    out.write(to_json(report) if args.out_format == "json" else render_text(report))
    return EXIT_OK


def cmd_generate(args, out) -> int:
    kind = args.kind
    if kind not in KINDS:
        raise UsageError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
    if kind == "spike":
        values = gen.spike_sequence(args.n).values
    elif kind == "evens":
        values = gen.evens(args.n).indices
    elif kind == "even-digit-evens":
        values = gen.even_digit_evens(args.n).indices
    elif kind == "planted":
        values = gen.planted_sequence(args.a, args.r, args.m, args.n, args.seed, args.mode).sequence.values
    else:
        values = gen.convergent_sequence(args.a, args.n, args.profile, args.ratio).values
    out.write("".join(_format_value(x) + "\n" for x in values))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    lines = run_suites(args.suite or ["all"], n=args.n, seed=args.seed, trials=args.trials)
    out.write(render_json(lines) if args.out_format == "json" else render_verify_text(lines))
    return EXIT_OK if all(ln.ok for ln in lines) else EXIT_VERIFY_FAILED


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    handler = {"analyze": cmd_analyze, "generate": cmd_generate, "verify": cmd_verify}[args.cmd]
    try:
        return handler(args, out)
    except UsageError as exc:
        print(f"fuzzystat: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
