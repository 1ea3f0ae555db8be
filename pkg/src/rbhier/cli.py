"""``rbhier`` command line.

    rbhier normalize EXPR            normal form of an operator expression
    rbhier apply EXPR --to FUNC      action of an operator on a function
    rbhier verify [--rules|--axioms|--all]
    rbhier probe --trials N --seed S

EXPR and FUNC may be ``-`` to read standard input, and may be given as JSON
documents (an object, or for functions a list of term objects).  Exit codes: 0 success,
1 verification failure, 2 confluence disagreement, 64 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from . import jsonio
from .opring.normal import DEFAULT_BUDGET, STRATEGIES, BudgetExhausted, normalize
from .syntax import (ParseError, latex_function, latex_operator, parse_function,
                     parse_operator, render_function, render_operator)
from .verify.oracle import apply
from .verify.probe import probe_confluence
from .verify.report import SUITES, exit_code, probe_report, run_suites, verify_report
from .verify.sampling import TrialConfig

EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(arg: str) -> str:
    return sys.stdin.read() if arg == "-" else arg


def _is_json(text: str) -> bool:
    # a leading "[[" is a matrix literal, so only objects or lists of objects count
    return re.match(r"\s*(\{|\[\s*[{\]])", text) is not None


def _decode_json(decode, text: str):
    try:
        return decode(json.loads(text))
    except (ValueError, KeyError, TypeError, AttributeError) as err:
        raise ParseError(f"invalid JSON input: {err}") from err


def _operator(text: str):
    if _is_json(text):
        return _decode_json(jsonio.operator_from_json, text)
    return parse_operator(text)


def _function(text: str):
    if _is_json(text):
        return _decode_json(lambda doc: jsonio.function_from_json(
            doc["terms"] if isinstance(doc, dict) else doc), text)
    return parse_function(text)


def _config(args) -> TrialConfig:
    strategies = tuple(args.strategy) if getattr(args, "strategy", None) else \
        ("leftmost", "rightmost", "random")
    return TrialConfig(seed=args.seed, trials=args.trials, max_vars=args.max_vars,
                       max_degree=args.max_deg, budget=args.budget, strategies=strategies)


def _emit(doc_text: str):
    sys.stdout.write(doc_text.rstrip("\n") + "\n")


def cmd_normalize(args) -> int:
    expr = _operator(_read(args.expr))
    try:
        nf = normalize(expr, args.budget, args.strategy or "leftmost", args.seed)
    except BudgetExhausted as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    if args.json:
        _emit(jsonio.dumps(jsonio.normal_form_to_json(nf)))
    elif args.latex:
        _emit(latex_operator(nf))
    else:
        _emit(render_operator(nf))
    return 0


def cmd_apply(args) -> int:
    if args.expr == "-" and args.to == "-":
        raise UsageError("only one of EXPR and --to can be read from stdin")
    expr = _operator(_read(args.expr))
    f = _function(_read(args.to))
    result = apply(expr, f)
    if args.json:
        _emit(jsonio.dumps({"schema": jsonio.schema_tag("function"),
                            "terms": jsonio.function_to_json(result)}))
    elif args.latex:
        _emit(latex_function(result))
    else:
        _emit(render_function(result))
    return 0


def cmd_verify(args) -> int:
    if args.rules:
        suites = ["rules"]
    elif args.axioms:
        suites = ["axioms", "bialgebra", "worked"]
    else:
        suites = list(SUITES)
    cfg = _config(args)
    doc = verify_report(run_suites(suites, cfg), cfg)
    _emit(jsonio.dumps(doc))
    return exit_code(doc)


def cmd_probe(args) -> int:
    cfg = _config(args)
    if len(cfg.strategies) < 2:
        raise UsageError("the probe needs at least two strategies")
    doc = probe_report(probe_confluence(cfg))
    _emit(jsonio.dumps(doc))
    return exit_code(doc)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--trials", type=int, default=100, help="random trials per check (default 100)")
    common.add_argument("--max-vars", type=int, default=4, help="largest number of variables (default 4)")
    common.add_argument("--max-deg", type=int, default=3, help="largest polynomial degree (default 3)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help=f"rewrite steps allowed per word (default {DEFAULT_BUDGET})")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--latex", action="store_true", help="LaTeX output (normalize, apply)")
    fmt.add_argument("--json", action="store_true", help="JSON output (verify and probe always emit JSON)")

    parser = _Parser(prog="rbhier", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("normalize", parents=[common], help="normal form of an operator")
    p.add_argument("expr", help="operator expression, JSON document, or - for stdin")
    p.add_argument("--strategy", choices=STRATEGIES, help="redex choice (default leftmost)")
    p.set_defaults(run=cmd_normalize)

    p = sub.add_parser("apply", parents=[common], help="apply an operator to a function")
    p.add_argument("expr", help="operator expression, JSON document, or - for stdin")
    p.add_argument("--to", required=True, help="function expression, JSON document, or -")
    p.set_defaults(run=cmd_apply)

    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--rules", action="store_true", help="rewrite rule soundness only")
    which.add_argument("--axioms", action="store_true", help="hierarchy and coefficient axioms")
    which.add_argument("--all", action="store_true", help="every suite (default)")
    p.set_defaults(run=cmd_verify, strategy=None)

    p = sub.add_parser("probe", parents=[common], help="compare normal forms across strategies")
    p.add_argument("--strategy", action="append", choices=STRATEGIES,
                   help="strategy to compare; repeat for several (default leftmost, rightmost, random)")
    p.set_defaults(run=cmd_probe)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("trials", "max_vars", "max_deg", "budget"):
        if getattr(args, name) < (0 if name in ("trials", "max_deg") else 1):
            print(f"rbhier: error: --{name.replace('_', '-')} is out of range", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.run(args)
    except (ParseError, UsageError) as err:
        print(f"rbhier: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
