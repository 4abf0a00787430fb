"""Argument parser for the command-line interface."""

import argparse

from app.nmatrix import system_names

FORMATS = ("text", "json")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _common_options() -> argparse.ArgumentParser:
    # flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    systems = ", ".join(system_names())
    common.add_argument("--system", help=f"one of {systems} (suffix -c for contingent identity)")
    common.add_argument("--quantifier", choices=("nd", "det"), help="quantifier multioperators")
    common.add_argument("--format", choices=FORMATS, help="output format (default text)")
    common.add_argument("--seed", type=int, help="seed for randomized suites")
    common.add_argument("--max-domain", type=_positive, help="largest universe searched")
    common.add_argument("--budget", type=_positive, help="step budget for the valuation engine")
    common.add_argument("--jobs", type=_positive, help="worker processes for countermodel search")
    common.add_argument("--limit", type=_positive, help="cap on enumerated valuations")
    common.add_argument("--trials", type=_positive, help="instances per schema in the soundness suite")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="nmatrix",
        description="Evaluate, refute and prove formulas of non-normal modal systems",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("parse", parents=[common], help="parse a formula and show its signature")
    p.add_argument("formula")

    sub.add_parser("tables", parents=[common], help="print the system's multioperations and quantifier folds")

    p = sub.add_parser("truthtable", parents=[common], help="decide a propositional formula by legal valuations")
    p.add_argument("formula")
    p.add_argument("--premise", action="append", default=[], help="premise formula (repeatable)")

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula in a structure file")
    p.add_argument("formula")
    p.add_argument("structure", help="structure JSON file")
    p.add_argument("--prefer", choices=("first", "designated", "undesignated"), default="first")

    p = sub.add_parser("valid", parents=[common], help="search for a countermodel up to --max-domain")
    p.add_argument("formula")
    p.add_argument("--out", help="write the countermodel structure here and its witness beside it")

    p = sub.add_parser("check-proof", parents=[common], help="check a derivation file")
    p.add_argument("derivation", help="derivation JSON file")

    p = sub.add_parser("soundness", parents=[common], help="randomized soundness suite for the axiom schemas")
    p.add_argument("--schema", action="append", help="restrict to this schema (repeatable)")

    p = sub.add_parser("serve", parents=[common], help="run the JSON API")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    return parser
