"""
Command-line interface.

Subcommands parse, tables, truthtable, eval, valid, check-proof,
soundness and serve; exit codes 0 (positive verdict), 1 (negative
verdict), 2 (usage or input error) and 3 (budget exhausted or
inconclusive).
"""

from .commands import (
    EXIT_INCONCLUSIVE,
    EXIT_NEGATIVE,
    EXIT_OK,
    EXIT_USAGE,
    Outcome,
    run_check_proof,
    run_eval,
    run_parse,
    run_soundness,
    run_tables,
    run_truthtable,
    run_valid,
)
from .dispatch import main
from .parser import build_parser
from .rendering import render, render_json

__all__ = [
    "EXIT_INCONCLUSIVE",
    "EXIT_NEGATIVE",
    "EXIT_OK",
    "EXIT_USAGE",
    "Outcome",
    "run_check_proof",
    "run_eval",
    "run_parse",
    "run_soundness",
    "run_tables",
    "run_truthtable",
    "run_valid",
    "main",
    "build_parser",
    "render",
    "render_json",
]
