"""Entry point tying the parser, settings, command adapters and rendering together."""

import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from app.config import Settings, configure_logging, create_app, load_settings
from app.models import DerivationDocument, StructureDocument
from app.nmatrix import get_system
from app.semantics import BudgetExhausted

from . import commands
from .parser import build_parser
from .rendering import render, render_json

logger = logging.getLogger(__name__)


def _option(args, name: str, settings: Settings):
    return getattr(args, name, getattr(settings, name))


def _load_json(path: str, model):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ValueError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise ValueError(f"{path} is not valid JSON: {e}") from e
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise ValueError(f"{path}: {e}") from e


def _write_countermodel(out: str, outcome: commands.Outcome) -> None:
    countermodel = outcome.document.countermodel
    if countermodel is None:
        return
    target = Path(out)
    target.write_text(countermodel.structure.model_dump_json(indent=2) + "\n", encoding="utf-8")
    witness = target.with_suffix(".witness.json")
    payload = [entry.model_dump() for entry in countermodel.witness]
    witness.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    logger.info(f"💾 Countermodel written to {target} (witness {witness})")


def _run(args, settings: Settings) -> int:
    command = args.command
    if command == "serve":
        import uvicorn

        host = args.host or settings.api_host
        port = args.port or settings.api_port
        logger.info(f"Starting API with uvicorn on {host}:{port}...")
        uvicorn.run(create_app(settings), host=host, port=port)
        return commands.EXIT_OK

    system = get_system(_option(args, "system", settings), _option(args, "quantifier", settings))
    budget = _option(args, "budget", settings)

    if command == "parse":
        outcome = commands.run_parse(args.formula)
    elif command == "tables":
        outcome = commands.run_tables(system)
    elif command == "truthtable":
        outcome = commands.run_truthtable(args.formula, system, args.premise, getattr(args, "limit", None))
    elif command == "eval":
        structure = _load_json(args.structure, StructureDocument)
        outcome = commands.run_eval(args.formula, structure, system, args.prefer, budget)
    elif command == "valid":
        outcome = commands.run_valid(
            args.formula,
            system,
            max_domain=_option(args, "max_domain", settings),
            budget=budget,
            jobs=_option(args, "jobs", settings),
        )
        if args.out:
            _write_countermodel(args.out, outcome)
    elif command == "check-proof":
        document = _load_json(args.derivation, DerivationDocument)
        # an explicit --system/--quantifier overrides the file's own
        system = document.system_spec(getattr(args, "system", None), getattr(args, "quantifier", None))
        outcome = commands.run_check_proof(document, system)
    else:
        outcome = commands.run_soundness(
            system,
            trials=_option(args, "trials", settings),
            seed=_option(args, "seed", settings),
            max_domain=_option(args, "max_domain", settings),
            schemas=args.schema,
        )

    if getattr(args, "format", "text") == "json":
        sys.stdout.write(render_json(outcome.document))
    else:
        sys.stdout.write(render(outcome.template, outcome.document))
    return outcome.code


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; the return value is the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for usage errors
        return int(e.code or 0)

    configure_logging()
    try:
        settings = load_settings()
        return _run(args, settings)
    except ValueError as e:
        # ParseError, SignatureError, StructureError, CarrierError and bad files
        print(f"error: {e}", file=sys.stderr)
        return commands.EXIT_USAGE
    except BudgetExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return commands.EXIT_INCONCLUSIVE
    except KeyError as e:
        print(f"error: {e.args[0] if e.args else e}", file=sys.stderr)
        return commands.EXIT_USAGE
