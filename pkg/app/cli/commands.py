"""Command adapters shared by the CLI and the HTTP API.

Each ``run_*`` function calls the library once and packs the verdict into
an :class:`Outcome`: the exit code, the pydantic document behind the JSON
output and the template that renders it as text.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from pydantic import BaseModel

from app.models import (
    AssignmentValues,
    CheckReportDocument,
    DerivationDocument,
    EvalReport,
    ParseReport,
    SoundnessDocument,
    StructureDocument,
    TablesDocument,
    TruthtableReport,
    ValidReport,
)
from app.nmatrix import SystemSpec, sort_values
from app.proofcheck import SCHEMAS, check_derivation
from app.propositional import is_consequence
from app.semantics import Budget, Verdict, check_axiom_soundness, eval_formula, evaluate, find_countermodel
from app.syntax import connective_count, format_formula, free_vars, infer_signature, is_propositional, parse_formula

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


@dataclass
class Outcome:
    code: int
    document: BaseModel
    template: str


def run_parse(text: str) -> Outcome:
    f = parse_formula(text)
    sig = infer_signature(f)
    report = ParseReport(
        formula=format_formula(f),
        expanded=format_formula(f, sugar=False),
        predicates=dict(sorted(sig.predicates.items())),
        functions=dict(sorted(sig.functions.items())),
        constants=sorted(sig.constants),
        propositions=sorted(sig.propositions),
        free_variables=sorted(free_vars(f)),
        connectives=connective_count(f),
        propositional=is_propositional(f),
    )
    return Outcome(EXIT_OK, report, "parse.txt.j2")


def run_tables(sys: SystemSpec) -> Outcome:
    return Outcome(EXIT_OK, TablesDocument.from_system(sys), "tables.txt.j2")


def run_truthtable(text: str, sys: SystemSpec, premises: Sequence[str] = (), limit: Optional[int] = None) -> Outcome:
    f = parse_formula(text)
    result = is_consequence([parse_formula(p) for p in premises], f, sys, limit)
    if result.inconclusive:
        verdict, code = "inconclusive", EXIT_INCONCLUSIVE
    elif result.holds:
        verdict, code = "tautology", EXIT_OK
    else:
        verdict, code = "refuted", EXIT_NEGATIVE
    witness = None
    if result.witness is not None:
        witness = {format_formula(node): str(value) for node, value in result.witness.items()}
    report = TruthtableReport(
        formula=format_formula(f),
        system=sys.label,
        verdict=verdict,
        valuations=result.valuations_checked,
        witness=witness,
    )
    logger.debug(f"truthtable {report.formula} in {sys.label}: {verdict}")
    return Outcome(code, report, "truthtable.txt.j2")


def run_eval(
    text: str,
    structure: StructureDocument,
    sys: SystemSpec,
    prefer: str = "first",
    budget: Optional[int] = None,
) -> Outcome:
    """Attainable values of a formula in a loaded structure.

    Raises:
        ShapeMismatchError: the structure does not fit the system's carrier.
        SignatureError: the formula uses symbols the structure does not interpret.
    """
    f = parse_formula(text)
    sig = infer_signature(f)
    A = structure.to_structure(sig)
    A.check_shape(sys)
    A.check_signature(sig)
    meter = Budget(budget)

    results = []
    for s, values in eval_formula(A, f, sys, meter):
        ordered = sort_values(values)
        results.append(
            AssignmentValues(
                assignment=s,
                values=[str(v) for v in ordered],
                designated=[v in sys.designated for v in ordered],
            )
        )
    first = results[0].assignment if results else {}
    chosen = evaluate(A, first, f, sys, prefer=prefer, budget=meter)
    report = EvalReport(
        formula=format_formula(f),
        system=sys.label,
        results=results,
        true=all(all(r.designated) for r in results),
        trace=[record.describe() for record in chosen.trace],
    )
    return Outcome(EXIT_OK, report, "eval.txt.j2")


def run_valid(
    text: str,
    sys: SystemSpec,
    max_domain: int = 3,
    budget: Optional[int] = None,
    jobs: int = 1,
) -> Outcome:
    f = parse_formula(text)
    result = find_countermodel(f, sys, max_universe=max_domain, budget=budget, jobs=jobs)
    codes = {
        Verdict.VALID_UP_TO_BOUND: EXIT_OK,
        Verdict.COUNTERMODEL: EXIT_NEGATIVE,
        Verdict.BUDGET_EXHAUSTED: EXIT_INCONCLUSIVE,
    }
    report = ValidReport.from_result(format_formula(f), sys, result)
    return Outcome(codes[result.verdict], report, "valid.txt.j2")


def run_check_proof(document: DerivationDocument, sys: SystemSpec) -> Outcome:
    report = check_derivation(document.to_derivation(), sys)
    code = EXIT_OK if report.accepted else EXIT_NEGATIVE
    return Outcome(code, CheckReportDocument.from_report(sys, report), "check_proof.txt.j2")


def run_soundness(
    sys: SystemSpec,
    trials: int = 1000,
    seed: int = 0,
    max_domain: int = 3,
    schemas: Optional[Iterable[str]] = None,
) -> Outcome:
    if schemas is not None:
        schemas = list(schemas)
        unknown = [name for name in schemas if name not in SCHEMAS]
        if unknown:
            raise ValueError(f"unknown axiom schema(s): {', '.join(unknown)}")
    report = check_axiom_soundness(sys, trials=trials, seed=seed, max_universe=max_domain, schemas=schemas)
    code = EXIT_OK if report.ok else EXIT_NEGATIVE
    return Outcome(code, SoundnessDocument.from_report(report), "soundness.txt.j2")
