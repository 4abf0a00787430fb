"""Pydantic schemas for structure, derivation and report documents.

The CLI's ``--format json`` output and the HTTP API share these models.
"""

from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator

from app.nmatrix import SystemSpec, get_system, sort_values
from app.proofcheck import AxiomRule, CheckReport, Derivation, GenRule, MPRule, PremiseRule, Step
from app.semantics import (
    Countermodel,
    FunctionTable,
    PairExtension,
    SearchResult,
    SoundnessReport,
    Structure,
    StructureError,
    TripleExtension,
)
from app.syntax import Signature, format_formula, parse_formula


class ExtensionDocument(BaseModel):
    a: List[List[int]] = []
    c: Optional[List[List[int]]] = None
    n: Optional[List[List[int]]] = None
    p: Optional[List[List[int]]] = None


def _rows(rows) -> frozenset:
    return frozenset(tuple(row) for row in rows or [])


def _dump_rows(rows) -> List[List[int]]:
    return [list(row) for row in sorted(rows)]


class StructureDocument(BaseModel):
    universe: int = Field(ge=1)
    predicates: Dict[str, ExtensionDocument] = {}
    functions: Dict[str, List[int]] = {}
    constants: Dict[str, int] = {}

    def to_structure(self, sig: Optional[Signature] = None) -> Structure:
        """Build the structure; ``sig`` settles function arities a flat table leaves open."""
        predicates = {}
        for name, ext in self.predicates.items():
            if ext.n is not None or ext.p is not None:
                if ext.c is not None:
                    raise StructureError(f"predicate {name} mixes pair and triple extensions")
                predicates[name] = TripleExtension(_rows(ext.a), _rows(ext.n), _rows(ext.p))
            else:
                predicates[name] = PairExtension(_rows(ext.a), _rows(ext.c))
        functions = {}
        for name, table in self.functions.items():
            arity = sig.functions.get(name) if sig is not None else None
            if arity is None:
                arity = _infer_arity(len(table), self.universe, name)
            functions[name] = FunctionTable(arity, tuple(table))
        return Structure(self.universe, predicates, functions, dict(self.constants))

    @classmethod
    def from_structure(cls, structure: Structure) -> "StructureDocument":
        predicates = {}
        for name, ext in sorted(structure.predicates.items()):
            if isinstance(ext, PairExtension):
                predicates[name] = ExtensionDocument(a=_dump_rows(ext.a), c=_dump_rows(ext.c))
            else:
                predicates[name] = ExtensionDocument(a=_dump_rows(ext.a), n=_dump_rows(ext.n), p=_dump_rows(ext.p))
        return cls(
            universe=structure.size,
            predicates=predicates,
            functions={name: list(t.values) for name, t in sorted(structure.functions.items())},
            constants=dict(sorted(structure.constants.items())),
        )


def _infer_arity(length: int, size: int, name: str) -> int:
    arity, count = 1, size
    while count < length:
        arity += 1
        count *= size
        if size == 1:
            break
    if count != length:
        raise StructureError(f"function {name} table of length {length} fits no arity over {size} elements")
    return arity


class WitnessEntry(BaseModel):
    fingerprint: str
    value: str


class CountermodelDocument(BaseModel):
    structure: StructureDocument
    assignment: Dict[str, int]
    value: str
    witness: List[WitnessEntry]
    trace: List[str]

    @classmethod
    def from_countermodel(cls, cm: Countermodel) -> "CountermodelDocument":
        witness = sorted(
            (WitnessEntry(fingerprint=format_formula(fp), value=str(v)) for fp, v in cm.valuation.items()),
            key=lambda entry: entry.fingerprint,
        )
        return cls(
            structure=StructureDocument.from_structure(cm.structure),
            assignment=cm.assignment,
            value=str(cm.value),
            witness=witness,
            trace=[record.describe() for record in cm.trace],
        )


class ValidReport(BaseModel):
    formula: str
    system: str
    verdict: str
    max_universe: int
    structures_checked: int
    steps: int
    countermodel: Optional[CountermodelDocument] = None

    @classmethod
    def from_result(cls, formula: str, sys: SystemSpec, result: SearchResult) -> "ValidReport":
        return cls(
            formula=formula,
            system=sys.label,
            verdict=result.verdict.value,
            max_universe=result.max_universe,
            structures_checked=result.structures_checked,
            steps=result.steps,
            countermodel=CountermodelDocument.from_countermodel(result.countermodel) if result.countermodel else None,
        )


class TruthtableReport(BaseModel):
    formula: str
    system: str
    verdict: Literal["tautology", "refuted", "inconclusive"]
    valuations: int
    witness: Optional[Dict[str, str]] = None


class AssignmentValues(BaseModel):
    assignment: Dict[str, int]
    values: List[str]
    designated: List[bool]


class EvalReport(BaseModel):
    formula: str
    system: str
    results: List[AssignmentValues]
    true: bool
    trace: List[str] = []


class StepDocument(BaseModel):
    formula: str
    rule: Literal["axiom", "premise", "mp", "gen"]
    args: List[Union[int, str]] = []

    @field_validator("rule", mode="before")
    @classmethod
    def lower_rule(cls, value):
        return value.lower() if isinstance(value, str) else value


class DerivationDocument(BaseModel):
    system: str = "tm"
    quantifier: str = "det"
    premises: List[str] = []
    steps: List[StepDocument]

    def system_spec(self, override: Optional[str] = None, quantifier: Optional[str] = None) -> SystemSpec:
        return get_system(override or self.system, quantifier or self.quantifier)

    def to_derivation(self) -> Derivation:
        """Parse every formula and justification.

        Raises:
            ValueError: malformed formula or arguments.
        """
        premises = [parse_formula(text) for text in self.premises]
        steps = []
        for k, step in enumerate(self.steps):
            formula = parse_formula(step.formula)
            steps.append(Step(formula, _justification(step, k)))
        return Derivation(steps, premises)


def _justification(step: StepDocument, k: int):
    args = step.args
    try:
        if step.rule == "axiom":
            return AxiomRule(str(args[0]) if args else None)
        if step.rule == "premise":
            return PremiseRule(int(args[0]))
        if step.rule == "mp":
            return MPRule(int(args[0]), int(args[1]))
        return GenRule(int(args[0]), str(args[1]))
    except (IndexError, ValueError):
        raise ValueError(f"step {k}: bad arguments {args!r} for rule {step.rule}") from None


class CheckReportDocument(BaseModel):
    system: str
    verdict: str
    accepted: bool
    failed_step: Optional[int] = None
    reason: Optional[str] = None
    axioms: Dict[int, str] = {}
    generalized: Dict[int, List[str]] = {}
    dischargeable: Dict[int, bool] = {}

    @classmethod
    def from_report(cls, sys: SystemSpec, report: CheckReport) -> "CheckReportDocument":
        return cls(
            system=sys.label,
            verdict=report.verdict,
            accepted=report.accepted,
            failed_step=report.failed_step,
            reason=report.reason,
            axioms=report.axioms,
            generalized={p: sorted(vs) for p, vs in report.generalized.items()},
            dischargeable=report.dischargeable,
        )


class UnaryRow(BaseModel):
    arg: str
    result: List[str]


class BinaryRow(BaseModel):
    left: str
    right: str
    result: List[str]


class FoldRow(BaseModel):
    subset: List[str]
    result: List[str]


class TablesDocument(BaseModel):
    system: str
    carrier: List[str]
    designated: List[str]
    neg: List[UnaryRow]
    box: List[UnaryRow]
    diamond: List[UnaryRow]
    imp: List[BinaryRow]
    disj: List[BinaryRow]
    conj: List[BinaryRow]
    forall: List[FoldRow]
    exists: List[FoldRow]

    @classmethod
    def from_system(cls, sys: SystemSpec) -> "TablesDocument":
        tables = sys.tables
        names = lambda values: [str(v) for v in sort_values(values)]  # noqa: E731

        def unary(table):
            return [UnaryRow(arg=str(v), result=names(table[v])) for v in sys.values]

        def binary(table):
            return [
                BinaryRow(left=str(a), right=str(b), result=names(table[(a, b)]))
                for a in sys.values
                for b in sys.values
            ]

        def folds(table):
            return [FoldRow(subset=names(subset), result=names(result)) for subset, result in table.items()]

        return cls(
            system=sys.label,
            carrier=[str(v) for v in sys.values],
            designated=names(sys.designated),
            neg=unary(tables.neg),
            box=unary(tables.box),
            diamond=unary(tables.diamond),
            imp=binary(tables.imp),
            disj=binary(tables.disj),
            conj=binary(tables.conj),
            forall=folds(sys.forall_table()),
            exists=folds(sys.exists_table()),
        )


class FailureDocument(BaseModel):
    instance: str
    assignment: Dict[str, int]
    value: str
    structure: StructureDocument
    trace: List[str]


class TallyDocument(BaseModel):
    label: str
    trials: int
    failures: int
    examples: List[FailureDocument] = []


class SoundnessDocument(BaseModel):
    system: str
    seed: int
    ok: bool
    tallies: List[TallyDocument]

    @classmethod
    def from_report(cls, report: SoundnessReport, examples: int = 1) -> "SoundnessDocument":
        return cls(
            system=report.system,
            seed=report.seed,
            ok=report.ok,
            tallies=[
                TallyDocument(
                    label=t.label,
                    trials=t.trials,
                    failures=len(t.failures),
                    examples=[
                        FailureDocument(
                            instance=f.instance,
                            assignment=f.assignment,
                            value=str(f.value),
                            structure=StructureDocument.from_structure(f.structure),
                            trace=[r.describe() for r in f.trace],
                        )
                        for f in t.failures[:examples]
                    ],
                )
                for t in report.tallies
            ],
        )


class ParseReport(BaseModel):
    formula: str
    expanded: str
    predicates: Dict[str, int]
    functions: Dict[str, int]
    constants: List[str]
    propositions: List[str]
    free_variables: List[str]
    connectives: int
    propositional: bool


class TruthtableRequest(BaseModel):
    formula: str
    premises: List[str] = []
    system: Optional[str] = None
    quantifier: Optional[str] = None
    limit: Optional[int] = Field(None, ge=1)


class EvalRequest(BaseModel):
    formula: str
    structure: StructureDocument
    system: Optional[str] = None
    quantifier: Optional[str] = None
    prefer: Literal["first", "designated", "undesignated"] = "first"


class ValidRequest(BaseModel):
    formula: str
    system: Optional[str] = None
    quantifier: Optional[str] = None
    max_domain: Optional[int] = Field(None, ge=1)
    budget: Optional[int] = Field(None, ge=1)
