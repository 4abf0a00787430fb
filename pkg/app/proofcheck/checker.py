"""Hilbert derivation checker with a Deduction Metatheorem ledger."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Union

from app.nmatrix import SystemSpec
from app.syntax import Forall, Formula, Imp, format_formula, free_vars

from .schemas import SCHEMAS, match_axiom, schemas_for

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AxiomRule:
    name: Optional[str] = None


@dataclass(frozen=True)
class PremiseRule:
    index: int


@dataclass(frozen=True)
class MPRule:
    minor: int
    major: int


@dataclass(frozen=True)
class GenRule:
    source: int
    var: str


Justification = Union[AxiomRule, PremiseRule, MPRule, GenRule]


@dataclass(frozen=True)
class Step:
    formula: Formula
    justification: Justification


@dataclass
class Derivation:
    steps: List[Step]
    premises: List[Formula] = field(default_factory=list)


@dataclass
class CheckReport:
    accepted: bool
    steps_checked: int
    failed_step: Optional[int] = None
    reason: Optional[str] = None
    axioms: Dict[int, str] = field(default_factory=dict)
    generalized: Dict[int, Set[str]] = field(default_factory=dict)
    blocking: Dict[int, Set[str]] = field(default_factory=dict)

    @property
    def dischargeable(self) -> Dict[int, bool]:
        return {p: not variables for p, variables in self.blocking.items()}

    @property
    def verdict(self) -> str:
        return "accepted" if self.accepted else f"rejected at step {self.failed_step}"


def _earlier(index: int, k: int, what: str) -> Optional[str]:
    if not 0 <= index < k:
        return f"{what} {index} does not refer to an earlier step"
    return None


def check_step(deriv: Derivation, k: int, sys: SystemSpec, matched: Optional[Dict[int, str]] = None) -> Optional[str]:
    """None if step k is justified, otherwise the reason it is not."""
    step = deriv.steps[k]
    rule = step.justification
    f = step.formula

    if isinstance(rule, AxiomRule):
        allowed = schemas_for(sys)
        if rule.name is None:
            for schema in allowed:
                if match_axiom(f, schema, sys) is not None:
                    if matched is not None:
                        matched[k] = schema.name
                    return None
            return "formula is not an instance of any axiom schema of the system"
        if rule.name not in SCHEMAS:
            return f"unknown axiom schema '{rule.name}'"
        schema = SCHEMAS[rule.name]
        if schema not in allowed:
            return f"axiom {rule.name} is not part of {sys.name}"
        if match_axiom(f, schema, sys) is None:
            return f"formula is not an instance of {rule.name}"
        if matched is not None:
            matched[k] = schema.name
        return None

    if isinstance(rule, PremiseRule):
        if not 0 <= rule.index < len(deriv.premises):
            return f"premise {rule.index} does not exist"
        if deriv.premises[rule.index] != f:
            return f"formula differs from premise {rule.index}"
        return None

    if isinstance(rule, MPRule):
        problem = _earlier(rule.minor, k, "MP minor premise") or _earlier(rule.major, k, "MP major premise")
        if problem:
            return problem
        major = deriv.steps[rule.major].formula
        if not isinstance(major, Imp):
            return f"MP: step {rule.major} is not an implication"
        if major.left != deriv.steps[rule.minor].formula:
            return f"MP: antecedent of step {rule.major} differs from step {rule.minor}"
        if major.right != f:
            return f"MP: consequent of step {rule.major} differs from this step"
        return None

    if isinstance(rule, GenRule):
        problem = _earlier(rule.source, k, "Gen source")
        if problem:
            return problem
        if f != Forall(rule.var, deriv.steps[rule.source].formula):
            return f"Gen: formula is not forall {rule.var} over step {rule.source}"
        return None

    return f"unknown justification {rule!r}"


def check_derivation(deriv: Derivation, sys: SystemSpec) -> CheckReport:
    """Check every step in order and build the DMT ledger.

    For each premise the ledger records the variables generalized by Gen
    steps that depend on it; the premise can be discharged when none of
    them is free in it.
    """
    depends: List[Set[int]] = []
    generalized: Dict[int, Set[str]] = {i: set() for i in range(len(deriv.premises))}
    matched: Dict[int, str] = {}

    for k, step in enumerate(deriv.steps):
        reason = check_step(deriv, k, sys, matched)
        if reason is not None:
            logger.info(f"❌ Derivation rejected at step {k}: {reason}")
            return CheckReport(False, k, k, reason, matched, generalized, _blocking(deriv, generalized))
        rule = step.justification
        if isinstance(rule, PremiseRule):
            depends.append({rule.index})
        elif isinstance(rule, MPRule):
            depends.append(depends[rule.minor] | depends[rule.major])
        elif isinstance(rule, GenRule):
            depends.append(set(depends[rule.source]))
            for premise in depends[rule.source]:
                generalized[premise].add(rule.var)
        else:
            depends.append(set())

    logger.info(f"✅ Derivation accepted: {len(deriv.steps)} steps, last {format_formula(deriv.steps[-1].formula) if deriv.steps else '-'}")
    return CheckReport(True, len(deriv.steps), None, None, matched, generalized, _blocking(deriv, generalized))


def _blocking(deriv: Derivation, generalized: Dict[int, Set[str]]) -> Dict[int, Set[str]]:
    return {p: generalized[p] & free_vars(deriv.premises[p]) for p in generalized}
