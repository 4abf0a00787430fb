"""Legal valuations of propositional formulas and the decisions built on them."""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.nmatrix import SystemSpec, TruthValue
from app.syntax import Atom, Box, Formula, Imp, Neg, disj, iff, is_propositional, iter_subformulas

logger = logging.getLogger(__name__)

PropValuation = Dict[Formula, TruthValue]


class NotPropositionalError(ValueError):
    """Input contains quantifiers, identities or terms."""


@dataclass
class DecisionResult:
    holds: bool
    valuations_checked: int
    complete: bool = True
    witness: Optional[PropValuation] = None

    @property
    def inconclusive(self) -> bool:
        return self.holds and not self.complete


def closure(formulas: Sequence[Formula]) -> List[Formula]:
    """Distinct subformulas of ``formulas`` in post-order."""
    seen = set()
    order: List[Formula] = []
    for f in formulas:
        if not is_propositional(f):
            raise NotPropositionalError("quantifiers, identities and terms are not propositional")
        for sub in iter_subformulas(f):
            if sub not in seen:
                seen.add(sub)
                order.append(sub)
    return order


def _allowed(node: Formula, valuation: PropValuation, sys: SystemSpec) -> Tuple[TruthValue, ...]:
    tables = sys.tables
    if isinstance(node, Atom):
        return sys.values
    if isinstance(node, Neg):
        options = tables.neg[valuation[node.body]]
    elif isinstance(node, Box):
        options = tables.box[valuation[node.body]]
    elif isinstance(node, Imp):
        options = tables.imp[(valuation[node.left], valuation[node.right])]
    else:
        raise NotPropositionalError(f"unexpected node {node!r}")
    return tuple(v for v in sys.values if v in options)


def _enumerate(nodes: List[Formula], sys: SystemSpec) -> Iterator[PropValuation]:
    valuation: PropValuation = {}

    def extend(i: int) -> Iterator[PropValuation]:
        if i == len(nodes):
            yield dict(valuation)
            return
        node = nodes[i]
        for value in _allowed(node, valuation, sys):
            valuation[node] = value
            yield from extend(i + 1)
        valuation.pop(node, None)

    yield from extend(0)


def legal_valuations(f: Formula, sys: SystemSpec, limit: Optional[int] = None) -> Iterator[PropValuation]:
    """Every table-consistent valuation of f's subformula closure.

    Raises:
        NotPropositionalError: f is not propositional.
    """
    nodes = closure([f])
    for count, valuation in enumerate(_enumerate(nodes, sys)):
        if limit is not None and count >= limit:
            return
        yield valuation


def is_consequence(premises: Sequence[Formula], f: Formula, sys: SystemSpec, limit: Optional[int] = None) -> DecisionResult:
    """Every legal valuation designating all premises designates f."""
    nodes = closure(list(premises) + [f])
    checked = 0
    for valuation in _enumerate(nodes, sys):
        if limit is not None and checked >= limit:
            logger.info(f"Enumeration capped at {limit} valuations")
            return DecisionResult(True, checked, complete=False)
        checked += 1
        if all(valuation[p] in sys.designated for p in premises) and valuation[f] not in sys.designated:
            return DecisionResult(False, checked, witness=valuation)
    return DecisionResult(True, checked)


def is_tautology(f: Formula, sys: SystemSpec, limit: Optional[int] = None) -> DecisionResult:
    """Designated under every legal valuation; otherwise a falsifying witness."""
    return is_consequence([], f, sys, limit)


def count_valuations(f: Formula, sys: SystemSpec) -> int:
    return sum(1 for _ in legal_valuations(f, sys))


@dataclass
class ReplacementFailure:
    alpha: Formula
    beta: Formula
    equivalence: DecisionResult
    boxed: DecisionResult


def replacement_failure(sys: SystemSpec) -> ReplacementFailure:
    """A pair with α↔β a tautology but □α↔□β refutable.

    α = A∨¬A and β = B∨¬B are both always designated, yet their boxes
    are chosen independently.
    """
    a, b = Atom("A"), Atom("B")
    alpha, beta = disj(a, Neg(a)), disj(b, Neg(b))
    return ReplacementFailure(
        alpha,
        beta,
        is_tautology(iff(alpha, beta), sys),
        is_tautology(iff(Box(alpha), Box(beta)), sys),
    )

