"""Bounded countermodel search.

Candidates are visited universe size first, then predicate, constant and
function interpretations in lexicographic order, then assignments, so a
reported countermodel is the first one in that order whatever the number
of worker processes.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import islice, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.nmatrix import SystemSpec, TruthValue
from app.syntax import Formula, Signature, free_vars, infer_signature

from .engine import (
    DEFAULT_BUDGET,
    Budget,
    BudgetExhausted,
    ChoiceRecord,
    Valuation,
    ValuationEngine,
)
from .structure import FunctionTable, Structure, extension_from_values, iter_assignments

logger = logging.getLogger(__name__)

CHUNK_SIZE = 64


class Verdict(str, Enum):
    COUNTERMODEL = "countermodel"
    VALID_UP_TO_BOUND = "valid-up-to-bound"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass
class Countermodel:
    structure: Structure
    assignment: Dict[str, int]
    value: TruthValue
    valuation: Valuation
    trace: List[ChoiceRecord] = field(default_factory=list)


@dataclass
class SearchResult:
    verdict: Verdict
    max_universe: int
    countermodel: Optional[Countermodel] = None
    structures_checked: int = 0
    steps: int = 0

    @property
    def found(self) -> bool:
        return self.verdict == Verdict.COUNTERMODEL


def _symbol_options(rows: Sequence[tuple], values: Sequence) -> Iterator[tuple]:
    return product(values, repeat=len(rows))


def _nested(option_factories: List) -> Iterator[tuple]:
    """Lexicographic product over lazily generated option streams."""
    if not option_factories:
        yield ()
        return
    head, rest = option_factories[0], option_factories[1:]
    for option in head():
        for tail in _nested(rest):
            yield (option,) + tail


def enumerate_structures(sig: Signature, size: int, sys: SystemSpec) -> Iterator[Structure]:
    """Every structure of the given size interpreting ``sig`` in ``sys``'s carrier."""
    carrier = sys.carrier
    predicate_arities = sorted(list(sig.predicates.items()) + [(p, 0) for p in sig.propositions])
    function_arities = sorted(sig.functions.items())
    constant_names = sorted(sig.constants)

    predicate_rows = [
        (name, list(product(range(size), repeat=arity))) for name, arity in predicate_arities
    ]
    factories = []
    for _, rows in predicate_rows:
        factories.append(lambda rows=rows: _symbol_options(rows, carrier.values))
    for _, arity in function_arities:
        factories.append(lambda arity=arity: product(range(size), repeat=size ** arity))
    if constant_names:
        factories.append(lambda: product(range(size), repeat=len(constant_names)))

    for combo in _nested(factories):
        pieces = list(combo)
        predicates = {}
        for name, rows in predicate_rows:
            values = pieces.pop(0)
            predicates[name] = extension_from_values(dict(zip(rows, values)), carrier)
        functions = {}
        for name, arity in function_arities:
            functions[name] = FunctionTable(arity, tuple(pieces.pop(0)))
        constants = dict(zip(constant_names, pieces.pop(0))) if constant_names else {}
        yield Structure(size, predicates, functions, constants)


def refute_in(f: Formula, structure: Structure, sys: SystemSpec, budget: Budget) -> Optional[Countermodel]:
    """First assignment and valuation making f undesignated in ``structure``."""
    engine = ValuationEngine(structure, sys, budget)
    for s in iter_assignments(free_vars(f), structure.size):
        found = engine.witness(f, s, sys.carrier.undesignated)
        if found is not None:
            value, valuation = found
            trace = engine.trace(engine.fingerprint(f, s), valuation)
            return Countermodel(structure, dict(s), value, valuation, trace)
    return None


def _scan_chunk(f: Formula, sys: SystemSpec, structures: List[Structure], limit: Optional[int]):
    """Worker entry point: (index of countermodel, countermodel, steps, exhausted)."""
    budget = Budget(limit)
    try:
        for index, structure in enumerate(structures):
            budget.charge()
            countermodel = refute_in(f, structure, sys, budget)
            if countermodel is not None:
                return index, countermodel, budget.used, False
    except BudgetExhausted:
        return None, None, budget.used, True
    return None, None, budget.used, False


def find_countermodel(
    f: Formula,
    sys: SystemSpec,
    max_universe: int = 3,
    budget: Optional[int] = DEFAULT_BUDGET,
    signature: Optional[Signature] = None,
    jobs: int = 1,
) -> SearchResult:
    """Search universes 1..max_universe for a structure refuting f.

    Budget exhaustion is reported as its own verdict, distinct from
    finding no countermodel up to the bound.
    """
    if max_universe < 1:
        raise ValueError("max_universe must be at least 1")
    sig = signature if signature is not None else infer_signature(f)
    if jobs > 1:
        return _parallel_search(f, sys, max_universe, budget, sig, jobs)

    meter = Budget(budget)
    checked = 0
    try:
        for size in range(1, max_universe + 1):
            logger.info(f"🔍 Searching universe size {size} in {sys.label}")
            for structure in enumerate_structures(sig, size, sys):
                meter.charge()
                checked += 1
                countermodel = refute_in(f, structure, sys, meter)
                if countermodel is not None:
                    logger.info(f"✅ Countermodel found at size {size} after {checked} structures")
                    return SearchResult(Verdict.COUNTERMODEL, max_universe, countermodel, checked, meter.used)
    except BudgetExhausted:
        logger.warning(f"❌ Budget exhausted after {checked} structures ({meter.used} steps)")
        return SearchResult(Verdict.BUDGET_EXHAUSTED, max_universe, None, checked, meter.used)
    return SearchResult(Verdict.VALID_UP_TO_BOUND, max_universe, None, checked, meter.used)


def _parallel_search(f, sys, max_universe, budget, sig, jobs) -> SearchResult:
    used = 0
    checked = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for size in range(1, max_universe + 1):
            logger.info(f"🔍 Searching universe size {size} in {sys.label} with {jobs} workers")
            candidates = enumerate_structures(sig, size, sys)
            while True:
                batch = []
                for _ in range(jobs):
                    chunk = list(islice(candidates, CHUNK_SIZE))
                    if chunk:
                        batch.append(chunk)
                if not batch:
                    break
                remaining = None if budget is None else max(budget - used, 0)
                futures = [pool.submit(_scan_chunk, f, sys, chunk, remaining) for chunk in batch]
                results: List[Tuple] = [future.result() for future in futures]
                for chunk, (index, countermodel, steps, exhausted) in zip(batch, results):
                    used += steps
                    if countermodel is not None:
                        checked += index + 1
                        logger.info(f"✅ Countermodel found at size {size} after {checked} structures")
                        return SearchResult(Verdict.COUNTERMODEL, max_universe, countermodel, checked, used)
                    if exhausted:
                        return SearchResult(Verdict.BUDGET_EXHAUSTED, max_universe, None, checked, used)
                    checked += len(chunk)
                if budget is not None and used > budget:
                    return SearchResult(Verdict.BUDGET_EXHAUSTED, max_universe, None, checked, used)
    return SearchResult(Verdict.VALID_UP_TO_BOUND, max_universe, None, checked, used)
