"""Choice-consistent valuation engine.

Valuations are maps from ground fingerprints to truth values. The
fingerprints reachable from a query form a DAG (a quantified node's
children are its body grounded at every element); a legal valuation
picks, bottom-up, a value for each composite node from the
multioperation applied to its children's values. Since every
multioperation is nonempty, any legal choice below a node extends
upward, so the attainable root values are found by a frontier-pruned
sweep over the DAG in post-order.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from app.nmatrix import SystemSpec, TruthValue, ValueSet, format_value_set, sort_values
from app.syntax import Atom, Box, Forall, Formula, Identity, Imp, Neg, alpha_normalize, format_formula, free_vars

from .fingerprint import fingerprint, instance_fingerprint
from .structure import Assignment, Structure, eval_atom, iter_assignments

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 2_000_000


class BudgetExhausted(RuntimeError):
    """The step budget ran out before the search finished."""

    def __init__(self, steps: int):
        super().__init__(f"step budget exhausted after {steps} steps")
        self.steps = steps


class IncompleteValuationError(KeyError):
    """A valuation was asked for a fingerprint it has no value for."""


class Budget:
    """Shared step counter; ``limit=None`` means unlimited."""

    def __init__(self, limit: Optional[int] = DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def charge(self, steps: int = 1) -> None:
        self.used += steps
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(self.used)

    @property
    def remaining(self) -> Optional[int]:
        return None if self.limit is None else max(self.limit - self.used, 0)


@dataclass(frozen=True)
class Node:
    kind: str
    children: Tuple[Formula, ...] = ()
    value: Optional[TruthValue] = None


@dataclass(frozen=True)
class ChoiceRecord:
    fingerprint: Formula
    value: TruthValue
    allowed: ValueSet

    def describe(self) -> str:
        return f"{format_formula(self.fingerprint)} := {self.value} from {format_value_set(self.allowed)}"


@dataclass
class EvalVerdict:
    value: TruthValue
    designated: bool
    trace: List[ChoiceRecord] = field(default_factory=list)


@dataclass
class Valuation:
    """Committed values for composite fingerprints; atoms are computed."""

    system: SystemSpec
    choices: Dict[Formula, TruthValue] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.choices)

    def items(self) -> List[Tuple[Formula, TruthValue]]:
        return list(self.choices.items())


class ValuationEngine:
    """Fingerprint graph and valuation search for one structure and system."""

    def __init__(self, structure: Structure, system: SystemSpec, budget: Optional[Budget] = None):
        structure.check_shape(system)
        self.structure = structure
        self.system = system
        self.tables = system.tables
        self.forall_table = system.forall_table()
        self.budget = budget if budget is not None else Budget(None)
        self.nodes: Dict[Formula, Node] = {}

    # graph

    def fingerprint(self, f: Formula, s: Assignment) -> Formula:
        return fingerprint(f, self.structure, s)

    def node(self, fp: Formula) -> Node:
        cached = self.nodes.get(fp)
        if cached is not None:
            return cached
        # children of a ground fingerprint are closed; each is normalized on its own
        if isinstance(fp, (Atom, Identity)):
            node = Node("atom", value=eval_atom(self.structure, {}, fp, self.system))
        elif isinstance(fp, Neg):
            node = Node("neg", (alpha_normalize(fp.body),))
        elif isinstance(fp, Box):
            node = Node("box", (alpha_normalize(fp.body),))
        elif isinstance(fp, Imp):
            node = Node("imp", (alpha_normalize(fp.left), alpha_normalize(fp.right)))
        elif isinstance(fp, Forall):
            node = Node(
                "forall",
                tuple(instance_fingerprint(fp, self.structure, e) for e in self.structure.universe),
            )
        else:
            raise TypeError(f"not a formula: {fp!r}")
        self.nodes[fp] = node
        return node

    def allowed(self, node: Node, child_values: Sequence[TruthValue]) -> ValueSet:
        """Values the clauses permit for a node given its children's values."""
        if node.kind == "atom":
            return frozenset({node.value})
        if node.kind == "neg":
            return self.tables.neg[child_values[0]]
        if node.kind == "box":
            return self.tables.box[child_values[0]]
        if node.kind == "imp":
            return self.tables.imp[(child_values[0], child_values[1])]
        return self.forall_table[frozenset(child_values)]

    def post_order(self, roots: Iterable[Formula]) -> List[Formula]:
        order: List[Formula] = []
        seen = set()
        for root in roots:
            if root in seen:
                continue
            stack = [(root, False)]
            while stack:
                fp, expanded = stack.pop()
                if expanded:
                    order.append(fp)
                    continue
                if fp in seen:
                    continue
                seen.add(fp)
                stack.append((fp, True))
                for child in reversed(self.node(fp).children):
                    if child not in seen:
                        stack.append((child, False))
        return order

    # search

    def solve(self, roots: Sequence[Formula]) -> Dict[Tuple[TruthValue, ...], Dict[Formula, TruthValue]]:
        """Attainable joint values of ``roots``, each with one witnessing choice map.

        Nodes are visited in post-order; a node's value is dropped from the
        search state once its last parent has been decided, so states that
        differ only on finished nodes merge.
        """
        order = self.post_order(roots)
        position = {fp: i for i, fp in enumerate(order)}
        root_set = set(roots)
        last_use = {fp: -1 for fp in order}
        for i, fp in enumerate(order):
            for child in self.node(fp).children:
                last_use[child] = max(last_use[child], i)
        for root in root_set:
            last_use[root] = len(order)

        # state: frozenset of (position, value) for live composite nodes
        states: Dict[FrozenSet[Tuple[int, TruthValue]], Optional[tuple]] = {frozenset(): None}
        for i, fp in enumerate(order):
            node = self.node(fp)
            if node.kind == "atom":
                continue
            dying = {position[c] for c in node.children if last_use[c] == i}
            successors: Dict[FrozenSet[Tuple[int, TruthValue]], Optional[tuple]] = {}
            for state, history in states.items():
                self.budget.charge()
                live = dict(state)
                child_values = [self._value_in(c, live, position) for c in node.children]
                kept = [(k, v) for k, v in live.items() if k not in dying]
                for value in sort_values(self.allowed(node, child_values)):
                    key = frozenset(kept + [(i, value)])
                    if key not in successors:
                        successors[key] = (fp, value, history)
            states = successors

        results: Dict[Tuple[TruthValue, ...], Dict[Formula, TruthValue]] = {}
        for state, history in states.items():
            live = dict(state)
            key = tuple(self._value_in(root, live, position) for root in roots)
            if key not in results:
                results[key] = _unwind(history)
        return results

    def _value_in(self, fp: Formula, live: Mapping[int, TruthValue], position: Mapping[Formula, int]) -> TruthValue:
        node = self.nodes[fp]
        if node.kind == "atom":
            return node.value
        return live[position[fp]]

    def possible_values(self, f: Formula, s: Assignment) -> ValueSet:
        fp = self.fingerprint(f, s)
        return frozenset(key[0] for key in self.solve([fp]))

    def witness(self, f: Formula, s: Assignment, wanted: Iterable[TruthValue]) -> Optional[Tuple[TruthValue, Valuation]]:
        """A valuation giving f one of the ``wanted`` values, or None."""
        fp = self.fingerprint(f, s)
        solved = {key[0]: choices for key, choices in self.solve([fp]).items()}
        for value in sort_values(wanted):
            if value in solved:
                return value, Valuation(self.system, dict(solved[value]))
        return None

    # committed valuations

    def value_of(self, fp: Formula, valuation: Valuation) -> TruthValue:
        node = self.node(fp)
        if node.kind == "atom":
            return node.value
        try:
            return valuation.choices[fp]
        except KeyError:
            raise IncompleteValuationError(f"no value committed for {format_formula(fp)}") from None

    def trace(self, root: Formula, valuation: Valuation) -> List[ChoiceRecord]:
        """Choice log below ``root`` in post-order."""
        records = []
        for fp in self.post_order([root]):
            node = self.node(fp)
            if node.kind == "atom":
                continue
            child_values = [self.value_of(c, valuation) for c in node.children]
            records.append(ChoiceRecord(fp, self.value_of(fp, valuation), self.allowed(node, child_values)))
        return records

    def violations(self, valuation: Valuation) -> List[Formula]:
        """Committed fingerprints whose value the clauses do not allow."""
        bad = []
        for fp, value in valuation.choices.items():
            node = self.node(fp)
            try:
                child_values = [self.value_of(c, valuation) for c in node.children]
            except IncompleteValuationError:
                bad.append(fp)
                continue
            if value not in self.allowed(node, child_values):
                bad.append(fp)
        return bad

    def random_value(self, fp: Formula, valuation: Valuation, rng: random.Random) -> TruthValue:
        """Value of fp under ``valuation``, committing random legal choices as needed."""
        for sub in self.post_order([fp]):
            node = self.node(sub)
            if node.kind == "atom" or sub in valuation.choices:
                continue
            child_values = [self.value_of(c, valuation) for c in node.children]
            valuation.choices[sub] = rng.choice(sort_values(self.allowed(node, child_values)))
        return self.value_of(fp, valuation)


def _unwind(history: Optional[tuple]) -> Dict[Formula, TruthValue]:
    choices: Dict[Formula, TruthValue] = {}
    while history is not None:
        fp, value, history = history
        choices[fp] = value
    return choices


def possible_values(A: Structure, s: Assignment, f: Formula, sys: SystemSpec, budget: Optional[Budget] = None) -> ValueSet:
    """Values v(f, s) attainable by some legal valuation over A."""
    return ValuationEngine(A, sys, budget).possible_values(f, s)


def eval_formula(A: Structure, f: Formula, sys: SystemSpec, budget: Optional[Budget] = None) -> List[Tuple[Dict[str, int], ValueSet]]:
    """Attainable value set for every assignment of f's free variables."""
    engine = ValuationEngine(A, sys, budget)
    return [(s, engine.possible_values(f, s)) for s in iter_assignments(free_vars(f), A.size)]


def evaluate(A: Structure, s: Assignment, f: Formula, sys: SystemSpec, prefer: str = "first", budget: Optional[Budget] = None) -> EvalVerdict:
    """Pick one legal value for f and return it with its choice trace.

    ``prefer`` is 'first' (canonical value order), 'designated' or
    'undesignated'; the preference falls back to any attainable value.
    """
    engine = ValuationEngine(A, sys, budget)
    attainable = sort_values(engine.possible_values(f, s))
    if prefer == "designated":
        ranked = [v for v in attainable if v in sys.designated] + [v for v in attainable if v not in sys.designated]
    elif prefer == "undesignated":
        ranked = [v for v in attainable if v not in sys.designated] + [v for v in attainable if v in sys.designated]
    elif prefer == "first":
        ranked = attainable
    else:
        raise ValueError(f"unknown choice policy '{prefer}'")
    value, valuation = engine.witness(f, s, [ranked[0]])
    fp = engine.fingerprint(f, s)
    return EvalVerdict(value, value in sys.designated, engine.trace(fp, valuation))


def check_true(A: Structure, v: Valuation, f: Formula) -> bool:
    """True iff f is designated under every assignment of its free variables.

    Raises:
        IncompleteValuationError: v lacks a value f needs.
    """
    engine = ValuationEngine(A, v.system)
    for s in iter_assignments(free_vars(f), A.size):
        if engine.value_of(engine.fingerprint(f, s), v) not in v.system.designated:
            return False
    return True


def random_valuation(A: Structure, sys: SystemSpec, rng: random.Random, formulas: Iterable[Formula] = (), budget: Optional[Budget] = None) -> Valuation:
    """A legal valuation with random choices committed for the given formulas.

    Choices are made bottom-up under every assignment of each formula's
    free variables; fingerprints outside these formulas stay uncommitted.
    """
    engine = ValuationEngine(A, sys, budget)
    valuation = Valuation(sys)
    for f in formulas:
        for s in iter_assignments(free_vars(f), A.size):
            engine.random_value(engine.fingerprint(f, s), valuation, rng)
    return valuation
