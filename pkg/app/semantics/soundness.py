"""Randomized soundness suite for a system's axioms and rules."""

import logging
import random
from itertools import product
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional

from app.nmatrix import SystemSpec, TruthValue
from app.proofcheck.schemas import SCHEMAS, AxiomSchema, schemas_for
from app.syntax import (
    Forall,
    Formula,
    IdentityKind,
    Imp,
    Signature,
    Var,
    format_formula,
    free_vars,
    infer_signature,
    is_free_for,
)
from app.syntax.generate import FormulaGenerator

from .engine import ChoiceRecord, Valuation, ValuationEngine
from .structure import FunctionTable, Structure, extension_from_values, iter_assignments

logger = logging.getLogger(__name__)

BASE_SIGNATURE = Signature(predicates={"P": 1, "Q": 2}, functions={"f": 1}, constants=frozenset({"c", "d"}))
MAX_ATTEMPTS = 200

InstanceFactory = Callable[[random.Random, AxiomSchema], Formula]


@dataclass
class Failure:
    label: str
    instance: str
    structure: Structure
    assignment: Dict[str, int]
    value: TruthValue
    trace: List[ChoiceRecord] = field(default_factory=list)


@dataclass
class Tally:
    label: str
    trials: int = 0
    failures: List[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class SoundnessReport:
    system: str
    seed: int
    tallies: List[Tally] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(t.ok for t in self.tallies)

    def tally(self, label: str) -> Tally:
        for t in self.tallies:
            if t.label == label:
                return t
        raise KeyError(label)


def random_structure(rng: random.Random, sig: Signature, sys: SystemSpec, max_universe: int) -> Structure:
    size = rng.randint(1, max_universe)
    predicates = {}
    arities = list(sig.predicates.items()) + [(p, 0) for p in sig.propositions]
    for name, arity in sorted(arities):
        predicates[name] = extension_from_values(
            {row: rng.choice(sys.values) for row in product(range(size), repeat=arity)}, sys.carrier
        )
    functions = {
        name: FunctionTable(arity, tuple(rng.randrange(size) for _ in range(size ** arity)))
        for name, arity in sorted(sig.functions.items())
    }
    constants = {name: rng.randrange(size) for name in sorted(sig.constants)}
    return Structure(size, predicates, functions, constants)


class InstanceGenerator:
    """Random instances of axiom schemas that satisfy their side conditions."""

    def __init__(self, rng: random.Random, sys: SystemSpec, max_depth: int = 2):
        self.rng = rng
        self.sys = sys
        self.formulas = FormulaGenerator(
            rng,
            predicates=dict(BASE_SIGNATURE.predicates),
            constants=tuple(sorted(BASE_SIGNATURE.constants)),
            functions=dict(BASE_SIGNATURE.functions),
            identity_kinds=tuple(IdentityKind),
            max_depth=max_depth,
        )

    def __call__(self, rng: random.Random, schema) -> Formula:
        return self.instance(schema)

    def instance(self, schema) -> Formula:
        for _ in range(MAX_ATTEMPTS):
            candidate = self._candidate(schema)
            if candidate is not None and schema.match(candidate, self.sys) is not None:
                return candidate
        raise RuntimeError(f"could not generate an instance of {schema.name}")

    def _candidate(self, schema) -> Optional[Formula]:
        gen = self.formulas
        variables = list(gen.variables)
        x, y = self.rng.choice(variables), self.rng.choice(variables)
        kinds = sorted(schema.identity_kinds(self.sys))
        kind = self.rng.choice(kinds) if kinds else IdentityKind.NECESSARY

        if schema.name == "Ax4":
            alpha, tau = gen.formula(), gen.term()
            if not is_free_for(tau, x, alpha):
                return None
            return schema.build({"A": alpha, "x": x, "tau": tau})
        if schema.name == "Ax5":
            alpha = gen.formula(variables=[v for v in variables if v != x])
            if x in free_vars(alpha):
                return None
            return schema.build({"A": alpha, "B": gen.formula(), "x": x})
        if schema.name == "Ax6":
            alpha = gen.formula()
            return schema.build({"A": alpha, "B": gen.variant(alpha)})
        if schema.name == "Ax8":
            alpha = gen.formula()
            if not is_free_for(Var(y), x, alpha):
                return None
            beta = gen.partial_replacement(alpha, x, y)
            return schema.build({"A": alpha, "B": beta, "x": x, "y": y}, kind)
        binding = {"A": gen.formula(), "B": gen.formula(), "C": gen.formula(), "x": x, "y": y}
        return schema.build(binding, kind)


def _falsify(engine: ValuationEngine, valuation: Valuation, f: Formula, rng: random.Random):
    """First assignment under which the random valuation leaves f undesignated."""
    for s in iter_assignments(free_vars(f), engine.structure.size):
        fp = engine.fingerprint(f, s)
        value = engine.random_value(fp, valuation, rng)
        if value not in engine.system.designated:
            return s, value, fp
    return None


def _is_true(engine: ValuationEngine, valuation: Valuation, f: Formula, rng: random.Random) -> bool:
    return _falsify(engine, valuation, f, rng) is None


def check_axiom_soundness(
    sys: SystemSpec,
    generator: Optional[InstanceFactory] = None,
    trials: int = 1000,
    seed: int = 0,
    max_universe: int = 3,
    schemas: Optional[Iterable[str]] = None,
    include_rules: bool = True,
) -> SoundnessReport:
    """Evaluate random axiom instances under random structures and valuations.

    Every failure carries the instance, the structure, the assignment and
    the full choice trace.
    """
    rng = random.Random(seed)
    selected = [SCHEMAS[name] for name in schemas] if schemas is not None else schemas_for(sys)
    factory = generator if generator is not None else InstanceGenerator(rng, sys)
    report = SoundnessReport(system=sys.label, seed=seed)

    for schema in selected:
        tally = Tally(schema.name)
        for _ in range(trials):
            instance = factory(rng, schema)
            sig = BASE_SIGNATURE.merge(infer_signature(instance))
            structure = random_structure(rng, sig, sys, max_universe)
            engine = ValuationEngine(structure, sys)
            valuation = Valuation(sys)
            tally.trials += 1
            falsified = _falsify(engine, valuation, instance, rng)
            if falsified is not None:
                s, value, fp = falsified
                tally.failures.append(
                    Failure(schema.name, format_formula(instance), structure, dict(s), value, engine.trace(fp, valuation))
                )
        if tally.failures:
            logger.warning(f"❌ {schema.name}: {len(tally.failures)}/{tally.trials} instances undesignated in {sys.label}")
        else:
            logger.info(f"✅ {schema.name}: {tally.trials} instances designated in {sys.label}")
        report.tallies.append(tally)

    if include_rules:
        report.tallies.extend(check_rule_preservation(sys, trials, rng, max_universe))
    return report


def check_rule_preservation(sys: SystemSpec, trials: int, rng: random.Random, max_universe: int = 3) -> List[Tally]:
    """MP and Gen keep truth in random (structure, valuation) pairs."""
    gen = FormulaGenerator(
        rng,
        predicates=dict(BASE_SIGNATURE.predicates),
        constants=tuple(sorted(BASE_SIGNATURE.constants)),
        functions=dict(BASE_SIGNATURE.functions),
        identity_kinds=tuple(IdentityKind),
        max_depth=2,
    )
    mp, generalization = Tally("MP"), Tally("Gen")
    for _ in range(trials):
        structure = random_structure(rng, BASE_SIGNATURE, sys, max_universe)
        engine = ValuationEngine(structure, sys)
        valuation = Valuation(sys)
        alpha, beta = gen.formula(), gen.formula()
        mp.trials += 1
        if _is_true(engine, valuation, alpha, rng) and _is_true(engine, valuation, Imp(alpha, beta), rng):
            falsified = _falsify(engine, valuation, beta, rng)
            if falsified is not None:
                s, value, fp = falsified
                mp.failures.append(Failure("MP", format_formula(beta), structure, dict(s), value, engine.trace(fp, valuation)))

        var = rng.choice(list(gen.variables))
        generalization.trials += 1
        if _is_true(engine, valuation, alpha, rng):
            closed = Forall(var, alpha)
            falsified = _falsify(engine, valuation, closed, rng)
            if falsified is not None:
                s, value, fp = falsified
                generalization.failures.append(
                    Failure("Gen", format_formula(closed), structure, dict(s), value, engine.trace(fp, valuation))
                )
    return [mp, generalization]
