import pytest

from app.nmatrix import TruthValue, get_system
from app.proofcheck import barcan_formula, converse_barcan_formula, strict_barcan_formula
from app.semantics import (
    PairExtension,
    ValuationEngine,
    Verdict,
    enumerate_structures,
    find_countermodel,
)
from app.syntax import Atom, Box, Elem, Forall, Signature, Var, parse_formula

T, C = TruthValue.T_PLUS, TruthValue.C_PLUS

P_X = Atom("P", (Var("x"),))
NBF = "(forall x. <>P(x)) -> <>forall x. P(x)"
PBF = "<>(forall x. P(x)) -> forall x. <>P(x)"


def test_structure_enumeration_counts():
    sig = Signature(predicates={"P": 1}, constants={"c"})
    tm, km = get_system("tm"), get_system("km")
    assert sum(1 for _ in enumerate_structures(sig, 1, tm)) == 4
    assert sum(1 for _ in enumerate_structures(sig, 2, tm)) == 16 * 2
    assert sum(1 for _ in enumerate_structures(sig, 2, km)) == 64 * 2


def test_twice_boxed_barcan_fails_at_size_one(tm):
    result = find_countermodel(barcan_formula(P_X, "x", 2), tm, max_universe=3)
    assert result.verdict == Verdict.COUNTERMODEL
    assert result.structures_checked == 1
    cm = result.countermodel
    assert cm.structure.size == 1
    assert cm.structure.predicates["P"] == PairExtension(a=frozenset({(0,)}), c=frozenset())
    assert cm.value not in tm.designated
    # the only way to refute it: P(#0) necessary, the universal merely contingent
    assert cm.valuation.choices[Box(Atom("P", (Elem(0),)))] == T
    assert cm.valuation.choices[Box(Forall("v0", Atom("P", (Var("v0"),))))] == C


def test_twice_boxed_converse_barcan_fails_at_size_one(tm):
    result = find_countermodel(converse_barcan_formula(P_X, "x", 2), tm, max_universe=2)
    cm = result.countermodel
    assert result.verdict == Verdict.COUNTERMODEL
    assert cm.structure.size == 1
    assert cm.valuation.choices[Box(Forall("v0", Atom("P", (Var("v0"),))))] == T
    assert cm.valuation.choices[Box(Atom("P", (Elem(0),)))] == C


def test_countermodel_replays(tm):
    f = barcan_formula(P_X, "x", 2)
    cm = find_countermodel(f, tm, max_universe=1).countermodel
    engine = ValuationEngine(cm.structure, tm)
    assert engine.violations(cm.valuation) == []
    assert engine.value_of(engine.fingerprint(f, cm.assignment), cm.valuation) == cm.value
    assert cm.trace


def test_strict_barcan_is_refutable(tm):
    result = find_countermodel(strict_barcan_formula(P_X), tm, max_universe=1)
    assert result.verdict == Verdict.COUNTERMODEL


def test_nondeterministic_quantifiers_refute_nbf(tm_nd):
    result = find_countermodel(parse_formula(NBF), tm_nd, max_universe=2)
    assert result.verdict == Verdict.COUNTERMODEL
    cm = result.countermodel
    assert cm.structure.size == 2
    assert cm.structure.predicates["P"] == PairExtension(a=frozenset({(0,)}), c=frozenset({(0,), (1,)}))
    # four structures of size one, then seven of size two
    assert result.structures_checked == 11


def test_parallel_search_reports_the_same_countermodel(tm_nd):
    f = parse_formula(NBF)
    sequential = find_countermodel(f, tm_nd, max_universe=2)
    parallel = find_countermodel(f, tm_nd, max_universe=2, jobs=2)
    assert parallel.verdict == Verdict.COUNTERMODEL
    assert parallel.countermodel.structure == sequential.countermodel.structure
    assert parallel.structures_checked == sequential.structures_checked


@pytest.mark.parametrize(
    "formula, mode",
    [
        (NBF, "det"),
        (PBF, "det"),
        (PBF, "nd"),
        ("(forall x. []P(x)) -> []forall x. P(x)", "det"),
        ("[](forall x. P(x)) -> forall x. []P(x)", "det"),
        ("forall x. x = x", "det"),
        ("x = y -> (P(x) -> P(y))", "nd"),
    ],
)
def test_valid_up_to_two(formula, mode):
    result = find_countermodel(parse_formula(formula), get_system("tm", mode), max_universe=2)
    assert result.verdict == Verdict.VALID_UP_TO_BOUND
    assert result.countermodel is None


@pytest.mark.slow
@pytest.mark.parametrize(
    "formula, mode",
    [
        (NBF, "det"),
        (PBF, "nd"),
        ("(forall x. []P(x)) -> []forall x. P(x)", "det"),
        ("[](forall x. P(x)) -> forall x. []P(x)", "nd"),
    ],
)
def test_valid_up_to_three(formula, mode):
    result = find_countermodel(parse_formula(formula), get_system("tm", mode), max_universe=3)
    assert result.verdict == Verdict.VALID_UP_TO_BOUND


def test_budget_exhaustion_is_its_own_verdict(tm):
    result = find_countermodel(parse_formula("(forall x. []P(x)) -> []forall x. P(x)"), tm, max_universe=3, budget=5)
    assert result.verdict == Verdict.BUDGET_EXHAUSTED
    assert result.countermodel is None


def test_invalid_bound(tm):
    with pytest.raises(ValueError):
        find_countermodel(parse_formula("P(c)"), tm, max_universe=0)


def test_necessity_of_identity_fails_with_contingent_identity():
    result = find_countermodel(parse_formula("x = y -> [](x = y)"), get_system("tm-c"), max_universe=1)
    assert result.verdict == Verdict.COUNTERMODEL


@pytest.mark.parametrize("formula", ["~[](c =c d)", "~[]~(c =c d)", "~[](c = d)", "~[]~(c = d)"])
def test_contingent_identity_is_never_necessary(formula):
    result = find_countermodel(parse_formula(formula), get_system("tm-c"), max_universe=2)
    assert result.verdict == Verdict.VALID_UP_TO_BOUND
