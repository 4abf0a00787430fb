from itertools import product

import pytest
from hypothesis import assume, given, settings, strategies as st

from app.nmatrix import TruthValue, get_system
from app.semantics import (
    Budget,
    BudgetExhausted,
    FunctionTable,
    IncompleteValuationError,
    PairExtension,
    ShapeMismatchError,
    Structure,
    StructureError,
    Valuation,
    ValuationEngine,
    Verdict,
    check_true,
    denote_term,
    eval_atom,
    eval_formula,
    evaluate,
    fingerprint,
    find_countermodel,
    possible_values,
    random_valuation,
)
from app.syntax import (
    App,
    Atom,
    Box,
    Const,
    Elem,
    Forall,
    Identity,
    Imp,
    Neg,
    Var,
    free_vars,
    is_variant,
    parse_formula,
    term_vars,
)

from .conftest import load_structure
from .strategies import small_formulas

T, C = TruthValue.T_PLUS, TruthValue.C_PLUS
Cm, Fm = TruthValue.C_MINUS, TruthValue.F_MINUS


@pytest.fixture
def two():
    """P(#0) = C+, P(#1) = C-, Q(#0,#1) = T+, f swaps, c = #0, d = #1."""
    return Structure(
        size=2,
        predicates={
            "P": PairExtension(a=frozenset({(0,)}), c=frozenset({(0,), (1,)})),
            "Q": PairExtension(a=frozenset({(0, 1)})),
        },
        functions={"f": FunctionTable(1, (1, 0))},
        constants={"c": 0, "d": 1},
    )


def values(A, text, sys, s=None):
    return possible_values(A, s or {}, parse_formula(text), sys)


class TestStructure:
    def test_denotation(self, two):
        assert denote_term(two, {}, App("f", (Const("c"),))) == 1
        assert denote_term(two, {"x": 1}, App("f", (Var("x"),))) == 0
        assert denote_term(two, {}, Elem(1)) == 1

    def test_pair_encoding(self, two, tm):
        assert eval_atom(two, {}, parse_formula("P(c)"), tm) == C
        assert eval_atom(two, {}, parse_formula("P(d)"), tm) == Cm
        assert eval_atom(two, {}, parse_formula("Q(c, d)"), tm) == T
        assert eval_atom(two, {}, parse_formula("Q(d, c)"), tm) == Fm

    def test_identity_modes(self, two, tm):
        tm_c = get_system("tm-c")
        assert eval_atom(two, {}, parse_formula("c = c"), tm) == T
        assert eval_atom(two, {}, parse_formula("c = d"), tm) == Fm
        assert eval_atom(two, {}, parse_formula("c = c"), tm_c) == C
        assert eval_atom(two, {}, parse_formula("c = d"), tm_c) == Cm
        assert eval_atom(two, {}, parse_formula("c =c f(d)"), tm) == C

    def test_unassigned_variable(self, two):
        with pytest.raises(StructureError):
            denote_term(two, {}, Var("x"))

    def test_malformed_structures(self):
        with pytest.raises(StructureError):
            Structure(size=0)
        with pytest.raises(StructureError):
            Structure(size=1, constants={"c": 3})
        with pytest.raises(StructureError):
            Structure(size=2, functions={"f": FunctionTable(1, (0,))})

    def test_shape_mismatch(self, two):
        with pytest.raises(ShapeMismatchError):
            two.check_shape(get_system("km"))

    def test_binary_predicate_file(self, tm):
        A = load_structure("two_constants.json")
        assert A.functions["f"].arity == 1
        assert eval_atom(A, {}, parse_formula("R(c, d)"), tm) == T
        assert eval_atom(A, {}, parse_formula("R(d, c)"), tm) == Cm
        assert eval_atom(A, {}, parse_formula("R(f(c), f(d))"), tm) == Cm
        assert eval_atom(A, {}, parse_formula("P(d)"), tm) == Fm
        assert values(A, "c =! f(d)", tm) <= tm.designated

    def test_triple_extension(self):
        A = load_structure("triple_extension.json")
        km = get_system("km")
        assert eval_atom(A, {}, parse_formula("P(#0)"), km) == T
        assert eval_atom(A, {}, parse_formula("P(#1)"), km) == Cm


class TestValues:
    def test_atoms_are_deterministic(self, two, tm):
        assert values(two, "P(c)", tm) == {C}

    def test_box_of_contingent_truth(self, two, tm):
        assert values(two, "[]P(c)", tm) == {Cm, Fm}

    def test_universal_over_contingent_truths(self, tm):
        A = load_structure("contingently_true_universal.json")
        assert values(A, "forall x. P(x)", tm) == {C}

    def test_split_contingency_in_both_modes(self, two, tm, tm_nd):
        assert values(two, "forall x. P(x)", tm) == {Cm}
        assert values(two, "forall x. P(x)", tm_nd) == {Fm, Cm}

    def test_split_contingency_file(self, tm, tm_nd):
        A = load_structure("split_contingency.json")
        assert values(A, "forall x. P(x)", tm) == {Cm}
        assert values(A, "exists x. P(x)", tm) == {C}
        assert values(A, "forall x. P(x)", tm_nd) == {Fm, Cm}

    def test_actual_truth_is_necessary(self, tm):
        A = load_structure("actual_but_not_contingent.json")
        assert values(A, "forall x. P(x)", tm) == {T}
        assert values(A, "forall x. []P(x)", tm) == {T, C}

    def test_nondeterministic_choice_propagates(self, two, tm_nd):
        f = "(forall x. <>P(x)) -> <>forall x. P(x)"
        attainable = values(two, f, tm_nd)
        assert Cm in attainable or Fm in attainable
        assert T in attainable

    def test_self_identity_is_necessary(self, two, tm):
        assert values(two, "forall x. x = x", tm) == {T}
        assert values(two, "forall x. x = x", get_system("tm-c")) == {C}

    def test_rigid_identity(self, two, tm):
        assert values(two, "c =! c", tm) <= tm.designated
        assert not values(two, "c =! d", tm) & tm.designated

    def test_eval_formula_per_assignment(self, two, tm):
        rows = eval_formula(two, parse_formula("P(x)"), tm)
        assert rows == [({"x": 0}, frozenset({C})), ({"x": 1}, frozenset({Cm}))]

    def test_evaluate_preferences(self, two, tm):
        f = parse_formula("[]P(c) -> P(c)")
        designated = evaluate(two, {}, f, tm, prefer="designated")
        assert designated.designated
        assert designated.trace
        with pytest.raises(ValueError):
            evaluate(two, {}, f, tm, prefer="sometimes")

    def test_budget(self, two, tm):
        with pytest.raises(BudgetExhausted):
            possible_values(two, {}, parse_formula("forall x. forall y. [](Q(x, y) -> P(x))"), tm, Budget(2))


class TestFingerprints:
    def test_substitution_instances_share_a_fingerprint(self, two):
        assert fingerprint(parse_formula("[]P(c)"), two, {}) == fingerprint(parse_formula("[]P(x)"), two, {"x": 0})

    def test_variants_share_a_fingerprint(self, two):
        assert fingerprint(parse_formula("forall x. P(x)"), two, {}) == fingerprint(
            parse_formula("forall y. forall z. P(y)"), two, {}
        )

    def test_leibniz_equal_atoms_share_a_fingerprint(self, two):
        f = parse_formula("[]Q(x, x)")
        g = parse_formula("[]Q(x, y)")
        assert fingerprint(f, two, {"x": 1}) == fingerprint(g, two, {"x": 1, "y": 1})

    def test_fingerprint_shape(self, two):
        fp = fingerprint(parse_formula("[](forall x. Q(x, f(c)))"), two, {})
        assert fp == Box(Forall("v0", Atom("Q", (Var("v0"), Elem(1)))))


class TestValuations:
    def test_check_true(self, two, tm):
        engine = ValuationEngine(two, tm)
        f, g = parse_formula("[]P(x)"), parse_formula("~[]P(x)")
        valuation = Valuation(tm)
        for s in ({"x": 0}, {"x": 1}):
            valuation.choices[engine.fingerprint(f, s)] = Cm
            valuation.choices[engine.fingerprint(g, s)] = C
        assert not check_true(two, valuation, f)
        assert check_true(two, valuation, g)

    def test_check_true_needs_committed_values(self, two, tm):
        with pytest.raises(IncompleteValuationError):
            check_true(two, Valuation(tm), parse_formula("[]P(c)"))

    def test_random_valuations_are_legal(self, two, tm_nd, rng):
        formulas = [parse_formula(t) for t in ("forall x. <>P(x)", "[](P(x) -> Q(x, d))", "forall x. x = f(x)")]
        valuation = random_valuation(two, tm_nd, rng, formulas)
        engine = ValuationEngine(two, tm_nd)
        assert valuation.choices
        assert engine.violations(valuation) == []

    def test_violations_are_reported(self, two, tm):
        engine = ValuationEngine(two, tm)
        fp = engine.fingerprint(parse_formula("[]P(c)"), {})
        assert engine.violations(Valuation(tm, {fp: T})) == [fp]


ORACLE = Structure(
    size=2,
    predicates={
        "P": PairExtension(a=frozenset({(0,)}), c=frozenset({(0,), (1,)})),
        "Q": PairExtension(a=frozenset({(0, 1), (1, 1)}), c=frozenset({(1, 1), (1, 0)})),
    },
    functions={"f": FunctionTable(1, (1, 0))},
    constants={"c": 0, "d": 1},
)


def close_term(t, s, bound):
    if not term_vars(t) & bound:
        return Elem(denote_term(ORACLE, s, t))
    if isinstance(t, App):
        return App(t.func, tuple(close_term(a, s, bound) for a in t.args))
    return t


def close_formula(f, s, bound=frozenset()):
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(close_term(a, s, bound) for a in f.args))
    if isinstance(f, Identity):
        return Identity(f.kind, close_term(f.lhs, s, bound), close_term(f.rhs, s, bound))
    if isinstance(f, (Neg, Box)):
        return type(f)(close_formula(f.body, s, bound))
    if isinstance(f, Imp):
        return Imp(close_formula(f.left, s, bound), close_formula(f.right, s, bound))
    return Forall(f.var, close_formula(f.body, s, bound | {f.var}))


def occurrences(f, s, sys, out):
    """Append one (closed formula, kind, children, atom value) row per occurrence; return its index."""
    if isinstance(f, (Atom, Identity)):
        row = (close_formula(f, s), "atom", (), eval_atom(ORACLE, s, f, sys))
    elif isinstance(f, Neg):
        row = (close_formula(f, s), "neg", (occurrences(f.body, s, sys, out),), None)
    elif isinstance(f, Box):
        row = (close_formula(f, s), "box", (occurrences(f.body, s, sys, out),), None)
    elif isinstance(f, Imp):
        children = (occurrences(f.left, s, sys, out), occurrences(f.right, s, sys, out))
        row = (close_formula(f, s), "imp", children, None)
    else:
        children = tuple(occurrences(f.body, {**s, f.var: e}, sys, out) for e in ORACLE.universe)
        row = (close_formula(f, s), "forall", children, None)
    out.append(row)
    return len(out) - 1


def brute_force_values(f, s, sys, cap=6):
    """Attainable values from every map of variant classes to values that respects the clauses.

    None when more than ``cap`` classes are left to choose.
    """
    rows = []
    root = occurrences(f, s, sys, rows)
    representatives = []
    class_of = []
    for closed, *_ in rows:
        for k, rep in enumerate(representatives):
            if is_variant(rep, closed):
                class_of.append(k)
                break
        else:
            representatives.append(closed)
            class_of.append(len(representatives) - 1)

    fixed = {class_of[i]: row[3] for i, row in enumerate(rows) if row[1] == "atom"}
    free = [k for k in range(len(representatives)) if k not in fixed]
    if len(free) > cap:
        return None

    tables = sys.tables
    attainable = set()
    for choice in product(sys.values, repeat=len(free)):
        value = {**fixed, **dict(zip(free, choice))}

        def respected(row, k):
            closed, kind, children, _ = row
            args = [value[class_of[c]] for c in children]
            if kind == "atom":
                return True
            if kind == "neg":
                return value[k] in tables.neg[args[0]]
            if kind == "box":
                return value[k] in tables.box[args[0]]
            if kind == "imp":
                return value[k] in tables.imp[(args[0], args[1])]
            return value[k] in sys.forall_table()[frozenset(args)]

        if all(respected(row, class_of[i]) for i, row in enumerate(rows)):
            attainable.add(value[class_of[root]])
    return attainable


@given(small_formulas, st.sampled_from(["det", "nd"]))
@settings(max_examples=60, deadline=None)
def test_attainable_values_match_brute_force(f, mode):
    sys = get_system("tm", mode)
    s = {v: i % 2 for i, v in enumerate(sorted(free_vars(f)))}
    brute = brute_force_values(f, s, sys)
    assume(brute is not None)
    assert possible_values(ORACLE, s, f, sys) == brute


@pytest.mark.parametrize(
    "text",
    [
        "[][]forall x. P(x) -> [][]forall x. P(x)",
        "[][](forall x. P(f(x))) -> []~~[](forall x. P(f(x)))",
        "(forall y. []forall x. Q(x, y)) -> forall y. []forall x. Q(x, y)",
        "[](forall x. P(x)) -> ([](forall y. P(y)) -> [](forall z. P(z)))",
    ],
)
def test_repeated_closed_subformulas_share_a_value(text):
    f = parse_formula(text)
    for mode in ("det", "nd"):
        sys = get_system("tm", mode)
        assert possible_values(ORACLE, {}, f, sys) <= sys.designated
        assert possible_values(ORACLE, {}, f, sys) == brute_force_values(f, {}, sys, cap=8)


def test_repeated_subformulas_are_one_node(tm):
    engine = ValuationEngine(ORACLE, tm)
    fp = engine.fingerprint(parse_formula("[][]forall x. P(x) -> [][]forall x. P(x)"), {})
    left, right = engine.node(fp).children
    assert left == right
    inner = engine.node(engine.node(left).children[0]).children[0]
    assert inner == Forall("v0", Atom("P", (Var("v0"),)))


def test_single_element_repetition_is_valid(tm):
    one = Structure(1, {"P": PairExtension(frozenset({(0,)}))})
    f = parse_formula("[][]forall x. P(x) -> [][]forall x. P(x)")
    assert possible_values(one, {}, f, tm) <= tm.designated
    assert find_countermodel(f, tm, max_universe=2).verdict == Verdict.VALID_UP_TO_BOUND
