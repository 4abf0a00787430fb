import random

import pytest
from hypothesis import given, settings, strategies as st

from app.syntax import (
    App,
    Atom,
    Box,
    CaptureError,
    Const,
    Forall,
    Identity,
    IdentityKind,
    Imp,
    Neg,
    ParseError,
    Signature,
    SignatureError,
    Var,
    alpha_normalize,
    format_formula,
    free_vars,
    infer_signature,
    is_free_for,
    is_partial_replacement,
    is_propositional,
    is_variant,
    parse_formula,
    parse_term,
    rename_bound,
    substitute,
)
from app.syntax.generate import FormulaGenerator

from .strategies import formulas

A, B = Atom("A"), Atom("B")


def P(t):
    return Atom("P", (t,))


def Q(s, t):
    return Atom("Q", (s, t))


x, y, c, d = Var("x"), Var("y"), Const("c"), Const("d")


class TestParser:
    def test_quantifier_scope_extends_right(self):
        assert parse_formula("forall x. P(x) -> Q(x, x)") == Forall("x", Imp(P(x), Q(x, x)))

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("A", A),
            ("<>A", Neg(Box(Neg(A)))),
            ("[]A -> A", Imp(Box(A), A)),
            ("~A & B", Neg(Imp(Neg(A), Neg(B)))),
            ("A -> (B -> A)", Imp(A, Imp(B, A))),
        ],
    )
    def test_sentence_letters(self, text, expected):
        assert parse_formula(text) == expected

    def test_sentence_letters_with_a_signature(self):
        sig = Signature(propositions={"A"}, predicates={"P": 1}, constants={"c"})
        assert parse_formula("A -> P(c)", sig) == Imp(A, P(c))

    def test_parenthesized_quantifier(self):
        assert parse_formula("(forall x. P(x)) -> P(c)") == Imp(Forall("x", P(x)), P(c))

    def test_abbreviations_expand(self):
        assert parse_formula("<>A") == Neg(Box(Neg(A)))
        assert parse_formula("A & B") == Neg(Imp(A, Neg(B)))
        assert parse_formula("A | B") == Imp(Neg(A), B)
        assert parse_formula("exists x. P(x)") == Neg(Forall("x", Neg(P(x))))
        assert parse_formula("A => B") == Box(Imp(A, B))

    def test_identity_symbols(self):
        assert parse_formula("x = y") == Identity(IdentityKind.NECESSARY, x, y)
        assert parse_formula("x =c y") == Identity(IdentityKind.CONTINGENT, x, y)
        assert parse_formula("c =! d") == Box(Identity(IdentityKind.NECESSARY, c, d))

    def test_implication_is_right_associative(self):
        assert parse_formula("A -> B -> A") == Imp(A, Imp(B, A))

    def test_names_without_signature(self):
        # u..z start variables, everything else is a constant
        assert parse_term("f(x, c)") == App("f", (x, c))
        assert parse_formula("forall c. P(c)") == Forall("c", P(Var("c")))

    def test_error_offset(self):
        with pytest.raises(ParseError) as info:
            parse_formula("P(x,")
        assert info.value.offset == 4
        assert "expected a term" in str(info.value)

    def test_trailing_input(self):
        with pytest.raises(ParseError) as info:
            parse_formula("P(x))")
        assert info.value.offset == 4

    def test_unexpected_character(self):
        with pytest.raises(ParseError) as info:
            parse_formula("A $ B")
        assert info.value.offset == 2

    def test_signature_checks(self):
        sig = Signature(predicates={"P": 1}, constants={"c"})
        assert parse_formula("P(c)", sig) == P(c)
        with pytest.raises(SignatureError):
            parse_formula("P(c, c)", sig)
        with pytest.raises(SignatureError):
            parse_formula("R(c)", sig)

    def test_inconsistent_arities(self):
        with pytest.raises(SignatureError):
            parse_formula("P(x) -> P(x, y)")

    def test_signature_rejects_shared_names(self):
        with pytest.raises(SignatureError):
            Signature(predicates={"P": 1}, constants={"P"})
        with pytest.raises(SignatureError):
            Signature(functions={"f": 0})

    def test_infer_signature(self):
        sig = infer_signature(parse_formula("forall x. Q(x, f(c)) -> A"))
        assert sig.predicates == {"Q": 2}
        assert sig.functions == {"f": 1}
        assert sig.constants == frozenset({"c"})
        assert sig.propositions == frozenset({"A"})


class TestPrinter:
    @pytest.mark.parametrize(
        "text",
        ["A & B", "<>A", "exists x. P(x)", "c =! d", "x =c y", "[]A -> A", "(forall x. P(x)) -> P(c)"],
    )
    def test_sugar_is_restored(self, text):
        assert format_formula(parse_formula(text)) == text

    def test_disjunction_prints_as_implication(self):
        assert format_formula(parse_formula("A | B")) == "~A -> B"

    def test_quantifier_on_the_right_is_parenthesized(self):
        assert format_formula(Imp(A, Forall("x", P(x)))) == "A -> (forall x. P(x))"

    def test_unsugared_output(self):
        assert format_formula(parse_formula("<>A"), sugar=False) == "~[]~A"

    @given(formulas)
    @settings(max_examples=200)
    def test_print_then_parse_is_identity(self, f):
        assert parse_formula(format_formula(f)) == f
        assert parse_formula(format_formula(f, sugar=False)) == f


class TestOperations:
    def test_free_vars(self):
        assert free_vars(parse_formula("forall x. Q(x, y)")) == {"y"}
        assert free_vars(parse_formula("P(x) -> forall x. P(x)")) == {"x"}

    def test_substitution_skips_bound_occurrences(self):
        f = parse_formula("P(x) -> (forall x. P(x))")
        assert substitute(f, "x", c) == parse_formula("P(c) -> (forall x. P(x))")

    def test_capture_is_rejected(self):
        f = parse_formula("forall y. Q(x, y)")
        assert not is_free_for(y, "x", f)
        with pytest.raises(CaptureError):
            substitute(f, "x", y)

    def test_partial_replacement(self):
        f = Q(x, x)
        assert is_partial_replacement(f, Q(x, y), "x", "y")
        assert is_partial_replacement(f, Q(y, x), "x", "y")
        assert is_partial_replacement(f, Q(y, y), "x", "y")
        assert is_partial_replacement(f, f, "x", "y")
        assert not is_partial_replacement(f, Q(Var("z"), x), "x", "y")

    def test_partial_replacement_leaves_bound_occurrences(self):
        assert not is_partial_replacement(Forall("x", P(x)), Forall("x", P(y)), "x", "y")

    def test_variants(self):
        assert is_variant(parse_formula("forall x. P(x)"), parse_formula("forall y. P(y)"))
        assert is_variant(parse_formula("forall x. P(x)"), parse_formula("forall z. forall x. P(x)"))
        assert not is_variant(parse_formula("forall x. Q(x, y)"), parse_formula("forall y. Q(y, y)"))

    def test_alpha_normalize_names_binders_in_order(self):
        f = parse_formula("forall x. forall y. Q(x, y)")
        expected = Forall("v0", Forall("v1", Q(Var("v0"), Var("v1"))))
        assert alpha_normalize(f) == expected

    def test_alpha_normalize_avoids_free_names(self):
        f = Forall("x", Q(x, Var("v0")))
        assert alpha_normalize(f) == Forall("v1", Q(Var("v1"), Var("v0")))

    def test_rename_bound_refuses_capture(self):
        assert rename_bound(parse_formula("forall x. Q(x, y)"), "x", "y") is None
        assert rename_bound(parse_formula("forall x. P(x)"), "x", "z") == parse_formula("forall z. P(z)")

    def test_propositional(self):
        assert is_propositional(parse_formula("[]A -> <>B"))
        assert not is_propositional(parse_formula("P(c)"))

    @given(formulas)
    def test_alpha_normalize_is_idempotent(self, f):
        once = alpha_normalize(f)
        assert alpha_normalize(once) == once
        assert is_variant(f, once)

    @given(formulas)
    def test_identity_substitution(self, f):
        assert substitute(f, "x", x) == f


class TestGenerator:
    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=100)
    def test_variants_are_variants(self, seed):
        gen = FormulaGenerator(random.Random(seed), predicates={"P": 1, "Q": 2}, functions={"f": 1})
        f = gen.formula()
        assert is_variant(f, gen.variant(f))

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=100)
    def test_partial_replacements_are_recognized(self, seed):
        gen = FormulaGenerator(random.Random(seed), predicates={"P": 1, "Q": 2})
        f = gen.formula()
        g = gen.partial_replacement(f, "x", "y")
        if is_free_for(y, "x", f):
            assert is_partial_replacement(f, g, "x", "y")
