"""Ground fingerprints: the keys valuations are stored under.

A fingerprint is a formula whose free variables and closed terms have
been replaced by the universe elements they denote, then alpha-normalized.
Formula/assignment pairs that the valuation clauses force to agree
(substitution instances, variants, Leibniz-equal atoms) share one
fingerprint.
"""

from typing import FrozenSet

from app.syntax import (
    App,
    Atom,
    Box,
    Const,
    Elem,
    Forall,
    Formula,
    Identity,
    Imp,
    Neg,
    Term,
    Var,
    alpha_normalize,
)

from .structure import Assignment, Structure, StructureError, denote_term


def ground_term(t: Term, A: Structure, s: Assignment, bound: FrozenSet[str] = frozenset()) -> Term:
    """Replace every subterm free of ``bound`` variables by its element."""
    if isinstance(t, Var):
        if t.name in bound:
            return t
        if t.name not in s:
            raise StructureError(f"variable {t.name} is unassigned")
        return Elem(s[t.name])
    if isinstance(t, (Const, Elem)):
        return Elem(denote_term(A, s, t))
    if isinstance(t, App):
        args = tuple(ground_term(arg, A, s, bound) for arg in t.args)
        if all(isinstance(arg, Elem) for arg in args):
            return Elem(A.functions[t.func].apply(tuple(arg.index for arg in args), A.size))
        return App(t.func, args)
    raise TypeError(f"not a term: {t!r}")


def ground_formula(f: Formula, A: Structure, s: Assignment, bound: FrozenSet[str] = frozenset()) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(ground_term(arg, A, s, bound) for arg in f.args))
    if isinstance(f, Identity):
        return Identity(f.kind, ground_term(f.lhs, A, s, bound), ground_term(f.rhs, A, s, bound))
    if isinstance(f, Neg):
        return Neg(ground_formula(f.body, A, s, bound))
    if isinstance(f, Box):
        return Box(ground_formula(f.body, A, s, bound))
    if isinstance(f, Imp):
        return Imp(ground_formula(f.left, A, s, bound), ground_formula(f.right, A, s, bound))
    if isinstance(f, Forall):
        return Forall(f.var, ground_formula(f.body, A, s, bound | {f.var}))
    raise TypeError(f"not a formula: {f!r}")


def fingerprint(f: Formula, A: Structure, s: Assignment) -> Formula:
    """Ground fingerprint of f under assignment s in structure A."""
    return alpha_normalize(ground_formula(f, A, s))


def instance_fingerprint(quantified: Forall, A: Structure, element: int) -> Formula:
    """Fingerprint of a ground quantifier's body with its variable set to ``element``."""
    return alpha_normalize(ground_formula(quantified.body, A, {quantified.var: element}))
