"""Free variables, capture-checked substitution, partial replacement and variants."""

import logging
from typing import FrozenSet, Optional, Set

from .ast import (
    App,
    Atom,
    Box,
    Forall,
    Formula,
    Identity,
    Imp,
    Neg,
    Term,
    Var,
)

logger = logging.getLogger(__name__)


class CaptureError(ValueError):
    """A term is not free for the variable it should replace."""


def term_vars(t: Term) -> FrozenSet[str]:
    if isinstance(t, Var):
        return frozenset({t.name})
    if isinstance(t, App):
        result: Set[str] = set()
        for arg in t.args:
            result |= term_vars(arg)
        return frozenset(result)
    return frozenset()


def is_closed_term(t: Term) -> bool:
    return not term_vars(t)


def free_vars(f: Formula) -> FrozenSet[str]:
    """Variables with at least one free occurrence in f."""
    if isinstance(f, Atom):
        result: Set[str] = set()
        for arg in f.args:
            result |= term_vars(arg)
        return frozenset(result)
    if isinstance(f, Identity):
        return term_vars(f.lhs) | term_vars(f.rhs)
    if isinstance(f, (Neg, Box)):
        return free_vars(f.body)
    if isinstance(f, Imp):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Forall):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def all_vars(f: Formula) -> FrozenSet[str]:
    """Every variable name in f, free, bound or binding."""
    if isinstance(f, Forall):
        return all_vars(f.body) | {f.var}
    if isinstance(f, (Neg, Box)):
        return all_vars(f.body)
    if isinstance(f, Imp):
        return all_vars(f.left) | all_vars(f.right)
    return free_vars(f)


def is_free_for(t: Term, x: str, f: Formula) -> bool:
    """True iff no free occurrence of x in f lies in the scope of a binder of a variable of t."""
    return _free_for(term_vars(t), x, f, frozenset())


def _free_for(t_vars: FrozenSet[str], x: str, f: Formula, binders: FrozenSet[str]) -> bool:
    if isinstance(f, (Atom, Identity)):
        if x not in free_vars(f):
            return True
        return not (t_vars & binders)
    if isinstance(f, (Neg, Box)):
        return _free_for(t_vars, x, f.body, binders)
    if isinstance(f, Imp):
        return _free_for(t_vars, x, f.left, binders) and _free_for(t_vars, x, f.right, binders)
    if isinstance(f, Forall):
        if f.var == x:
            return True
        return _free_for(t_vars, x, f.body, binders | {f.var})
    raise TypeError(f"not a formula: {f!r}")


def substitute_term(t: Term, x: str, replacement: Term) -> Term:
    if isinstance(t, Var):
        return replacement if t.name == x else t
    if isinstance(t, App):
        return App(t.func, tuple(substitute_term(a, x, replacement) for a in t.args))
    return t


def substitute(f: Formula, x: str, t: Term) -> Formula:
    """f[x/t]: replace every free x by t.

    Raises:
        CaptureError: if t is not free for x in f.
    """
    if not is_free_for(t, x, f):
        logger.debug(f"Capture rejected: substituting for {x}")
        raise CaptureError(f"term is not free for {x} in formula")
    return _substitute(f, x, t)


def _substitute(f: Formula, x: str, t: Term) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(substitute_term(a, x, t) for a in f.args))
    if isinstance(f, Identity):
        return Identity(f.kind, substitute_term(f.lhs, x, t), substitute_term(f.rhs, x, t))
    if isinstance(f, Neg):
        return Neg(_substitute(f.body, x, t))
    if isinstance(f, Box):
        return Box(_substitute(f.body, x, t))
    if isinstance(f, Imp):
        return Imp(_substitute(f.left, x, t), _substitute(f.right, x, t))
    if isinstance(f, Forall):
        if f.var == x:
            return f
        return Forall(f.var, _substitute(f.body, x, t))
    raise TypeError(f"not a formula: {f!r}")


def is_partial_replacement(f: Formula, g: Formula, x: str, y: str) -> bool:
    """True iff g arises from f by replacing some (maybe none) free x by y."""
    if not is_free_for(Var(y), x, f):
        return False
    return _partial(f, g, x, y, bound=False)


def _partial_term(s: Term, t: Term, x: str, y: str, bound: bool) -> bool:
    if isinstance(s, Var) and s.name == x and not bound:
        return t == s or t == Var(y)
    if isinstance(s, App):
        return (
            isinstance(t, App)
            and s.func == t.func
            and len(s.args) == len(t.args)
            and all(_partial_term(a, b, x, y, bound) for a, b in zip(s.args, t.args))
        )
    return s == t


def _partial(f: Formula, g: Formula, x: str, y: str, bound: bool) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, Atom):
        return (
            f.pred == g.pred
            and len(f.args) == len(g.args)
            and all(_partial_term(a, b, x, y, bound) for a, b in zip(f.args, g.args))
        )
    if isinstance(f, Identity):
        return (
            f.kind == g.kind
            and _partial_term(f.lhs, g.lhs, x, y, bound)
            and _partial_term(f.rhs, g.rhs, x, y, bound)
        )
    if isinstance(f, (Neg, Box)):
        return _partial(f.body, g.body, x, y, bound)
    if isinstance(f, Imp):
        return _partial(f.left, g.left, x, y, bound) and _partial(f.right, g.right, x, y, bound)
    if isinstance(f, Forall):
        return f.var == g.var and _partial(f.body, g.body, x, y, bound or f.var == x)
    return False


def alpha_normalize(f: Formula) -> Formula:
    """Canonical representative of f's variant class.

    Void quantifiers are dropped and bound variables renamed v0, v1, ...
    in binder preorder, skipping names that occur free in f.
    """
    reserved = free_vars(f)
    counter = [0]

    def fresh() -> str:
        while True:
            name = f"v{counter[0]}"
            counter[0] += 1
            if name not in reserved:
                return name

    def rename_term(t: Term, env: dict) -> Term:
        if isinstance(t, Var):
            return Var(env.get(t.name, t.name))
        if isinstance(t, App):
            return App(t.func, tuple(rename_term(a, env) for a in t.args))
        return t

    def walk(g: Formula, env: dict) -> Formula:
        if isinstance(g, Atom):
            return Atom(g.pred, tuple(rename_term(a, env) for a in g.args))
        if isinstance(g, Identity):
            return Identity(g.kind, rename_term(g.lhs, env), rename_term(g.rhs, env))
        if isinstance(g, Neg):
            return Neg(walk(g.body, env))
        if isinstance(g, Box):
            return Box(walk(g.body, env))
        if isinstance(g, Imp):
            left = walk(g.left, env)
            return Imp(left, walk(g.right, env))
        if isinstance(g, Forall):
            if g.var not in free_vars(g.body):
                return walk(g.body, env)
            name = fresh()
            return Forall(name, walk(g.body, {**env, g.var: name}))
        raise TypeError(f"not a formula: {g!r}")

    return walk(f, {})


def is_variant(f: Formula, g: Formula) -> bool:
    """Equal up to renaming of bound variables and void quantifiers."""
    if free_vars(f) != free_vars(g):
        return False
    return alpha_normalize(f) == alpha_normalize(g)


def rename_bound(f: Formula, old: str, new: str) -> Optional[Formula]:
    """Rename the outermost binder of ``old`` to ``new`` if that is capture-free.

    Returns None when the renaming would change the formula's meaning.
    """
    if isinstance(f, Forall) and f.var == old:
        if new in free_vars(f.body) or not is_free_for(Var(new), old, f.body):
            return None
        return Forall(new, _substitute(f.body, old, Var(new)))
    return None

