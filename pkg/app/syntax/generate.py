"""Random terms and formulas over a small fixed vocabulary."""

import random
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .ast import App, Atom, Box, Const, Forall, Formula, Identity, IdentityKind, Imp, Neg, Term, Var
from .operations import free_vars, rename_bound


@dataclass
class FormulaGenerator:
    rng: random.Random
    predicates: Dict[str, int]
    constants: Tuple[str, ...] = ("c", "d")
    functions: Dict[str, int] = None
    variables: Tuple[str, ...] = ("x", "y")
    identity_kinds: Tuple[IdentityKind, ...] = (IdentityKind.NECESSARY,)
    max_depth: int = 3
    identity_weight: float = 0.2

    def __post_init__(self):
        if self.functions is None:
            self.functions = {}

    def term(self, depth: int = 1, variables: Optional[Sequence[str]] = None) -> Term:
        variables = self.variables if variables is None else variables
        choices = ["var"] * 3 + (["const"] if self.constants else []) + (["app"] if self.functions and depth > 0 else [])
        if not variables:
            choices = [c for c in choices if c != "var"] or ["const"]
        kind = self.rng.choice(choices)
        if kind == "var":
            return Var(self.rng.choice(list(variables)))
        if kind == "const":
            return Const(self.rng.choice(list(self.constants)))
        name = self.rng.choice(sorted(self.functions))
        return App(name, tuple(self.term(depth - 1, variables) for _ in range(self.functions[name])))

    def atom(self, variables: Optional[Sequence[str]] = None) -> Formula:
        if self.rng.random() < self.identity_weight:
            kind = self.rng.choice(list(self.identity_kinds))
            return Identity(kind, self.term(1, variables), self.term(1, variables))
        name = self.rng.choice(sorted(self.predicates))
        arity = self.predicates[name]
        return Atom(name, tuple(self.term(1, variables) for _ in range(arity)))

    def formula(self, depth: Optional[int] = None, variables: Optional[Sequence[str]] = None) -> Formula:
        depth = self.max_depth if depth is None else depth
        variables = self.variables if variables is None else variables
        if depth <= 0 or self.rng.random() < 0.25:
            return self.atom(variables)
        kind = self.rng.choice(["neg", "box", "imp", "imp", "forall"])
        if kind == "neg":
            return Neg(self.formula(depth - 1, variables))
        if kind == "box":
            return Box(self.formula(depth - 1, variables))
        if kind == "imp":
            return Imp(self.formula(depth - 1, variables), self.formula(depth - 1, variables))
        var = self.rng.choice(list(self.variables))
        return Forall(var, self.formula(depth - 1, tuple(set(variables) | {var})))

    def variant(self, f: Formula) -> Formula:
        """A random variant of f: renamed outer binder and/or a void quantifier."""
        result = f
        if isinstance(f, Forall):
            fresh = [v for v in ("u", "w", "z") if v not in free_vars(f.body)]
            renamed = rename_bound(f, f.var, self.rng.choice(fresh)) if fresh else None
            if renamed is not None:
                result = renamed
        if self.rng.random() < 0.5:
            void = [v for v in ("u", "w", "z") if v not in free_vars(result)]
            if void:
                result = Forall(self.rng.choice(void), result)
        return result

    def partial_replacement(self, f: Formula, x: str, y: str) -> Formula:
        """Replace a random subset of the free occurrences of x by y."""

        def term(t: Term, bound: bool) -> Term:
            if isinstance(t, Var) and t.name == x and not bound:
                return Var(y) if self.rng.random() < 0.5 else t
            if isinstance(t, App):
                return App(t.func, tuple(term(a, bound) for a in t.args))
            return t

        def walk(g: Formula, bound: bool) -> Formula:
            if isinstance(g, Atom):
                return Atom(g.pred, tuple(term(a, bound) for a in g.args))
            if isinstance(g, Identity):
                return Identity(g.kind, term(g.lhs, bound), term(g.rhs, bound))
            if isinstance(g, Neg):
                return Neg(walk(g.body, bound))
            if isinstance(g, Box):
                return Box(walk(g.body, bound))
            if isinstance(g, Imp):
                return Imp(walk(g.left, bound), walk(g.right, bound))
            return Forall(g.var, walk(g.body, bound or g.var == x))

        return walk(f, False)
