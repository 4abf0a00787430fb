"""Signatures, terms and formulas of the first-order modal language.

All syntax objects are frozen dataclasses: hashable, comparable by
structure and safe to share between worker processes.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterator, Mapping, Optional, Tuple, Union

IDENTITY_SYMBOLS = frozenset({"=", "=c", "=!", "≈", "≈c", "≊"})


class SignatureError(ValueError):
    """Raised for malformed signatures and symbols used against them."""


@dataclass(frozen=True)
class Signature:
    """Predicate, function and constant symbols with their arities.

    Sentence letters are 0-ary predicates kept apart from ``predicates``
    so that first-order predicates always take at least one argument.
    """

    predicates: Mapping[str, int] = field(default_factory=dict)
    functions: Mapping[str, int] = field(default_factory=dict)
    constants: FrozenSet[str] = frozenset()
    propositions: FrozenSet[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "predicates", dict(self.predicates))
        object.__setattr__(self, "functions", dict(self.functions))
        object.__setattr__(self, "constants", frozenset(self.constants))
        object.__setattr__(self, "propositions", frozenset(self.propositions))

        seen: Dict[str, str] = {}
        categories = (
            ("predicate", self.predicates.keys()),
            ("function", self.functions.keys()),
            ("constant", self.constants),
            ("proposition", self.propositions),
        )
        for category, names in categories:
            for name in names:
                if name in IDENTITY_SYMBOLS:
                    raise SignatureError(f"'{name}' is a built-in identity symbol")
                if name in seen:
                    raise SignatureError(
                        f"'{name}' declared as both {seen[name]} and {category}"
                    )
                seen[name] = category
        for name, arity in list(self.predicates.items()) + list(self.functions.items()):
            if arity < 1:
                raise SignatureError(f"'{name}' must have arity >= 1, got {arity}")

    def __hash__(self):
        return hash(
            (
                tuple(sorted(self.predicates.items())),
                tuple(sorted(self.functions.items())),
                self.constants,
                self.propositions,
            )
        )

    def kind_of(self, name: str) -> Optional[str]:
        if name in self.predicates:
            return "predicate"
        if name in self.functions:
            return "function"
        if name in self.constants:
            return "constant"
        if name in self.propositions:
            return "proposition"
        return None

    def merge(self, other: "Signature") -> "Signature":
        """Union of two signatures; conflicting declarations raise SignatureError."""
        for name, arity in other.predicates.items():
            if self.predicates.get(name, arity) != arity:
                raise SignatureError(f"predicate '{name}' used with arities {self.predicates[name]} and {arity}")
        for name, arity in other.functions.items():
            if self.functions.get(name, arity) != arity:
                raise SignatureError(f"function '{name}' used with arities {self.functions[name]} and {arity}")
        return Signature(
            predicates={**self.predicates, **other.predicates},
            functions={**self.functions, **other.functions},
            constants=self.constants | other.constants,
            propositions=self.propositions | other.propositions,
        )


# Terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class App:
    func: str
    args: Tuple["Term", ...]


@dataclass(frozen=True)
class Elem:
    """A universe element used directly as a term (ground fingerprints)."""

    index: int


Term = Union[Var, Const, App, Elem]


# Formulas


class IdentityKind(str, Enum):
    NECESSARY = "necessary"
    CONTINGENT = "contingent"


@dataclass(frozen=True)
class Atom:
    pred: str
    args: Tuple[Term, ...] = ()


@dataclass(frozen=True)
class Identity:
    kind: IdentityKind
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Neg:
    body: "Formula"


@dataclass(frozen=True)
class Box:
    body: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Atom, Identity, Neg, Box, Imp, Forall]


# Derived connectives, stored expanded


def diamond(f: Formula) -> Formula:
    return Neg(Box(Neg(f)))


def disj(a: Formula, b: Formula) -> Formula:
    return Imp(Neg(a), b)


def conj(a: Formula, b: Formula) -> Formula:
    return Neg(Imp(a, Neg(b)))


def exists(var: str, f: Formula) -> Formula:
    return Neg(Forall(var, Neg(f)))


def strict_imp(a: Formula, b: Formula) -> Formula:
    return Box(Imp(a, b))


def iff(a: Formula, b: Formula) -> Formula:
    return conj(Imp(a, b), Imp(b, a))


def rigid_identity(lhs: Term, rhs: Term) -> Formula:
    """The defined identity τ₁ ≊ τ₂, i.e. box over necessary identity."""
    return Box(Identity(IdentityKind.NECESSARY, lhs, rhs))


def boxes(f: Formula, n: int) -> Formula:
    for _ in range(n):
        f = Box(f)
    return f


def children(f: Formula) -> Tuple[Formula, ...]:
    if isinstance(f, (Neg, Box, Forall)):
        return (f.body,)
    if isinstance(f, Imp):
        return (f.left, f.right)
    return ()


def iter_subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order walk over every subformula occurrence."""
    for child in children(f):
        yield from iter_subformulas(child)
    yield f


def term_subterms(t: Term) -> Iterator[Term]:
    if isinstance(t, App):
        for arg in t.args:
            yield from term_subterms(arg)
    yield t


def formula_terms(f: Formula) -> Iterator[Term]:
    """Top-level argument terms of every atomic subformula."""
    for sub in iter_subformulas(f):
        if isinstance(sub, Atom):
            yield from sub.args
        elif isinstance(sub, Identity):
            yield sub.lhs
            yield sub.rhs


def connective_count(f: Formula) -> int:
    return sum(1 for sub in iter_subformulas(f) if not isinstance(sub, (Atom, Identity)))


def is_propositional(f: Formula) -> bool:
    return all(
        isinstance(sub, (Neg, Box, Imp)) or (isinstance(sub, Atom) and not sub.args)
        for sub in iter_subformulas(f)
    )
