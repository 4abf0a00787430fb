"""Finite first-order structures, assignments, denotation and atomic values."""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Tuple, Union

from app.nmatrix import Carrier, IdentityMode, SystemSpec, TruthValue
from app.syntax import App, Atom, Const, Elem, Identity, IdentityKind, Signature, Term, Var

logger = logging.getLogger(__name__)

Assignment = Mapping[str, int]
Row = Tuple[int, ...]


class StructureError(ValueError):
    """A structure that is malformed or does not interpret a used symbol."""


class ShapeMismatchError(StructureError):
    """Predicate extensions of the wrong shape for the system's carrier."""


_PAIR_VALUES = {
    (True, False): TruthValue.T_PLUS,
    (True, True): TruthValue.C_PLUS,
    (False, True): TruthValue.C_MINUS,
    (False, False): TruthValue.F_MINUS,
}
_PAIR_MEMBERSHIP = {v: k for k, v in _PAIR_VALUES.items()}

# (in a, in n, in p) -> value
_TRIPLE_VALUES = {
    (True, True, True): TruthValue.T_PLUS,
    (True, False, True): TruthValue.C_PLUS,
    (True, False, False): TruthValue.F_PLUS,
    (True, True, False): TruthValue.I_PLUS,
    (False, True, True): TruthValue.T_MINUS,
    (False, False, True): TruthValue.C_MINUS,
    (False, False, False): TruthValue.F_MINUS,
    (False, True, False): TruthValue.I_MINUS,
}
_TRIPLE_MEMBERSHIP = {v: k for k, v in _TRIPLE_VALUES.items()}


@dataclass(frozen=True)
class PairExtension:
    """Actual and contingent extensions of a predicate (V4 systems)."""

    a: FrozenSet[Row] = frozenset()
    c: FrozenSet[Row] = frozenset()

    def value(self, row: Row) -> TruthValue:
        return _PAIR_VALUES[(row in self.a, row in self.c)]

    def rows(self) -> FrozenSet[Row]:
        return self.a | self.c


@dataclass(frozen=True)
class TripleExtension:
    """Actual, necessary and possible extensions (V6/V8 systems)."""

    a: FrozenSet[Row] = frozenset()
    n: FrozenSet[Row] = frozenset()
    p: FrozenSet[Row] = frozenset()

    def value(self, row: Row) -> TruthValue:
        return _TRIPLE_VALUES[(row in self.a, row in self.n, row in self.p)]

    def rows(self) -> FrozenSet[Row]:
        return self.a | self.n | self.p


Extension = Union[PairExtension, TripleExtension]


def extension_from_values(values: Mapping[Row, TruthValue], carrier: Carrier) -> Extension:
    """Encode a row -> value map as the extension shape of ``carrier``."""
    if carrier == Carrier.V4:
        a, c = set(), set()
        for row, v in values.items():
            if v not in _PAIR_MEMBERSHIP:
                raise ShapeMismatchError(f"value {v} has no V4 encoding")
            in_a, in_c = _PAIR_MEMBERSHIP[v]
            if in_a:
                a.add(row)
            if in_c:
                c.add(row)
        return PairExtension(frozenset(a), frozenset(c))
    a, n, p = set(), set(), set()
    for row, v in values.items():
        in_a, in_n, in_p = _TRIPLE_MEMBERSHIP[v]
        if in_a:
            a.add(row)
        if in_n:
            n.add(row)
        if in_p:
            p.add(row)
    return TripleExtension(frozenset(a), frozenset(n), frozenset(p))


@dataclass(frozen=True)
class FunctionTable:
    """Total n-ary function stored flat in row-major argument order."""

    arity: int
    values: Tuple[int, ...]

    def index(self, args: Row, size: int) -> int:
        position = 0
        for arg in args:
            position = position * size + arg
        return position

    def apply(self, args: Row, size: int) -> int:
        return self.values[self.index(args, size)]


@dataclass(frozen=True)
class Structure:
    size: int
    predicates: Mapping[str, Extension] = field(default_factory=dict)
    functions: Mapping[str, FunctionTable] = field(default_factory=dict)
    constants: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.size < 1:
            raise StructureError("the universe must be nonempty")
        for name, ext in self.predicates.items():
            for row in ext.rows():
                if any(not 0 <= e < self.size for e in row):
                    raise StructureError(f"predicate {name} mentions an element outside the universe")
        for name, table in self.functions.items():
            if len(table.values) != self.size ** table.arity:
                raise StructureError(
                    f"function {name} needs {self.size ** table.arity} entries, got {len(table.values)}"
                )
            if any(not 0 <= e < self.size for e in table.values):
                raise StructureError(f"function {name} maps outside the universe")
        for name, e in self.constants.items():
            if not 0 <= e < self.size:
                raise StructureError(f"constant {name} denotes {e}, outside the universe")

    @property
    def universe(self) -> range:
        return range(self.size)

    def check_shape(self, sys: SystemSpec) -> None:
        """Raise ShapeMismatchError unless every extension fits ``sys``'s carrier."""
        expected = PairExtension if sys.carrier == Carrier.V4 else TripleExtension
        for name, ext in self.predicates.items():
            if not isinstance(ext, expected):
                raise ShapeMismatchError(
                    f"predicate {name} has a {type(ext).__name__} but {sys.carrier.value} needs {expected.__name__}"
                )
            if sys.carrier == Carrier.V6 and not ext.n <= ext.p:
                raise ShapeMismatchError(f"predicate {name}: V6 structures need n ⊆ p")

    def check_signature(self, sig: Signature) -> None:
        """Every symbol of ``sig`` must be interpreted with the right arity."""
        for name, arity in list(sig.predicates.items()) + [(p, 0) for p in sig.propositions]:
            if name not in self.predicates:
                raise StructureError(f"predicate {name} is not interpreted")
            if any(len(row) != arity for row in self.predicates[name].rows()):
                raise StructureError(f"predicate {name} has rows of the wrong arity")
        for name, arity in sig.functions.items():
            if name not in self.functions:
                raise StructureError(f"function {name} is not interpreted")
            if self.functions[name].arity != arity:
                raise StructureError(f"function {name} has arity {self.functions[name].arity}, expected {arity}")
        for name in sig.constants:
            if name not in self.constants:
                raise StructureError(f"constant {name} is not interpreted")


def denote_term(A: Structure, s: Assignment, t: Term) -> int:
    if isinstance(t, Var):
        try:
            return s[t.name]
        except KeyError:
            raise StructureError(f"variable {t.name} is unassigned") from None
    if isinstance(t, Const):
        try:
            return A.constants[t.name]
        except KeyError:
            raise StructureError(f"constant {t.name} is not interpreted") from None
    if isinstance(t, Elem):
        return t.index
    if isinstance(t, App):
        try:
            table = A.functions[t.func]
        except KeyError:
            raise StructureError(f"function {t.func} is not interpreted") from None
        return table.apply(tuple(denote_term(A, s, arg) for arg in t.args), A.size)
    raise TypeError(f"not a term: {t!r}")


def eval_atom(A: Structure, s: Assignment, atom: Union[Atom, Identity], sys: Optional[SystemSpec] = None) -> TruthValue:
    """Deterministic value of a predicate or identity atom.

    ``=`` follows the system's identity mode; ``=c`` is always contingent.
    """
    if isinstance(atom, Identity):
        equal = denote_term(A, s, atom.lhs) == denote_term(A, s, atom.rhs)
        contingent = atom.kind == IdentityKind.CONTINGENT or (
            sys is not None and sys.identity_mode == IdentityMode.CONTINGENT
        )
        if contingent:
            return TruthValue.C_PLUS if equal else TruthValue.C_MINUS
        return TruthValue.T_PLUS if equal else TruthValue.F_MINUS
    try:
        ext = A.predicates[atom.pred]
    except KeyError:
        raise StructureError(f"predicate {atom.pred} is not interpreted") from None
    return ext.value(tuple(denote_term(A, s, arg) for arg in atom.args))


def iter_assignments(variables, size: int) -> Iterator[Dict[str, int]]:
    """All assignments of ``variables`` (sorted) over the universe, lexicographically."""
    names: List[str] = sorted(variables)
    for elements in product(range(size), repeat=len(names)):
        yield dict(zip(names, elements))
