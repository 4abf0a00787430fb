"""Per-system multioperations and quantifier folds."""

from typing import Iterable

from .systems import CarrierError, SystemSpec, lift_unary
from .values import TruthValue, ValueSet


def neg_of(v: TruthValue, sys: SystemSpec) -> ValueSet:
    return sys.tables.neg[sys.check_value(v)]


def box_of(v: TruthValue, sys: SystemSpec) -> ValueSet:
    return sys.tables.box[sys.check_value(v)]


def diamond_of(v: TruthValue, sys: SystemSpec) -> ValueSet:
    return sys.tables.diamond[sys.check_value(v)]


def imp_of(a: TruthValue, b: TruthValue, sys: SystemSpec) -> ValueSet:
    return sys.tables.imp[(sys.check_value(a), sys.check_value(b))]


def or_of(a: TruthValue, b: TruthValue, sys: SystemSpec) -> ValueSet:
    return sys.tables.disj[(sys.check_value(a), sys.check_value(b))]


def and_of(a: TruthValue, b: TruthValue, sys: SystemSpec) -> ValueSet:
    return sys.tables.conj[(sys.check_value(a), sys.check_value(b))]


def neg_set(xs: Iterable[TruthValue], sys: SystemSpec) -> ValueSet:
    return lift_unary(sys.tables.neg, frozenset(xs))


def _fold_argument(xs: Iterable[TruthValue], sys: SystemSpec) -> ValueSet:
    subset = frozenset(xs)
    if not subset:
        raise CarrierError("quantifier folds are undefined on the empty set")
    for v in subset:
        sys.check_value(v)
    return subset


def forall_fold(xs: Iterable[TruthValue], sys: SystemSpec) -> ValueSet:
    """Universal multioperator applied to the set of instance values."""
    return sys.forall_table()[_fold_argument(xs, sys)]


def exists_fold(xs: Iterable[TruthValue], sys: SystemSpec) -> ValueSet:
    return sys.exists_table()[_fold_argument(xs, sys)]
