"""
Finite non-deterministic value algebras.

Eight truth values, the V8 multioperation data with its V6/V4
restrictions, the system registry and the quantifier multioperators.
"""

from .operations import (
    and_of,
    box_of,
    diamond_of,
    exists_fold,
    forall_fold,
    imp_of,
    neg_of,
    neg_set,
    or_of,
)
from .systems import (
    BoxVariant,
    CarrierError,
    IdentityMode,
    NmatrixTables,
    QuantifierMode,
    SystemSpec,
    build_tables,
    fold_table,
    get_system,
    lift_binary,
    lift_unary,
    restrict_system,
    system_names,
)
from .values import (
    V4_CHAIN,
    VALUE_ORDER,
    Carrier,
    TruthValue,
    ValueSet,
    format_value_set,
    parse_value_set,
    sort_values,
    value_set,
    value_sets,
)

__all__ = [
    "and_of",
    "box_of",
    "diamond_of",
    "exists_fold",
    "forall_fold",
    "imp_of",
    "neg_of",
    "neg_set",
    "or_of",
    "BoxVariant",
    "CarrierError",
    "IdentityMode",
    "NmatrixTables",
    "QuantifierMode",
    "SystemSpec",
    "build_tables",
    "fold_table",
    "get_system",
    "lift_binary",
    "lift_unary",
    "restrict_system",
    "system_names",
    "V4_CHAIN",
    "VALUE_ORDER",
    "Carrier",
    "TruthValue",
    "ValueSet",
    "format_value_set",
    "parse_value_set",
    "sort_values",
    "value_set",
    "value_sets",
]
