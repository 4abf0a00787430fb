"""Constant multioperation tables.

The V8 tables are the single source of truth; V6 and V4 systems use them
restricted to their carrier. The hand-written V4 tables below them are
kept as an independent cross-check. Cells list the allowed values
separated by '/'.
"""

from typing import Dict, Tuple

from .values import TruthValue, ValueSet, parse_value_set

UnaryTable = Dict[TruthValue, ValueSet]
BinaryTable = Dict[Tuple[TruthValue, TruthValue], ValueSet]


def _unary(text: str) -> UnaryTable:
    table: UnaryTable = {}
    for line in text.strip().splitlines():
        arg, cell = line.split()
        table[TruthValue.parse(arg)] = parse_value_set(cell)
    return table


def _binary(text: str) -> BinaryTable:
    lines = text.strip().splitlines()
    columns = [TruthValue.parse(c) for c in lines[0].split()]
    table: BinaryTable = {}
    for line in lines[1:]:
        row, *cells = line.split()
        if len(cells) != len(columns):
            raise ValueError(f"table row {row} has {len(cells)} cells")
        for column, cell in zip(columns, cells):
            table[(TruthValue.parse(row), column)] = parse_value_set(cell)
    return table


KM_NEG = _unary(
    """
    T+ F-
    C+ C-
    F+ T-
    I+ I-
    T- F+
    C- C+
    F- T+
    I- I+
    """
)

_PLUS = "T+/C+/F+/I+"
_MINUS = "T-/C-/F-/I-"

KM_BOX = _unary(
    f"""
    T+ {_PLUS}
    C+ {_MINUS}
    F+ {_MINUS}
    I+ {_PLUS}
    T- {_PLUS}
    C- {_MINUS}
    F- {_MINUS}
    I- {_PLUS}
    """
)

KM_DIAMOND = _unary(
    f"""
    T+ {_PLUS}
    C+ {_PLUS}
    F+ {_MINUS}
    I+ {_MINUS}
    T- {_PLUS}
    C- {_PLUS}
    F- {_MINUS}
    I- {_MINUS}
    """
)

KM_IMP = _binary(
    """
        T+  C+     F+  I+  T-  C-     F-  I-
    T+  T+  C+     F+  I+  T-  C-     F-  I-
    C+  T+  T+/C+  C+  I+  T-  T-/C-  C-  I-
    F+  T+  T+     T+  I+  T-  T-     T-  I-
    I+  I+  I+     I+  I+  I-  I-     I-  I-
    T-  T+  C+     F+  I+  T+  C+     F+  I+
    C-  T+  T+/C+  C+  I+  T+  T+/C+  C+  I+
    F-  T+  T+     T+  I+  T+  T+     T+  I+
    I-  I+  I+     I+  I+  I+  I+     I+  I+
    """
)

KM_OR = _binary(
    """
        T+  C+     F+  I+  T-  C-     F-  I-
    T+  T+  T+     T+  I+  T+  T+     T+  I+
    C+  T+  T+/C+  C+  I+  T+  T+/C+  C+  I+
    F+  T+  C+     F+  I+  T+  C+     F+  I+
    I+  I+  I+     I+  I+  I+  I+     I+  I+
    T-  T+  T+     T+  I+  T-  T-     T-  I-
    C-  T+  T+/C+  C+  I+  T-  T-/C-  C-  I-
    F-  T+  C+     F+  I+  T-  C-     F-  I-
    I-  I+  I+     I+  I+  I-  I-     I-  I-
    """
)

KM_AND = _binary(
    """
        T+  C+     F+  I+  T-  C-     F-  I-
    T+  T+  C+     F+  I+  T-  C-     F-  I-
    C+  C+  F+/C+  F+  I+  C-  F-/C-  F-  I-
    F+  F+  F+     F+  I+  F-  F-     F-  I-
    I+  I+  I+     I+  I+  I-  I-     I-  I-
    T-  T-  C-     F-  I-  T-  C-     F-  I-
    C-  C-  F-/C-  F-  I-  C-  F-/C-  F-  I-
    F-  F-  F-     F-  I-  F-  F-     F-  I-
    I-  I-  I-     I-  I-  I-  I-     I-  I-
    """
)

# Box tables of the iterated-modality systems, V4 only.

T4M_BOX = _unary(
    """
    T+ T+
    C+ C-/F-
    C- C-/F-
    F- C-/F-
    """
)

T45M_BOX = _unary(
    """
    T+ T+
    C+ F-
    C- F-
    F- F-
    """
)

T45M_DIAMOND = _unary(
    """
    T+ T+
    C+ T+
    C- T+
    F- F-
    """
)

# Hand-written V4 tables, cross-checked against the restricted V8 data.

TM_NEG = _unary(
    """
    T+ F-
    C+ C-
    C- C+
    F- T+
    """
)

TM_BOX = _unary(
    """
    T+ T+/C+
    C+ C-/F-
    C- C-/F-
    F- C-/F-
    """
)

TM_DIAMOND = _unary(
    """
    T+ T+/C+
    C+ T+/C+
    C- T+/C+
    F- C-/F-
    """
)

TM_IMP = _binary(
    """
        T+  C+     C-     F-
    T+  T+  C+     C-     F-
    C+  T+  T+/C+  C-     C-
    C-  T+  T+/C+  T+/C+  C+
    F-  T+  T+     T+     T+
    """
)

TM_OR = _binary(
    """
        T+  C+     C-     F-
    T+  T+  T+     T+     T+
    C+  T+  T+/C+  T+/C+  C+
    C-  T+  T+/C+  C-     C-
    F-  T+  C+     C-     F-
    """
)

TM_AND = _binary(
    """
        T+  C+     C-     F-
    T+  T+  C+     C-     F-
    C+  C+  C+     F-/C-  F-
    C-  C-  F-/C-  F-/C-  F-
    F-  F-  F-     F-     F-
    """
)


def _quantifier(text: str) -> Dict[ValueSet, ValueSet]:
    table: Dict[ValueSet, ValueSet] = {}
    for line in text.strip().splitlines():
        subset, result = line.split("->")
        table[parse_value_set(subset)] = parse_value_set(result)
    return table


# V4 quantifier tables over all fifteen nonempty subsets.

TM_FORALL_ND = _quantifier(
    """
    T+ -> T+
    C+ -> C+
    C- -> C-
    F- -> F-
    T+ C+ -> C+
    T+ C- -> C-
    T+ F- -> F-
    C+ C- -> F- C-
    C+ F- -> F-
    C- F- -> F-
    T+ C+ C- -> F- C-
    T+ C+ F- -> F-
    T+ C- F- -> F-
    C+ C- F- -> F-
    T+ C+ C- F- -> F-
    """
)

TM_FORALL_DET = {
    **TM_FORALL_ND,
    parse_value_set("C+ C-"): parse_value_set("C-"),
    parse_value_set("T+ C+ C-"): parse_value_set("C-"),
}

TM_EXISTS_ND = _quantifier(
    """
    T+ -> T+
    C+ -> C+
    C- -> C-
    F- -> F-
    T+ C+ -> T+
    T+ C- -> T+
    T+ F- -> T+
    C+ C- -> T+ C+
    C+ F- -> C+
    C- F- -> C-
    T+ C+ C- -> T+
    T+ C+ F- -> T+
    T+ C- F- -> T+
    C+ C- F- -> T+ C+
    T+ C+ C- F- -> T+
    """
)

TM_EXISTS_DET = {
    **TM_EXISTS_ND,
    parse_value_set("C+ C-"): parse_value_set("C+"),
    parse_value_set("C+ C- F-"): parse_value_set("C+"),
}

# Entries overridden by the deterministic quantifiers on every carrier.
FORALL_DET_PATCH = {
    parse_value_set("C+ C-"): parse_value_set("C-"),
    parse_value_set("T+ C+ C-"): parse_value_set("C-"),
}
EXISTS_DET_PATCH = {
    parse_value_set("C+ C-"): parse_value_set("C+"),
    parse_value_set("C+ C- F-"): parse_value_set("C+"),
}
