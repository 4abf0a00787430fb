"""Truth values, carriers and value sets."""

from enum import Enum
from itertools import combinations
from typing import FrozenSet, Iterable, List, Tuple


class TruthValue(str, Enum):
    """The eight values, each a polarity paired with a modal status."""

    T_PLUS = "T+"
    C_PLUS = "C+"
    F_PLUS = "F+"
    I_PLUS = "I+"
    T_MINUS = "T-"
    C_MINUS = "C-"
    F_MINUS = "F-"
    I_MINUS = "I-"

    @property
    def polarity(self) -> str:
        return self.value[1]

    @property
    def modality(self) -> str:
        return self.value[0]

    @property
    def designated(self) -> bool:
        return self.polarity == "+"

    @classmethod
    def parse(cls, text: str) -> "TruthValue":
        """Accept 'T+', 'C-' and the typographic minus 'C−'."""
        normalized = text.strip().replace("−", "-").upper()
        try:
            return cls(normalized)
        except ValueError:
            raise ValueError(f"unknown truth value '{text}'") from None

    def __str__(self) -> str:
        return self.value


ValueSet = FrozenSet[TruthValue]

VALUE_ORDER: Tuple[TruthValue, ...] = tuple(TruthValue)
_RANK = {v: i for i, v in enumerate(VALUE_ORDER)}

T_PLUS, C_PLUS, F_PLUS, I_PLUS = (TruthValue.T_PLUS, TruthValue.C_PLUS, TruthValue.F_PLUS, TruthValue.I_PLUS)
T_MINUS, C_MINUS, F_MINUS, I_MINUS = (TruthValue.T_MINUS, TruthValue.C_MINUS, TruthValue.F_MINUS, TruthValue.I_MINUS)

# Display chain on V4, also the order of the deterministic quantifiers there.
V4_CHAIN: Tuple[TruthValue, ...] = (F_MINUS, C_MINUS, C_PLUS, T_PLUS)


class Carrier(str, Enum):
    V4 = "V4"
    V6 = "V6"
    V8 = "V8"

    @property
    def values(self) -> Tuple[TruthValue, ...]:
        return _CARRIER_VALUES[self]

    @property
    def value_set(self) -> ValueSet:
        return frozenset(_CARRIER_VALUES[self])

    @property
    def designated(self) -> ValueSet:
        return frozenset(v for v in _CARRIER_VALUES[self] if v.designated)

    @property
    def undesignated(self) -> ValueSet:
        return frozenset(v for v in _CARRIER_VALUES[self] if not v.designated)

    def includes(self, other: "Carrier") -> bool:
        return other.value_set <= self.value_set


_CARRIER_VALUES = {
    Carrier.V8: VALUE_ORDER,
    Carrier.V6: tuple(v for v in VALUE_ORDER if v.modality != "I"),
    Carrier.V4: (T_PLUS, C_PLUS, C_MINUS, F_MINUS),
}


def sort_values(values: Iterable[TruthValue]) -> List[TruthValue]:
    return sorted(values, key=_RANK.__getitem__)


def format_value_set(values: Iterable[TruthValue]) -> str:
    return "{" + ",".join(str(v) for v in sort_values(values)) + "}"


def value_set(*values: TruthValue) -> ValueSet:
    if not values:
        raise ValueError("value sets are never empty")
    return frozenset(values)


def parse_value_set(text: str) -> ValueSet:
    """Parse 'T+/C+' or 'T+,C+' (braces optional)."""
    cleaned = text.strip().strip("{}")
    parts = [p for p in cleaned.replace("/", ",").replace(" ", ",").split(",") if p]
    return value_set(*(TruthValue.parse(p) for p in parts))


def value_sets(carrier: Carrier) -> List[ValueSet]:
    """Every nonempty subset of the carrier, smallest first."""
    values = carrier.values
    return [
        frozenset(combo)
        for size in range(1, len(values) + 1)
        for combo in combinations(values, size)
    ]
