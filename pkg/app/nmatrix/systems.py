"""System descriptions and their (cached) multioperation tables."""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Mapping, Tuple

from . import tables as data
from .values import Carrier, TruthValue, ValueSet, value_sets

logger = logging.getLogger(__name__)


class CarrierError(ValueError):
    """A value, table or system outside the carrier it was used with."""


class BoxVariant(str, Enum):
    BASE = "base"
    AXIOM4 = "axiom4"
    AXIOM45 = "axiom45"


class IdentityMode(str, Enum):
    NECESSARY = "necessary"
    CONTINGENT = "contingent"


class QuantifierMode(str, Enum):
    NONDETERMINISTIC = "nd"
    DETERMINISTIC = "det"

    @classmethod
    def parse(cls, text: "str | QuantifierMode") -> "QuantifierMode":
        if isinstance(text, QuantifierMode):
            return text
        aliases = {
            "nd": cls.NONDETERMINISTIC,
            "nondeterministic": cls.NONDETERMINISTIC,
            "det": cls.DETERMINISTIC,
            "deterministic": cls.DETERMINISTIC,
        }
        try:
            return aliases[text.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown quantifier mode '{text}' (expected nd or det)") from None


# name -> (carrier, box variant, display label)
BASE_SYSTEMS: Dict[str, Tuple[Carrier, BoxVariant, str]] = {
    "tm": (Carrier.V4, BoxVariant.BASE, "Tm"),
    "t4m": (Carrier.V4, BoxVariant.AXIOM4, "T4m"),
    "t45m": (Carrier.V4, BoxVariant.AXIOM45, "T45m"),
    "dm": (Carrier.V6, BoxVariant.BASE, "Dm"),
    "km": (Carrier.V8, BoxVariant.BASE, "Km"),
}
_CARRIER_NAMES = {Carrier.V4: "tm", Carrier.V6: "dm", Carrier.V8: "km"}


@dataclass(frozen=True)
class SystemSpec:
    name: str
    carrier: Carrier
    box_variant: BoxVariant = BoxVariant.BASE
    identity_mode: IdentityMode = IdentityMode.NECESSARY
    quantifier_mode: QuantifierMode = QuantifierMode.DETERMINISTIC

    def __post_init__(self):
        if self.box_variant != BoxVariant.BASE and self.carrier != Carrier.V4:
            raise CarrierError(f"box variant {self.box_variant.value} is only defined on V4")

    @property
    def designated(self) -> ValueSet:
        return self.carrier.designated

    @property
    def values(self) -> Tuple[TruthValue, ...]:
        return self.carrier.values

    @property
    def label(self) -> str:
        base = self.name.removesuffix("-c")
        label = BASE_SYSTEMS[base][2] if base in BASE_SYSTEMS else base
        suffix = "_c" if self.identity_mode == IdentityMode.CONTINGENT else ""
        return f"{label}*{suffix} ({self.quantifier_mode.value})"

    @property
    def tables(self) -> "NmatrixTables":
        return build_tables(self.carrier, self.box_variant)

    def forall_table(self) -> Mapping[ValueSet, ValueSet]:
        return fold_table(self.carrier, "forall", self.quantifier_mode)

    def exists_table(self) -> Mapping[ValueSet, ValueSet]:
        return fold_table(self.carrier, "exists", self.quantifier_mode)

    def check_value(self, v: TruthValue) -> TruthValue:
        if v not in self.carrier.value_set:
            raise CarrierError(f"value {v} is outside carrier {self.carrier.value}")
        return v


def get_system(name: str, quantifier: "str | QuantifierMode" = QuantifierMode.DETERMINISTIC) -> SystemSpec:
    """Look up a system by CLI name, e.g. 'tm', 't45m', 'km-c'.

    Raises:
        ValueError: unknown system name or quantifier mode.
    """
    key = name.strip().lower()
    identity = IdentityMode.NECESSARY
    if key.endswith("-c"):
        key = key[:-2]
        identity = IdentityMode.CONTINGENT
    if key not in BASE_SYSTEMS:
        known = ", ".join(system_names())
        raise ValueError(f"unknown system '{name}' (known: {known})")
    carrier, box_variant, _ = BASE_SYSTEMS[key]
    return SystemSpec(
        name=name.strip().lower(),
        carrier=carrier,
        box_variant=box_variant,
        identity_mode=identity,
        quantifier_mode=QuantifierMode.parse(quantifier),
    )


def system_names() -> List[str]:
    return [name for base in BASE_SYSTEMS for name in (base, f"{base}-c")]


def restrict_system(big: SystemSpec, small: Carrier) -> SystemSpec:
    """The system whose tables are ``big``'s restricted pointwise to ``small``.

    Raises:
        CarrierError: ``small`` is not contained in ``big``'s carrier.
    """
    if not big.carrier.includes(small):
        raise CarrierError(f"cannot restrict {big.carrier.value} to {small.value}")
    if big.box_variant != BoxVariant.BASE:
        return big
    name = _CARRIER_NAMES[small]
    if big.identity_mode == IdentityMode.CONTINGENT:
        name += "-c"
    return SystemSpec(name, small, BoxVariant.BASE, big.identity_mode, big.quantifier_mode)


@dataclass(frozen=True)
class NmatrixTables:
    carrier: Carrier
    neg: Mapping[TruthValue, ValueSet]
    box: Mapping[TruthValue, ValueSet]
    diamond: Mapping[TruthValue, ValueSet]
    imp: Mapping[Tuple[TruthValue, TruthValue], ValueSet]
    disj: Mapping[Tuple[TruthValue, TruthValue], ValueSet]
    conj: Mapping[Tuple[TruthValue, TruthValue], ValueSet]


def _restrict(cell: ValueSet, allowed: ValueSet, where: str) -> ValueSet:
    result = cell & allowed
    if not result:
        raise CarrierError(f"restriction empties the table entry {where}")
    return frozenset(result)


@lru_cache(maxsize=None)
def build_tables(carrier: Carrier, box_variant: BoxVariant = BoxVariant.BASE) -> NmatrixTables:
    """Restrict the V8 data to ``carrier`` and install the box variant."""
    allowed = carrier.value_set
    values = carrier.values

    def unary(table) -> Dict[TruthValue, ValueSet]:
        return {v: _restrict(table[v], allowed, f"{v}") for v in values}

    def binary(table) -> Dict[Tuple[TruthValue, TruthValue], ValueSet]:
        return {(a, b): _restrict(table[(a, b)], allowed, f"({a},{b})") for a in values for b in values}

    neg = unary(data.KM_NEG)
    if box_variant == BoxVariant.AXIOM4:
        box = dict(data.T4M_BOX)
    elif box_variant == BoxVariant.AXIOM45:
        box = dict(data.T45M_BOX)
    else:
        box = unary(data.KM_BOX)

    diamond = {v: lift_unary(neg, lift_unary(box, neg[v])) for v in values}

    logger.debug(f"Built tables for {carrier.value}/{box_variant.value}")
    return NmatrixTables(
        carrier=carrier,
        neg=neg,
        box=box,
        diamond=diamond,
        imp=binary(data.KM_IMP),
        disj=binary(data.KM_OR),
        conj=binary(data.KM_AND),
    )


def lift_unary(table: Mapping[TruthValue, ValueSet], xs: ValueSet) -> ValueSet:
    """Image of a set of arguments under a unary multioperation."""
    result = set()
    for x in xs:
        result |= table[x]
    return frozenset(result)


def lift_binary(table: Mapping[Tuple[TruthValue, TruthValue], ValueSet], xs: ValueSet, ys: ValueSet) -> ValueSet:
    result = set()
    for x in xs:
        for y in ys:
            result |= table[(x, y)]
    return frozenset(result)


@lru_cache(maxsize=None)
def fold_table(carrier: Carrier, quantifier: str, mode: QuantifierMode) -> Dict[ValueSet, ValueSet]:
    """Quantifier multioperator over every nonempty subset of the carrier.

    The nondeterministic entry for X collects every result of folding the
    lifted conjunction (forall) or disjunction (exists) over X in any
    order; the deterministic mode overrides the fixed patch entries.
    """
    if quantifier not in ("forall", "exists"):
        raise ValueError(f"unknown quantifier '{quantifier}'")
    base = build_tables(carrier)
    op = base.conj if quantifier == "forall" else base.disj

    table: Dict[ValueSet, ValueSet] = {}
    for subset in value_sets(carrier):
        if len(subset) == 1:
            table[subset] = subset
            continue
        result = set()
        for x in subset:
            result |= lift_binary(op, table[subset - {x}], frozenset({x}))
        table[subset] = frozenset(result)

    if mode == QuantifierMode.DETERMINISTIC:
        patch = data.FORALL_DET_PATCH if quantifier == "forall" else data.EXISTS_DET_PATCH
        table.update(patch)
    return table
