from itertools import permutations

import pytest

from app.nmatrix import (
    V4_CHAIN,
    Carrier,
    CarrierError,
    QuantifierMode,
    build_tables,
    exists_fold,
    fold_table,
    forall_fold,
    get_system,
    lift_binary,
    neg_set,
    parse_value_set,
    value_sets,
)
from app.nmatrix import tables as data

ND, DET = QuantifierMode.NONDETERMINISTIC, QuantifierMode.DETERMINISTIC


def vs(text):
    return parse_value_set(text)


def test_subset_counts():
    assert len(value_sets(Carrier.V4)) == 15
    assert len(value_sets(Carrier.V6)) == 63
    assert len(value_sets(Carrier.V8)) == 255


@pytest.mark.parametrize(
    "mode, quantifier, subset, expected",
    [
        ("nd", "forall", "C+ C-", "F- C-"),
        ("det", "forall", "C+ C-", "C-"),
        ("nd", "exists", "C+ C-", "T+ C+"),
        ("det", "exists", "C+ C-", "C+"),
        ("det", "forall", "T+ C+", "C+"),
        ("det", "forall", "T+ C+ C-", "C-"),
        ("nd", "forall", "T+ C+ C-", "F- C-"),
        ("det", "exists", "C+ C- F-", "C+"),
        ("nd", "exists", "C+ C- F-", "T+ C+"),
    ],
)
def test_tm_examples(mode, quantifier, subset, expected):
    sys = get_system("tm", mode)
    fold = forall_fold if quantifier == "forall" else exists_fold
    assert fold(vs(subset), sys) == vs(expected)


def test_v4_tables_match_hand_tables():
    assert fold_table(Carrier.V4, "forall", ND) == data.TM_FORALL_ND
    assert fold_table(Carrier.V4, "forall", DET) == data.TM_FORALL_DET
    assert fold_table(Carrier.V4, "exists", ND) == data.TM_EXISTS_ND
    assert fold_table(Carrier.V4, "exists", DET) == data.TM_EXISTS_DET


@pytest.mark.parametrize("carrier", list(Carrier))
@pytest.mark.parametrize("mode", [ND, DET])
def test_singletons_are_fixed(carrier, mode):
    for v in carrier.values:
        assert fold_table(carrier, "forall", mode)[frozenset({v})] == {v}
        assert fold_table(carrier, "exists", mode)[frozenset({v})] == {v}


@pytest.mark.parametrize("name", ["tm", "dm", "km"])
@pytest.mark.parametrize("mode", ["nd", "det"])
def test_quantifier_duality(name, mode):
    sys = get_system(name, mode)
    for subset in value_sets(sys.carrier):
        assert forall_fold(subset, sys) == neg_set(exists_fold(neg_set(subset, sys), sys), sys)


def test_deterministic_v4_follows_the_chain():
    sys = get_system("tm", "det")
    rank = {v: i for i, v in enumerate(V4_CHAIN)}
    for subset in value_sets(Carrier.V4):
        assert forall_fold(subset, sys) == {min(subset, key=rank.__getitem__)}
        assert exists_fold(subset, sys) == {max(subset, key=rank.__getitem__)}


@pytest.mark.parametrize("carrier, largest", [(Carrier.V4, 4), (Carrier.V6, 6), (Carrier.V8, 4)])
def test_fold_collects_every_enumeration_order(carrier, largest):
    tables = build_tables(carrier)
    for quantifier, op in (("forall", tables.conj), ("exists", tables.disj)):
        table = fold_table(carrier, quantifier, ND)
        for subset in value_sets(carrier):
            if len(subset) > largest:
                continue
            expected = set()
            for order in permutations(sorted(subset)):
                acc = frozenset({order[0]})
                for v in order[1:]:
                    acc = lift_binary(op, acc, frozenset({v}))
                expected |= acc
            assert table[subset] == expected


def test_deterministic_mode_only_patches_fixed_entries():
    for carrier in Carrier:
        for quantifier, patch in (("forall", data.FORALL_DET_PATCH), ("exists", data.EXISTS_DET_PATCH)):
            nd, det = fold_table(carrier, quantifier, ND), fold_table(carrier, quantifier, DET)
            changed = {subset for subset in nd if nd[subset] != det[subset]}
            assert changed <= set(patch)


def test_empty_fold_is_rejected():
    with pytest.raises(CarrierError):
        forall_fold([], get_system("tm"))
