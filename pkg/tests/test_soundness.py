import random

import pytest

from app.nmatrix import get_system
from app.proofcheck import SCHEMAS, match_axiom, schemas_for
from app.semantics import InstanceGenerator, check_axiom_soundness, random_structure
from app.semantics.soundness import BASE_SIGNATURE
from app.syntax import parse_formula

NBF_INSTANCE = parse_formula("(forall x. <>P(x)) -> <>forall x. P(x)")


def nbf_instances(rng, schema):
    return NBF_INSTANCE


@pytest.mark.parametrize("mode", ["det", "nd"])
def test_tm_axioms_and_rules_hold(mode):
    report = check_axiom_soundness(get_system("tm", mode), trials=40, seed=7, max_universe=2)
    assert report.ok, [(t.label, t.failures[0].instance) for t in report.tallies if t.failures]
    labels = [t.label for t in report.tallies]
    assert labels[-2:] == ["MP", "Gen"]
    assert report.tally("T").trials == 40


@pytest.mark.slow
@pytest.mark.parametrize("name", ["tm", "t4m", "t45m"])
@pytest.mark.parametrize("mode", ["det", "nd"])
def test_full_suite_holds(name, mode):
    sys = get_system(name, mode)
    report = check_axiom_soundness(sys, trials=1000, seed=11, max_universe=3)
    assert report.ok, [(t.label, t.failures[0].instance) for t in report.tallies if t.failures]
    labels = [t.label for t in report.tallies]
    assert labels == [s.name for s in schemas_for(sys)] + ["MP", "Gen"]
    assert all(t.trials == 1000 for t in report.tallies)


def test_nondeterministic_nbf_fails(tm_nd):
    report = check_axiom_soundness(
        tm_nd, generator=nbf_instances, trials=400, seed=0, max_universe=2, schemas=["NBF"], include_rules=False
    )
    tally = report.tally("NBF")
    assert not report.ok
    failure = tally.failures[0]
    assert failure.structure.size == 2
    assert failure.value not in tm_nd.designated
    assert failure.trace


def test_deterministic_nbf_holds(tm):
    report = check_axiom_soundness(
        tm, generator=nbf_instances, trials=200, seed=0, max_universe=2, schemas=["NBF"], include_rules=False
    )
    assert report.ok


def test_runs_are_reproducible(tm_nd):
    first = check_axiom_soundness(tm_nd, trials=5, seed=3, max_universe=2, schemas=["K", "BF"], include_rules=False)
    second = check_axiom_soundness(tm_nd, trials=5, seed=3, max_universe=2, schemas=["K", "BF"], include_rules=False)
    assert [(t.label, len(t.failures)) for t in first.tallies] == [(t.label, len(t.failures)) for t in second.tallies]


def test_unknown_tally(tm):
    report = check_axiom_soundness(tm, trials=1, schemas=["Ax1"], include_rules=False)
    with pytest.raises(KeyError):
        report.tally("nope")


@pytest.mark.parametrize("name", ["tm", "tm-c", "km"])
def test_generated_instances_match_their_schema(name):
    sys = get_system(name)
    generator = InstanceGenerator(random.Random(5), sys)
    for schema in schemas_for(sys):
        for _ in range(5):
            assert match_axiom(generator.instance(schema), schema, sys) is not None


def test_random_structures_interpret_the_base_signature(rng):
    km = get_system("km")
    A = random_structure(rng, BASE_SIGNATURE, km, 3)
    A.check_shape(km)
    A.check_signature(BASE_SIGNATURE)
    assert 1 <= A.size <= 3


def test_schema_registry():
    assert "NBF" in [s.name for s in schemas_for(get_system("tm", "det"))]
    assert "NBF" not in [s.name for s in schemas_for(get_system("tm", "nd"))]
    assert "N=" not in [s.name for s in schemas_for(get_system("tm-c"))]
    assert SCHEMAS["D"] in schemas_for(get_system("dm"))
