import pytest
from hypothesis import given, settings

from approxring.harness.fixtures import all_fixtures, fixture
from approxring.harness.generate import GenParams, generate_instances
from approxring.harness.suite import (
    ALL_THEOREMS,
    CATALOG,
    CONFIRMED,
    COUNTEREXAMPLE,
    HYPOTHESIS_NOT_MET,
    TheoremFinding,
    is_classical,
    replay,
    run_theorem_suite,
)

from conftest import closed_instances, random_instances


def by_id(findings):
    return {(f.instance.name, f.theorem_id): f for f in findings}


@pytest.fixture(scope="module")
def fixture_findings():
    return by_id(run_theorem_suite(all_fixtures()))


def test_empty():
    assert run_theorem_suite([]) == []


def test_every_catalog_entry_exercised(fixture_findings):
    exercised = {tid for (_, tid), f in fixture_findings.items() if f.status != HYPOTHESIS_NOT_MET}
    assert set(CATALOG) <= exercised


def test_conv_k_exploration_on_z4p(fixture_findings):
    f = fixture_findings["F-Z4p", "CONV-K"]
    assert f.status == COUNTEREXAMPLE
    assert f.witness == ((0,), 2, 1)
    assert replay(f)


def test_z4p_findings(fixture_findings):
    # coarse probe: the colon of {2} by 0 is empty, and radicals do not split over intersections
    assert fixture_findings["F-Z4p", "PROP-H"].witness == ((2,), 0, "empty")
    assert fixture_findings["F-Z4p", "LEM-F"].witness == ((0,), (2,), 2, "reverse")
    assert fixture_findings["F-Z4p", "THM-M"].status == CONFIRMED
    assert fixture_findings["F-Z4p", "THM-K"].status == CONFIRMED


def test_classical_fixtures_clean(fixture_findings):
    for (name, tid), f in fixture_findings.items():
        if is_classical(f.instance) and tid != "CONV-K":
            assert f.status != COUNTEREXAMPLE, (name, tid, f.witness)


def test_strata_recorded(fixture_findings):
    f = fixture_findings["F-R013", "THM-A"]
    assert f.strata == {"op_closed": False, "associative": True,
                        "injective_probe": False, "upper_closed": True}


def test_selection_and_unknown():
    fs = run_theorem_suite([fixture("F-Z2")], ["THM-A", "RAD-SUP"])
    assert [f.theorem_id for f in fs] == ["THM-A", "RAD-SUP"]
    with pytest.raises(KeyError):
        run_theorem_suite([fixture("F-Z2")], ["THM-Z"])


def test_duplicates_share_results():
    fs = run_theorem_suite([fixture("F-Z6i"), fixture("F-Z6i")], ["THM-A"])
    assert len(fs) == 2 and fs[0] == fs[1]


def test_replay_rejects_tampered_witness(fixture_findings):
    f = fixture_findings["F-Z4p", "CONV-K"]
    fake = TheoremFinding(f.theorem_id, f.fingerprint, f.status, ((0, 2), 2, 1), f.strata, f.instance)
    assert not replay(fake)
    with pytest.raises(ValueError):
        replay(fixture_findings["F-Z2", "THM-A"])


def test_seed_determinism():
    p = GenParams("modular", (2, 8), samples=150, seed=9)
    a = [(f.theorem_id, f.fingerprint, f.status, f.witness)
         for f in run_theorem_suite(generate_instances(p))]
    b = [(f.theorem_id, f.fingerprint, f.status, f.witness)
         for f in run_theorem_suite(generate_instances(p))]
    assert a == b


@settings(max_examples=40)
@given(random_instances(max_points=3))
def test_counterexamples_replay(inst):
    for f in run_theorem_suite([inst]):
        if f.status == COUNTEREXAMPLE:
            assert replay(f), (f.theorem_id, f.witness)
        assert f.theorem_id in ALL_THEOREMS


@settings(max_examples=40)
@given(closed_instances(max_points=3))
def test_stratum_soundness(inst):
    for f in run_theorem_suite([inst]):
        if f.theorem_id != "CONV-K":
            assert f.status != COUNTEREXAMPLE, (f.theorem_id, f.witness)


def test_modular_counterexamples_replay():
    insts = list(generate_instances(GenParams("modular", (2, 8), samples=300, seed=4)))
    found = [f for f in run_theorem_suite(insts) if f.status == COUNTEREXAMPLE]
    assert found
    assert {f.theorem_id for f in found} >= {"PROP-H", "LEM-F", "THM-L", "CONV-K"}
    for f in found:
        assert replay(f), (f.theorem_id, f.witness)
