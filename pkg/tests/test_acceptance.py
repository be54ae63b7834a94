"""Acceptance criteria 1-7.

Each test prints one ``[acceptance N] PASS|FAIL ...`` line; the lines are
also collected into a summary section at the end of the pytest run.
Run directly with ``pytest tests/test_acceptance.py -v -s``.
"""

import subprocess
import sys
import time
from contextlib import contextmanager
from itertools import combinations

import pytest

from approxring.harness.fixtures import all_fixtures, fixture, zn
from approxring.harness.generate import GenParams, enumerate_ideals, generate_instances
from approxring.harness.oracle import classical_oracle
from approxring.harness.suite import (
    CATALOG,
    COUNTEREXAMPLE,
    UNIVERSAL,
    is_classical,
    replay,
    run_theorem_suite,
)
from approxring.ideals import (
    _ideal_or_witness,
    classify_ideal,
    is_approx_ideal,
    is_one_absorbing_primary,
    is_prime,
    is_primary,
    quotient,
    radical,
)
from approxring.space import DescriptiveSpace, ProximityRelation, check_dp_axioms

import conftest

MODULAR = GenParams("modular", (2, 10), samples=10_000, seed=0)
EXHAUSTIVE = GenParams("exhaustive", (1, 3), alphabet=3)


@contextmanager
def criterion(n, title):
    info = {}
    try:
        yield info
    except BaseException:
        status = "FAIL"
        raise
    else:
        status = "PASS"
    finally:
        detail = info.get("detail", "")
        line = f"[acceptance {n}] {status}  {title}" + (f": {detail}" if detail else "")
        print(line)
        conftest.ACCEPTANCE_LINES.append(line)


@pytest.fixture(scope="module")
def sweep():
    """Instances for criteria 2, 3 and 5, generated once (generation time is charged to #2)."""
    t0 = time.perf_counter()
    exhaustive = list(generate_instances(EXHAUSTIVE))
    modular = list(generate_instances(MODULAR))
    return {"exhaustive": exhaustive, "modular": modular, "gen_seconds": time.perf_counter() - t0}


def test_1_classical_collapse():
    with criterion(1, "classify_ideal = classical_oracle on Z_2..Z_12") as info:
        t0 = time.perf_counter()
        checked = mismatches = 0
        for n in range(2, 13):
            inst = zn(n)
            oracle = classical_oracle(inst)
            ideals = enumerate_ideals(inst)
            assert list(oracle) == ideals, n
            for W in ideals:
                checked += 1
                mismatches += classify_ideal(inst, W) != oracle[W]
        elapsed = time.perf_counter() - t0
        info["detail"] = f"{checked} ideals, {mismatches} mismatches, {elapsed:.2f} s (< 10 s)"
        assert mismatches == 0
        assert elapsed < 10


def test_2_universal_theorems(sweep):
    with criterion(2, "THM-A, THM-I, LEM-F forward, W <= r(W): zero counterexamples") as info:
        t0 = time.perf_counter()
        ex = run_theorem_suite(sweep["exhaustive"], UNIVERSAL)
        mod = run_theorem_suite(sweep["modular"], UNIVERSAL)
        elapsed = time.perf_counter() - t0 + sweep["gen_seconds"]
        bad = [f for f in ex + mod if f.status == COUNTEREXAMPLE]
        info["detail"] = (f"{len(sweep['exhaustive'])} exhaustive (n<=3) + {len(sweep['modular'])} "
                          f"modular (n<=10) instances, {len(bad)} counterexamples, {elapsed:.1f} s (< 60 s)")
        assert len(sweep["modular"]) >= 10_000
        assert max(i.n_points for i in sweep["modular"]) <= 10
        assert max(i.n_points for i in sweep["exhaustive"]) == 3
        assert not bad, [(f.theorem_id, f.witness) for f in bad[:5]]
        assert elapsed < 60


def test_3_classical_stratum(sweep):
    with criterion(3, "full catalog on the classical stratum: zero counterexamples") as info:
        stratum = [i for i in sweep["exhaustive"] + sweep["modular"] if is_classical(i)]
        ids = CATALOG + ("LEM-F-FWD", "RAD-SUP")
        findings = run_theorem_suite(stratum, ids)
        bad = [f for f in findings if f.status == COUNTEREXAMPLE]
        exercised = {f.theorem_id for f in findings if f.status == "CONFIRMED"}
        info["detail"] = (f"{len(stratum)} classical instances x {len(ids)} theorems, "
                          f"{len(bad)} counterexamples, {len(exercised)} theorems exercised")
        assert stratum
        assert not bad, [(f.theorem_id, f.witness) for f in bad[:5]]


def test_4_fixture_facts():
    with criterion(4, "fixture facts reproduce exactly") as info:
        z4p, r013, z8 = fixture("F-Z4p"), fixture("F-R013"), fixture("F-Z8i")
        assert is_approx_ideal(z4p, {0})
        p = is_prime(z4p, {0})
        assert not p and p.witness == (1, 2)
        q = is_primary(z4p, {0})
        assert not q and q.witness == (2, 1)
        assert is_one_absorbing_primary(z4p, {0})
        assert is_prime(z4p, {0, 2})
        f = r013.flags
        assert f.ring and f.commutative and f.has_unity and not f.op_closed
        assert radical(z8, {0}) == {0, 2, 4, 6}
        quo = quotient(z8, {0, 4})
        assert quo.well_defined
        two = quo.class_of(2)
        assert two in quo.zero_divisors()
        assert quo.representatives[two] == 2 and quo.nilpotency_index(2) is not None
        info["detail"] = "9 facts"


def test_5_thm_l_replay(sweep):
    with criterion(5, "THM-L: radical of every 1-absorbing primary ideal is prime or replayable") as info:
        insts = all_fixtures() + sweep["modular"]
        findings = {f.fingerprint: f for f in run_theorem_suite(insts, ["THM-L"])}
        ideals_seen = prime_ok = flagged = 0
        for inst in {i.fingerprint: i for i in insts}.values():
            finding = findings[inst.fingerprint]
            if finding.status == "HYPOTHESIS-NOT-MET":
                continue
            for Q in enumerate_ideals(inst):
                if not is_one_absorbing_primary(inst, Q):
                    continue
                ideals_seen += 1
                r = radical(inst, Q)
                if _ideal_or_witness(inst, r) and is_prime(inst, r):
                    prime_ok += 1
                else:
                    flagged += 1
                    assert finding.status == COUNTEREXAMPLE
        ce = [f for f in findings.values() if f.status == COUNTEREXAMPLE]
        unreplayable = [f for f in ce if not replay(f)]
        info["detail"] = (f"{ideals_seen} ideals, {prime_ok} prime radicals, {flagged} flagged in "
                          f"{len(ce)} counterexample findings, {len(unreplayable)} unreplayable")
        assert ideals_seen
        assert not unreplayable


def test_6_cli_determinism():
    with criterion(6, "suite reports byte-identical across consecutive runs") as info:
        argv = [sys.executable, "-m", "approxring.cli", "suite", "--family", "modular",
                "--n-points", "8", "--seed", "1", "--samples", "100"]
        outs = []
        for extra in ([], [], ["--machine"], ["--machine"]):
            r = subprocess.run(argv + extra, capture_output=True)
            assert r.returncode == 0, r.stderr
            outs.append(r.stdout)
        info["detail"] = f"human {len(outs[0])} bytes, machine {len(outs[2])} bytes"
        assert outs[0] == outs[1] and outs[2] == outs[3]


# criterion 7


def random_spaces(count=100, seed=7):
    import random

    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, 6)
        arity = rng.randint(1, 2)
        yield DescriptiveSpace(tuple(tuple(rng.randrange(3) for _ in range(arity)) for _ in range(n)))


def corruptions(sp: DescriptiveSpace):
    """Relations built to break one axiom each, keyed by the targeted axiom."""
    derived = sp.relation()
    pts = sp.points
    b = max(pts)
    classes = sp.classes

    def shared(A, B):
        return len({classes[i] for i in A} & {classes[i] for i in B})

    coarse = DescriptiveSpace(tuple((0,) if f == sp.probe[0] else (1,) for f in sp.probe))
    return {
        # the void set is near everything (and everything near the void set)
        "DP.0": ProximityRelation.user(sp, lambda A, B: True),
        # one directed pair dropped
        "DP.1": ProximityRelation.user(sp, lambda A, B: derived(A, B) and not (A == pts and B == {b})),
        # nearness needs two shared feature classes, so it is not additive over unions
        "DP.3": ProximityRelation.user(sp, lambda A, B: shared(A, B) >= 2),
        # a coarser probe's nearness, judged against this probe
        "DP.2": ProximityRelation.user(sp, coarse.near, reference=sp),
    }


CORRUPT_SPACE = DescriptiveSpace(((0,), (1,), (2,), (0,)))


def test_7_dp_checker():
    with criterion(7, "DP checker, adjusted reading (intended axiom plus the entailed DP.2)") as info:
        passed = sum(check_dp_axioms(sp.relation()).all_passed for sp in random_spaces())
        failed = {k: check_dp_axioms(rel).failed for k, rel in corruptions(CORRUPT_SPACE).items()}
        info["detail"] = (f"{passed}/100 derived pass; corruption failures "
                          + ", ".join(f"{k}->{'+'.join(v)}" for k, v in failed.items())
                          + "; DP.2 is an iff with the probe nearness, so any relation other than "
                          "the derived one also fails DP.2 (see literal test below)")
        assert passed == 100
        for target, axioms in failed.items():
            assert target in axioms
            assert set(axioms) <= {target, "DP.2"}
        assert failed["DP.2"] == ("DP.2",)


@pytest.mark.xfail(strict=True, reason=(
    "DP.2 fixes the relation to descriptive nearness, so a relation that breaks DP.0, DP.1 or "
    "DP.3 necessarily breaks DP.2 too; 'fails exactly the intended axiom' cannot hold for them"))
def test_7_literal_exactly_one_axiom():
    with criterion("7-literal", "each corrupted relation fails exactly the intended axiom") as info:
        failed = {k: check_dp_axioms(rel).failed for k, rel in corruptions(CORRUPT_SPACE).items()}
        info["detail"] = "unattainable, see the adjusted reading under criterion 7"
        for target in ("DP.0", "DP.1", "DP.3"):
            assert failed[target] == (target,)


def test_dp2_entails_the_rest():
    """Exhaustively on small spaces: any relation passing DP.2 passes DP.0, DP.1 and DP.3."""
    for n in (1, 2, 3):
        for probe in ((0,) * n, tuple(range(n))):
            sp = DescriptiveSpace(tuple((v,) for v in probe))
            subs = [frozenset(c) for k in range(n + 1) for c in combinations(range(n), k)]
            for A in subs:
                for B in subs:
                    assert sp.near(A, B) == sp.near(B, A)
                    assert not sp.near(A, frozenset())
                    for C in subs:
                        assert sp.near(A, B | C) == (sp.near(A, B) or sp.near(A, C))
