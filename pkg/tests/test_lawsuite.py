import json
import random

import pytest

import oracle as O
from conftest import SPACES, law_report
from progtheory import program as pg
from progtheory.lawsuite import engine
from progtheory.lawsuite.algebra import EQUIVALENCE, EXACT, ObjectAlgebra
from progtheory.lawsuite.engine import (BoundExceeded, LawConfig, check_law, enumerate_programs,
                                        random_program, replay, run_suite)
from progtheory.lawsuite.registry import LAWS, UnknownLaw, get_law, law_ids, theorem_ids

EXPECTED_FAILS = [i for i in law_ids() if LAWS[i].expected == "fails"]
HOLDS = [i for i in law_ids() if LAWS[i].expected == "holds"]


def test_registry_covers_every_numbered_theorem():
    assert set(theorem_ids()) == {f"P{k}" for k in range(6, 81)}
    assert len(set(law_ids())) == len(law_ids())


def test_unknown_law_lists_known_ids():
    with pytest.raises(UnknownLaw, match="unknown law 'P99'; known laws: P6, P7"):
        get_law("P99")


@pytest.mark.parametrize("law_id", EXPECTED_FAILS)
def test_recorded_counterexample_reproduces(law_id):
    law = LAWS[law_id]
    assert law.witness is not None
    ante, cons = replay(law, law.witness.values, part=law.witness.part)
    assert ante and not cons


@pytest.mark.parametrize("law_id", HOLDS)
def test_law_holds_exhaustively_on_two_states(law_id):
    r = law_report(law_id)
    assert r.failures == 0, r.counterexamples[:1]
    assert r.ok and r.verdict == "pass"


@pytest.mark.parametrize("law_id", [i for i in EXPECTED_FAILS
                                    if LAWS[i].witness.source == "enumeration"])
def test_refuted_laws_have_many_failures(law_id):
    r = law_report(law_id)
    assert r.failures > 0 and r.verdict == "fails-as-expected"
    assert r.counterexamples


@pytest.mark.parametrize("law_id", [i for i in HOLDS if LAWS[i].domain != "all"])
def test_restricted_domain_is_needed(law_id):
    r = check_law(law_id, LawConfig(domain="all"))
    assert r.failures > 0


@pytest.mark.parametrize("law_id", [i for i in HOLDS if LAWS[i].equality == EQUIVALENCE])
def test_equivalence_reading_is_needed(law_id):
    r = check_law(law_id, LawConfig(equality=EXACT))
    assert r.failures > 0


def test_p13_counts_every_program_and_excludes_the_infeasible_ones():
    r = law_report("P13")
    infeasible = sum(not O.feasible(p) for p in O.all_programs(2))
    assert (r.cases, r.excluded, r.failures) == (64, infeasible, 0)
    assert infeasible == 15


def test_refinement_pair_count_matches_brute_force():
    progs = list(O.all_programs(2))
    pairs = sum(O.refines(q, p) for p in progs for q in progs)
    assert pairs == 1681 == law_report("P79").cases


@pytest.mark.parametrize("law_id", ["P7", "P9", "P13", "P14-demonic", "P18", "P26", "P37",
                                    "P39", "P57", "P60", "P64", "P73", "P78-strict", "P80"])
def test_object_and_table_backends_agree(law_id):
    law = LAWS[law_id]
    for part in law.parts:
        tables = engine._exhaustive_tables(law_id, part, 2, law.equality, law.domain)
        objects = engine._exhaustive_objects(law_id, part, 2, law.equality, law.domain)
        assert tables[:4] == objects[:4]


def test_object_algebra_agrees_with_oracle_on_a_sample():
    sp = SPACES[3]
    A = ObjectAlgebra(sp)
    rng = random.Random(7)
    for _ in range(200):
        p, q = (random_program(sp, rng) for _ in range(2))
        a, b = O.to_oracle(p), O.to_oracle(q)
        assert O.to_oracle(A.seq(p, q)) == O.seq(a, b)
        assert O.to_oracle(A.par(p, q)) == O.par(a, b)
        assert A.refines(p, q) == O.refines(a, b)


def test_enumeration_counts_and_bound():
    assert len(list(enumerate_programs(SPACES[1]))) == 4
    assert len(list(enumerate_programs(SPACES[2]))) == 64
    progs = list(enumerate_programs(SPACES[3]))
    assert len(progs) == 4096 == len(set(progs))
    with pytest.raises(BoundExceeded, match="use random mode"):
        next(enumerate_programs(SPACES[4]))
    with pytest.raises(BoundExceeded):
        check_law("P11", LawConfig(size=3))


def test_random_programs_are_seeded_and_cover_both_classes():
    sp = SPACES[4]
    assert random_program(sp, 42) == random_program(sp, 42)
    draws = [random_program(sp, s) for s in range(10_000)]
    feasible = sum(pg.is_feasible(p) for p in draws)
    assert 0 < feasible < len(draws)
    assert all(pg.is_feasible(random_program(sp, s, feasible_only=True)) for s in range(200))


def test_random_mode_is_deterministic_and_seed_sensitive():
    a = check_law("P6", LawConfig(4, "random", 300, 1))
    b = check_law("P6", LawConfig(4, "random", 300, 1))
    c = check_law("P6", LawConfig(4, "random", 300, 2))
    assert a.to_dict() == b.to_dict()
    assert (a.cases, a.failures) == (c.cases, c.failures) == (3 * 300, 0)
    assert a.verdict == c.verdict == "pass"


def test_random_mode_finds_refuted_laws():
    r = check_law("P37", LawConfig(4, "random", 500, 0))
    assert r.failures > 0 and r.verdict == "fails-as-expected"


def test_suite_on_a_selection():
    suite = run_suite(["P37", "P38", "P41"], (LawConfig(),))
    assert [r.law_id for r in suite.reports] == ["P37", "P38", "P41"]
    assert suite.ok and not suite.unexpected


def test_reports_are_json_ready_and_timing_is_optional():
    r = law_report("P13")
    d = r.to_dict()
    assert "millis" not in d
    assert json.loads(json.dumps(d)) == d
    assert {"id", "verdict", "cases", "failures", "witnesses"} <= set(d)
    assert "millis" in r.to_dict(timing=True)


def test_counterexamples_print_every_operand():
    r = law_report("P24")
    (ex,) = r.counterexamples[:1]
    assert ex["p"].startswith("<{") and ex["p"].endswith("}>")
