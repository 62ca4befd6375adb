import pytest
from hypothesis import given, strategies as st

import oracle as O
from conftest import SPACES, conditions, normal_programs, programs
from progtheory import program as pg
from progtheory.loops import (LoopSpec, Variant, arbitrary_repetition, check_loop_correctness,
                              check_loop_feasibility, check_variant, fixed_repetition,
                              is_invariant, is_loop_invariant, loop_unrolling,
                              stabilization_index, sufficient_feasibility, variant_violations,
                              while_loop)
from progtheory.sets import ModelError, is_well_founded, rel_restrict

S3 = SPACES[3]


def P(pairs, pre, sp=S3):
    return pg.make_program(sp, [(str(a), str(b)) for a, b in pairs], [str(a) for a in pre])


def C(*atoms, sp=S3):
    return sp.condition([str(a) for a in atoms])


INIT = P([(0, 0)], [0])
STEP = P([(0, 1), (1, 2)], [0, 1])
COUNTING = LoopSpec(INIT, C(2), STEP)


def loop_specs(max_n=4, normal=False):
    make = normal_programs if normal else programs
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(make(n), conditions(n), make(n)).map(lambda t: LoopSpec(*t)))


# -- oracle agreement ----------------------------------------------------------------------

@given(programs(), st.integers(0, 5))
def test_powers_and_star_match_oracle(p, i):
    n = p.space.size
    a = O.to_oracle(p)
    assert O.to_oracle(fixed_repetition(p, i)) == O.power(a, i, n)
    assert O.to_oracle(arbitrary_repetition(p)) == O.star(a, n)


@given(loop_specs())
def test_while_loop_matches_oracle(ls):
    n = ls.space.size
    a, c, b = O.to_oracle(ls.init), O.cond_to_oracle(ls.exit), O.to_oracle(ls.body)
    assert O.to_oracle(while_loop(ls)) == O.while_loop(a, c, b, n)
    for i in range(4):
        assert O.to_oracle(loop_unrolling(ls, i)) == O.unrolling(a, c, b, i, n)


@given(loop_specs(), st.data())
def test_invariants_match_oracle(ls, data):
    n = ls.space.size
    inv = data.draw(conditions(n))
    a, c, b = O.to_oracle(ls.init), O.cond_to_oracle(ls.exit), O.to_oracle(ls.body)
    i = O.cond_to_oracle(inv)
    assert is_invariant(inv, ls.body) == O.invariant(i, b)
    assert is_loop_invariant(inv, ls) == O.loop_invariant(i, a, c, b, n)


# -- the counting loop ------------------------------------------------------------------------

def test_counting_loop_unrolls_to_its_result():
    assert loop_unrolling(COUNTING, 0) == pg.fail(S3)
    assert loop_unrolling(COUNTING, 1) == pg.fail(S3)
    assert loop_unrolling(COUNTING, 2) == P([(0, 2)], [0])
    assert while_loop(COUNTING) == P([(0, 2)], [0])


def test_counting_loop_invariants_variant_and_feasibility():
    assert is_loop_invariant(C(0, 1, 2), COUNTING)
    assert not is_loop_invariant(C(0), COUNTING)
    assert check_loop_correctness(COUNTING, C(0, 1, 2)).ok
    v = check_loop_correctness(COUNTING, C(0))
    assert not v.ok and v.status == "not-a-loop-invariant" and v.witnesses["escaping"] == ["1"]
    feas = check_loop_feasibility(COUNTING)
    assert feas.ok and feas.witnesses == {"direct": True, "sufficient": True}
    assert check_variant(Variant({"0": 2, "1": 1, "2": 0}), COUNTING)
    assert not check_variant(Variant({"0": 1, "1": 1, "2": 1}), COUNTING)
    assert variant_violations(Variant({"0": 1, "1": 1, "2": 1}), COUNTING) == [("0", "1"),
                                                                                ("1", "2")]
    with pytest.raises(ModelError, match="undefined on atom '2'"):
        check_variant(Variant({"0": 2, "1": 1}), COUNTING)


def test_repetition_examples():
    assert fixed_repetition(STEP, 2) == P([(0, 2)], [0])
    assert fixed_repetition(pg.fail(S3), 2) == pg.fail(S3)
    assert arbitrary_repetition(pg.skip(S3)) == pg.skip(S3)
    assert arbitrary_repetition(pg.fail(S3)) == pg.skip(S3)
    ident = [(0, 0), (1, 1), (2, 2)]
    assert arbitrary_repetition(STEP) == P(ident + [(0, 1), (1, 2), (0, 2)], [0, 1, 2])
    with pytest.raises(ModelError):
        fixed_repetition(STEP, -1)


@given(programs())
def test_first_power_is_the_program_up_to_equivalence(p):
    assert pg.equivalent(fixed_repetition(p, 1), p) or not pg.is_feasible(p)


def test_stuck_loop():
    skip = pg.skip(S3)
    stuck = LoopSpec(skip, S3.false, skip)
    assert while_loop(stuck) == pg.fail(S3)
    v = check_loop_feasibility(stuck)
    assert not v.ok and v.witnesses["direct"] is False and v.witnesses["stuck"] == ["0", "1", "2"]
    # partial correctness only: nothing comes out, so any invariant is satisfied
    assert check_loop_correctness(stuck, S3.true).ok
    assert while_loop(LoopSpec(skip, S3.true, STEP)) == skip


def test_self_loop_defeats_the_sufficient_condition():
    ls = LoopSpec(pg.skip(S3), C(2), P([(0, 0), (1, 2)], [0, 1]))
    assert not sufficient_feasibility(ls)
    assert not check_loop_feasibility(ls).ok


def test_infeasible_operands_are_reported():
    ls = LoopSpec(P([], [0]), C(2), STEP)
    v = check_loop_feasibility(ls)
    assert v.status == "operands-infeasible" and v.witnesses["operands"] == ["init"]


def test_zero_variant_is_vacuous_without_guarded_steps():
    ls = LoopSpec(pg.skip(S3), C(0, 1), P([(0, 1), (1, 2)], [0, 1]))
    assert check_variant(Variant({"0": 0, "1": 0, "2": 0}), ls)


# -- properties --------------------------------------------------------------------------------

@given(loop_specs(normal=True))
def test_loop_is_the_union_of_its_unrollings(ls):
    k = stabilization_index(ls)
    union = pg.fail(ls.space)
    for i in range(k + 1):
        q = loop_unrolling(ls, i)
        assert q.range <= ls.exit
        union = pg.choice(union, q)
    loop = while_loop(ls)
    assert union == loop
    assert loop.range == union.range


@given(loop_specs(normal=True), st.data())
def test_loop_invariant_bounds_the_result(ls, data):
    inv = data.draw(conditions(ls.space.size))
    if is_loop_invariant(inv, ls):
        assert check_loop_correctness(ls, inv).ok
        assert while_loop(ls).range <= ls.exit & inv


@given(loop_specs())
def test_sufficient_condition_implies_loop_feasibility(ls):
    if pg.is_feasible(ls.init) and pg.is_feasible(ls.body):
        v = check_loop_feasibility(ls)
        if v.witnesses["sufficient"]:
            assert v.witnesses["direct"]


@given(loop_specs())
def test_variant_from_well_founded_guarded_body(ls):
    guarded = rel_restrict(ls.body.post, ~ls.exit)
    if not is_well_founded(guarded):
        return
    # longest remaining chain length is a variant
    sp = ls.space
    height = {}

    def h(a):
        if a not in height:
            nxt = [t for s, t in guarded.pairs if s == a]
            height[a] = 1 + max((h(t) for t in nxt), default=-1)
        return height[a]

    assert check_variant(Variant({a: h(a) for a in sp.atoms}), ls)

