"""Acceptance criteria, one test per criterion.

Each criterion function returns ``(ok, detail)``.  Under pytest the lines
are collected and printed in the terminal summary; run this file directly
to print them without pytest.
"""

from __future__ import annotations

import io
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import oracle as O  # noqa: E402
from progtheory import program as pg  # noqa: E402
from progtheory.cli import main  # noqa: E402
from progtheory.contracts import (ContractedProgram, correct_by_definition,  # noqa: E402
                                  correct_by_formula, sp, wp)
from progtheory.lang import format_file, load, parse  # noqa: E402
from progtheory.lawsuite import generate as gen  # noqa: E402
from progtheory.lawsuite.engine import (LawConfig, check_law, enumerate_programs,  # noqa: E402
                                        in_domain, replay)
from progtheory.lawsuite.registry import LAWS, theorem_ids  # noqa: E402
from progtheory.loops import (LoopSpec, check_loop_correctness,  # noqa: E402
                              check_loop_feasibility, is_loop_invariant, loop_unrolling,
                              while_loop)
from progtheory.sets import Condition, Relation, StateSpace, rel_compose  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
SEEDS = range(5)
RESULTS: list[str] = []


def _number(law_id: str) -> int:
    return int(law_id[1:])


def criterion_1_ids() -> list[str]:
    return [i for i in theorem_ids()
            if (6 <= _number(i) <= 62 or 70 <= _number(i) <= 79) and LAWS[i].arity <= 3]


def criterion_2_ids() -> list[str]:
    return criterion_1_ids() + [f"P{k}" for k in range(63, 70)]


def _failing(reports) -> list[str]:
    return sorted({r.law_id for r in reports if r.failures}, key=_number)


# -- criteria ----------------------------------------------------------------------------

def criterion_1():
    ids = criterion_1_ids()
    start = time.perf_counter()
    reports = [check_law(i, LawConfig(2, "exhaustive")) for i in ids]
    elapsed = time.perf_counter() - start
    bad = _failing(reports)
    cases = sum(r.cases for r in reports)
    ok = not bad and elapsed < 60
    detail = (f"{len(ids)} laws, {cases} cases at |S|=2 in {elapsed:.1f}s; "
              f"laws with failures: {', '.join(bad) or 'none'}")
    return ok, detail


def criterion_2():
    ids = criterion_2_ids()
    bad = set()
    for seed in SEEDS:
        for i in ids:
            r = check_law(i, LawConfig(4, "random", 1000, seed))
            if r.failures:
                bad.add(i)
            assert r.cases >= 1000 * len(LAWS[i].parts)
    bad = sorted(bad, key=_number)
    return not bad, (f"{len(ids)} laws x 1000 samples x {len(SEEDS)} seeds at |S|=4; "
                     f"laws with failures: {', '.join(bad) or 'none'}")


def _reproduces(law_id: str) -> bool:
    law = LAWS[law_id]
    ante, cons = replay(law, law.witness.values, part=law.witness.part)
    return ante and not cons


def criterion_3():
    checks = {}
    s3 = StateSpace.of_size(3)

    def P(space, pairs, pre):
        return pg.make_program(space, [(str(a), str(b)) for a, b in pairs], [str(a) for a in pre])

    def R(space, *pairs):
        return space.relation([(str(a), str(b)) for a, b in pairs])

    # (a) naive composition of postconditions
    p1, p2 = P(s3, [(1, 1), (1, 2)], [1]), P(s3, [(1, 1), (2, 2)], [1])
    checks["a"] = (rel_compose(p1.post, p2.post) == R(s3, (1, 1), (1, 2))
                   and pg.seq(p1, p2).post == R(s3, (1, 1)) and _reproduces("naive-seq"))
    # (b) intersection is not refinement-safe
    s2 = StateSpace.of_size(2)
    p = P(s2, [(0, 0), (0, 1)], [0])
    q1, q2 = P(s2, [(0, 0)], [0]), P(s2, [(0, 1)], [0])
    q = pg.program_intersection(q1, q2)
    checks["b"] = (pg.refines(q1, p) and pg.refines(q2, p) and pg.is_feasible(q1)
                   and pg.is_feasible(q2) and q.post == s2.empty_relation
                   and not (pg.is_feasible(q) and pg.refines(q, pg.program_intersection(p, p)))
                   and _reproduces("P31-intersection"))
    # (c) internal choice breaks left distribution
    q = P(s3, [(0, 1), (0, 2)], [0])
    r1, r2 = P(s3, [(1, 0)], [1]), P(s3, [(2, 0)], [2])
    left = pg.seq(q, pg.internal_choice(r1, r2))
    right = pg.internal_choice(pg.seq(q, r1), pg.seq(q, r2))
    checks["c"] = left.pre == s3.false and left != right and _reproduces("P11-internal")
    # (d) Fail is not a unit of internal choice
    checks["d"] = (pg.internal_choice(pg.skip(s2), pg.fail(s2)) != pg.skip(s2)
                   and _reproduces("P14-demonic"))
    # (e) Havoc commutes with itself, the two constants do not
    c0 = P(s2, [(0, 0), (1, 0)], [0, 1])
    c1 = P(s2, [(0, 1), (1, 1)], [0, 1])
    checks["e"] = (pg.commutes(pg.havoc(s2), pg.havoc(s2)) and not pg.commutes(c0, c1)
                   and _reproduces("commute-refinement"))
    # (f) wp does not distribute over union
    b = P(s3, [(0, 1), (0, 2)], [0])
    checks["f"] = (wp(b, R(s3, (0, 1))) == s3.false and wp(b, R(s3, (0, 2))) == s3.false
                   and wp(b, R(s3, (0, 1), (0, 2))) == s3.condition(["0"])
                   and _reproduces("P78-strict"))
    bad = [k for k, v in checks.items() if not v]
    return not bad, "counterexamples (a)-(f) " + (
        "all reproduce" if not bad else "not reproduced: " + ", ".join(bad))


def _random_loops(count: int):
    for k in range(count):
        rng = random.Random(f"acceptance-loop:{k}")
        n = 1 + k % 4
        space = StateSpace.of_size(n)
        domain = ("all", "feasible", "normal")[k % 3]
        yield LoopSpec(gen.random_program(space, rng, domain), gen.random_condition(rng, space),
                       gen.random_program(space, rng, domain))


def criterion_4():
    notes = []
    s = StateSpace("S", ("s0", "s1", "s2"))
    init = pg.make_program(s, [("s0", "s0")], ["s0"])
    step = pg.make_program(s, [("s0", "s1"), ("s1", "s2")], ["s0", "s1"])
    counting = LoopSpec(init, s.condition(["s2"]), step)
    result = pg.make_program(s, [("s0", "s2")], ["s0"])
    counting_ok = (while_loop(counting) == result
                   and loop_unrolling(counting, 0) == pg.fail(s)
                   and loop_unrolling(counting, 1) == pg.fail(s)
                   and loop_unrolling(counting, 2) == result)
    if not counting_ok:
        notes.append("counting loop")
    stuck = LoopSpec(pg.skip(s), s.false, pg.skip(s))
    v = check_loop_feasibility(stuck)
    if not (while_loop(stuck) == pg.fail(s) and v.witnesses.get("direct") is False):
        notes.append("stuck loop")
    for law_id in ("P63", "P68", "P69"):
        reports = [check_law(law_id, LawConfig(2, "exhaustive"))]
        reports += [check_law(law_id, LawConfig(4, "random", 1000, seed)) for seed in SEEDS]
        if any(r.failures for r in reports):
            notes.append(law_id)
    pairs = loops = 0
    for ls in _random_loops(1000):
        loops += 1
        space = ls.space
        v = check_loop_feasibility(ls)  # raises if sufficient holds without direct
        if v.status == "infeasible-loop" and v.witnesses["sufficient"]:
            notes.append("P69 instance")
            break
        if all(in_domain(p, "normal") for p in (ls.init, ls.body)):
            for bits in range(1 << space.size):
                inv = Condition(space, bits)
                if is_loop_invariant(inv, ls):
                    pairs += 1
                    if not check_loop_correctness(ls, inv).ok:
                        notes.append("P68 instance")
    ok = not notes
    return ok, (f"counting and stuck loops, P63/P68/P69 exhaustive |S|=2 and random |S|=4 "
                f"x {len(SEEDS)} seeds, {loops} seeded loops ({pairs} loop-invariant pairs); "
                + ("all hold" if ok else "failed: " + ", ".join(notes)))


def criterion_5():
    bad = 0
    total = 0
    for n in (2, 3):
        r = check_law("P80", LawConfig(n, "exhaustive"))
        bad += r.failures
        total += r.cases
        for prog in O.all_programs(n):
            kinds_ok = all(O.state_kind(prog, s, n) != "irrelevant" for s in prog[1])
            if O.feasible(prog) != kinds_ok:
                bad += 1
    return bad == 0, f"{total} programs at |S|=2 and |S|=3 (64 + 4096); disagreements: {bad}"


def criterion_6():
    space = StateSpace.of_size(2)
    instances = disagree = infeasible_disagree = 0
    p71_bad = correct = 0
    for body in enumerate_programs(space):
        for cbits in range(4):
            c = Condition(space, cbits)
            for rbits in range(16):
                r = Relation(space, rbits)
                cp = ContractedProgram(c, r, body)
                instances += 1
                by_formula, by_def = correct_by_formula(cp), correct_by_definition(cp)
                if by_formula != by_def:
                    disagree += 1
                    infeasible_disagree += not pg.is_feasible(body)
                if by_def:
                    correct += 1
                    if not (sp(body, c) <= r and c <= wp(body, r)):
                        p71_bad += 1
    ok = disagree == 0 and p71_bad == 0
    return ok, (f"{instances} instances at |S|=2: formula and definition disagree on {disagree} "
                f"({infeasible_disagree} with infeasible bodies); "
                f"P71 violations on {correct} correct instances: {p71_bad}")


EXIT_CODES = {"counting.tp": 0, "infeasible_loop.tp": 1, "bank.tp": 0, "counterexamples.tp": 0}


def criterion_7():
    problems = []
    for path in sorted(CORPUS.glob("*.tp")):
        text = path.read_text()
        tree, diags = parse(text)
        again, diags2 = parse(format_file(tree)) if not diags else (None, diags)
        if diags or diags2 or again != tree:
            problems.append(f"{path.name} round trip")
            continue
        model, d1 = load(text)
        model2, d2 = load(format_file(tree))
        if d1 or d2 or model.snapshot() != model2.snapshot():
            problems.append(f"{path.name} model round trip")
    for name, expected in EXIT_CODES.items():
        code = main(["run", str(CORPUS / name)], io.StringIO(), io.StringIO())
        if code != expected:
            problems.append(f"{name} exit {code}, expected {expected}")
    return not problems, ("corpus round trip and exit codes "
                          + ("as documented" if not problems else "wrong: " + "; ".join(problems)))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7]


def _line(k: int, ok: bool, detail: str) -> str:
    return f"criterion {k}: {'PASS' if ok else 'FAIL'}: {detail}"


def _check(k: int) -> None:
    ok, detail = CRITERIA[k - 1]()
    line = _line(k, ok, detail)
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_1_exhaustive_laws():
    _check(1)


def test_criterion_2_random_laws():
    _check(2)


def test_criterion_3_recorded_counterexamples():
    _check(3)


def test_criterion_4_loop_semantics():
    _check(4)


def test_criterion_5_feasibility_by_state_kinds():
    _check(5)


def test_criterion_6_correctness_formulations():
    _check(6)


def test_criterion_7_parser_corpus():
    _check(7)


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(_line(k, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
