"""The law registry: every checked property with its reading and expectations.

Each law is a checker written once against the :mod:`.algebra` interface.
A checker returns either a consequent or an ``(antecedent, consequent)``
pair; cases with a false antecedent are counted as vacuous.

Readings.  ``equality`` is ``exact-pair`` (identical post and Pre) or
``equivalence`` (identical Pre, posts agreeing on it).  ``domain`` limits
the programs drawn for every program slot: ``all``, ``feasible``, or
``normal`` (feasible with ``dom(post) = Pre``).  A law is registered at the
strongest reading under which it holds; the ``note`` says what fails under
the weaker ones and tests replay that claim.  Laws that fail under every
reading are registered with ``expected="fails"`` and a recorded
counterexample.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable

from .. import program as pg
from ..sets import StateSpace
from . import generate as gen
from .algebra import EQUIVALENCE, EXACT

PROGRAM, CONDITION, RELATION, REFINEMENT = "program", "condition", "relation", "refinement"


@dataclass(frozen=True)
class Slot:
    """One quantified variable of a law.

    A refinement slot binds a pair ``(q, p)`` with ``q ⊆ p``; its name is
    ``"q<=p"``.  ``hint`` is an optional random-mode generator
    ``hint(rng, space, env, domain)`` that sees the values drawn so far.
    """

    name: str
    kind: str
    domain: str | None = None
    hint: Callable | None = None

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.name.split("<=")) if self.kind == REFINEMENT else (self.name,)


@dataclass(frozen=True)
class Part:
    """One conjunct of a law, with its own variables.

    Laws stating several facts (one per operator, or commutativity next to
    associativity) are split so that each fact is enumerated over only the
    variables it mentions and a failure names the fact that broke.
    """

    name: str
    slots: tuple[Slot, ...]
    check: Callable[..., Any]


@dataclass(frozen=True)
class Witness:
    size: int
    values: tuple
    source: str  # "published", "derived" (by hand) or "enumeration"
    part: str = ""


@dataclass(frozen=True)
class Law:
    id: str
    title: str
    parts: tuple[Part, ...]
    equality: str = EXACT
    domain: str = "all"
    expected: str = "holds"
    witness: Witness | None = None
    interpreted: bool = False
    note: str = ""

    def part(self, name: str) -> Part:
        for p in self.parts:
            if p.name == name:
                return p
        raise KeyError(f"{self.id} has no part {name!r}")

    @property
    def arity(self) -> int:
        """Number of distinct quantified variables across all parts."""
        return len({n for p in self.parts for s in p.slots for n in s.names})

    @property
    def program_arity(self) -> int:
        return len({n for p in self.parts for s in p.slots if s.kind in (PROGRAM, REFINEMENT)
                    for n in s.names})


LAWS: dict[str, Law] = {}


def _add(law_: Law) -> None:
    if law_.id in LAWS:
        raise ValueError(f"duplicate law id {law_.id}")
    LAWS[law_.id] = law_


def law(id: str, title: str, slots: list[Slot], **kw):
    def register(fn):
        _add(Law(id, title, (Part("", tuple(slots), fn),), **kw))
        return fn
    return register


def compound(id: str, title: str, parts: list[Part], **kw) -> None:
    _add(Law(id, title, tuple(parts), **kw))


def P(name, **kw):
    return Slot(name, PROGRAM, **kw)


def C(name, **kw):
    return Slot(name, CONDITION, **kw)


def R(name, **kw):
    return Slot(name, RELATION, **kw)


def Ref(q, p, **kw):
    return Slot(f"{q}<={p}", REFINEMENT, **kw)


_LIVE = ("a choice widens the precondition and makes post pairs from outside the old "
         "precondition live; holds when dom(post) = Pre")


# -- witness builders (atoms are the naturals 0..n-1) -----------------------

def _sp(n):
    return StateSpace.of_size(n)


def _prog(n, pairs, pre):
    return pg.make_program(_sp(n), [(str(a), str(b)) for a, b in pairs], [str(a) for a in pre])


def _cond(n, atoms):
    return _sp(n).condition(str(a) for a in atoms)


def _rel(n, pairs):
    return _sp(n).relation((str(a), str(b)) for a, b in pairs)


SKIP2 = _prog(2, [(0, 0), (1, 1)], [0, 1])
HAVOC2 = _prog(2, [(0, 0), (0, 1), (1, 0), (1, 1)], [0, 1])
FAIL2 = _prog(2, [], [])


# -- random-mode hints -------------------------------------------------------

def _superset_of(cond_of):
    def hint(rng, space, env, domain):
        return cond_of(env) | gen.random_condition(rng, space)
    return hint


def _subset_of(cond_of):
    def hint(rng, space, env, domain):
        return cond_of(env) & gen.random_condition(rng, space)
    return hint


def _loop_invariant_hint(rng, space, env, domain):
    a, c, b = env["a"], env["C"], env["b"]
    start = a.range | gen.random_condition(rng, space)
    return gen.reachable_closure(pg.restrict(~c, b), start)


def _body_hint(rng, space, env, domain):
    return gen.well_founded_body(rng, space, env["C"], domain if domain != "all" else "feasible")


def _commuting_hint(rng, space, env, domain):
    return gen.commuting_partner(rng, env["p1"], domain)


def _correct_pre_hint(rng, space, env, domain):
    # a subset of Pre_b keeps correctness reachable
    return env["b"].pre & gen.random_condition(rng, space)


def _correct_post_hint(rng, space, env, domain):
    from ..contracts import sp
    return sp(env["b"], env["C"]) | gen.random_relation(rng, space)


# -- part builders -------------------------------------------------------------

def _safe(name, op, with_condition=False):
    """Refinement safety of a binary operator ``op(A, x, y[, c])``."""
    slots = [Ref("q1", "p1"), Ref("q2", "p2")] + ([C("C")] if with_condition else [])

    def check(A, r1, r2, *c):
        return A.refines(op(A, r1[0], r2[0], *c), op(A, r1[1], r2[1], *c))
    return Part(name, tuple(slots), check)


def _safe1(name, op, with_condition=False):
    """Refinement safety of a unary operator ``op(A, x[, c])``."""
    slots = [Ref("q", "p")] + ([C("C")] if with_condition else [])

    def check(A, r, *c):
        return A.refines(op(A, r[0], *c), op(A, r[1], *c))
    return Part(name, tuple(slots), check)


def _keeps_invariant(name, op, binary=True, with_condition=False):
    """``I`` invariant of every operand implies ``I`` invariant of ``op``."""
    slots = [P("p")] + ([P("q")] if binary else [])
    slots += ([C("C")] if with_condition else []) + [C("I")]

    def check(A, *args):
        *operands, i = args
        progs = operands[:2] if binary else operands[:1]
        ante = A.and_(*[A.invariant(i, x) for x in progs])
        return ante, A.invariant(i, op(A, *operands))
    return Part(name, tuple(slots), check)


# -- choice, composition and restriction -------------------------------------

def _feasible_result(name, op, with_condition=False):
    slots = (P("p"), P("q")) + ((C("C"),) if with_condition else ())

    def check(A, p, q, *c):
        return A.feasible(p) & A.feasible(q), A.feasible(op(A, p, q, *c))
    return Part(name, slots, check)


compound("P6", "choice, composition and restriction preserve feasibility", [
    _feasible_result("choice", lambda A, p, q: A.choice(p, q)),
    _feasible_result("composition", lambda A, p, q: A.seq(p, q)),
    _feasible_result("restriction", lambda A, p, q, c: A.restrict(c, p), with_condition=True),
])


@law("P7", "restriction commutes with restriction", [P("p"), C("C1"), C("C2")])
def _p7(A, p, c1, c2):
    return A.eq(A.restrict(c1, A.restrict(c2, p)), A.restrict(c2, A.restrict(c1, p)))


@law("P8", "nested restriction is restriction by the intersection", [P("p"), C("C1"), C("C2")])
def _p8(A, p, c1, c2):
    return A.eq(A.restrict(c1, A.restrict(c2, p)), A.restrict(A.cand(c1, c2), p))


@law("P9", "restriction distributes over choice", [P("p1"), P("p2"), C("C")])
def _p9(A, p1, p2, c):
    return A.eq(A.restrict(c, A.choice(p1, p2)), A.choice(A.restrict(c, p1), A.restrict(c, p2)))


@law("P10", "composition absorbs restriction", [P("p1"), P("p2"), C("C")])
def _p10(A, p1, p2, c):
    return A.eq(A.restrict(c, A.seq(p1, p2)), A.seq(A.restrict(c, p1), p2))


@law("P11", "composition distributes over choice on the left", [P("q"), P("p1"), P("p2")],
     domain="normal", note=_LIVE)
def _p11(A, q, p1, p2):
    return A.eq(A.seq(q, A.choice(p1, p2)), A.choice(A.seq(q, p1), A.seq(q, p2)))


@law("P12", "composition distributes over choice on the right", [P("p1"), P("p2"), P("q")],
     domain="normal", note=_LIVE)
def _p12(A, p1, p2, q):
    return A.eq(A.seq(A.choice(p1, p2), q), A.choice(A.seq(p1, q), A.seq(p2, q)))


@law("P13", "Skip is the unit of composition", [P("p")],
     domain="feasible", equality=EQUIVALENCE,
     note="for infeasible p, p ; Skip drops the states of Pre_p without results; Skip ; p "
          "drops the post pairs outside Pre_p, so only equivalence holds")
def _p13(A, p):
    return A.eq(A.seq(p, A.skip), p) & A.eq(A.seq(A.skip, p), p)


@law("P14", "Fail is the unit of choice", [P("p")])
def _p14(A, p):
    return A.eq(A.choice(p, A.fail), p) & A.eq(A.choice(A.fail, p), p)


@law("P15", "Fail is a zero of composition", [P("p")])
def _p15(A, p):
    return A.eq(A.seq(A.fail, p), A.fail) & A.eq(A.seq(p, A.fail), A.fail)


@law("P16", "Havoc is a zero of choice", [P("p")])
def _p16(A, p):
    return A.eq(A.choice(p, A.havoc), A.havoc) & A.eq(A.choice(A.havoc, p), A.havoc)


@law("P17", "composing with Havoc keeps only the precondition", [P("p")],
     domain="feasible", equality=EQUIVALENCE,
     note="for infeasible p, p ; Havoc drops the states of Pre_p without results; the two "
          "sides differ outside Pre_p, so only equivalence holds")
def _p17(A, p):
    return A.eq(A.seq(p, A.havoc), A.restrict(A.pre(p), A.havoc))


@law("P18", "a program refines each of its restrictions", [P("p"), C("C")])
def _p18(A, p, c):
    return A.refines(p, A.restrict(c, p))


@law("P19", "restriction to a larger condition refines", [P("p"), C("C"), C("D")])
def _p19(A, p, c, d):
    return A.csub(d, c), A.refines(A.restrict(c, p), A.restrict(d, p))


@law("P20", "restriction is refinement-safe", [Ref("q", "p"), C("C")])
def _p20(A, qp, c):
    q, p = qp
    return A.refines(A.restrict(c, q), A.restrict(c, p))


compound("P21", "choice and composition are refinement-safe", [
    _safe("choice", lambda A, x, y: A.choice(x, y)),
    _safe("composition", lambda A, x, y: A.seq(x, y)),
],
    expected="fails",
    witness=Witness(2, ((_prog(2, [(0, 0)], [0]), FAIL2),
                        (_prog(2, [(0, 1)], [0]), _prog(2, [(0, 1)], [0]))),
                    "enumeration", part="choice"),
    note="fails under every reading: q1 may add arbitrary results on states that only p2 accepts")


@law("P22", "every program refines Havoc restricted to its precondition", [P("p")])
def _p22(A, p):
    return A.refines(p, A.restrict(A.pre(p), A.havoc))


@law("P23", "every total program refines Havoc", [P("p")])
def _p23(A, p):
    return A.ceq(A.pre(p), A.true), A.refines(p, A.havoc)


@law("P24", "only Fail refines Fail", [P("p")],
     expected="fails", witness=Witness(2, (_prog(2, [(0, 0)], [0]),), 'enumeration'),
     note="fails under every reading: Fail has an empty precondition, so every program refines it")
def _p24(A, p):
    return A.iff(A.refines(p, A.fail), A.eq(p, A.fail))


@law("P25", "Fail refines only Fail", [P("p")],
     equality=EQUIVALENCE,
     note="a program with empty precondition is refined by Fail and is equivalent to, not "
          "identical with, Fail")
def _p25(A, p):
    return A.iff(A.refines(A.fail, p), A.eq(p, A.fail))


# -- corestriction -----------------------------------------------------------

@law("P26", "corestriction is composition with a guarded Skip", [P("p"), C("C")])
def _p26(A, p, c):
    return A.eq(A.corestrict(p, c), A.seq(p, A.restrict(c, A.skip)))


@law("P27", "corestriction distributes over choice", [P("p1"), P("p2"), C("C")],
     domain="normal", note=_LIVE)
def _p27(A, p1, p2, c):
    return A.eq(A.corestrict(A.choice(p1, p2), c),
                A.choice(A.corestrict(p1, c), A.corestrict(p2, c)))


@law("P28", "corestriction of a composition applies to its second part", [P("p1"), P("p2"), C("C")])
def _p28(A, p1, p2, c):
    return A.eq(A.corestrict(A.seq(p1, p2), c), A.seq(p1, A.corestrict(p2, c)))


@law("P29", "results of a corestriction lie in the condition", [P("p"), C("C")],
     interpreted=True, note="read as range(p \\ C) ⊆ C")
def _p29(A, p, c):
    return A.csub(A.rng(A.corestrict(p, c)), c)


@law("P30", "corestriction to a smaller condition refines", [P("p"), C("C"), C("D")],
     expected="fails",
     witness=Witness(2, (_prog(2, [(0, 0)], [0]), _cond(2, [0]), _cond(2, [])),
                     "enumeration"),
     note="fails under every reading: a smaller target shrinks the precondition, and refinement "
          "cannot shrink it")
def _p30(A, p, c, d):
    return A.csub(d, c), A.refines(A.corestrict(p, d), A.corestrict(p, c))


compound("P31", "every program operator is refinement-safe", [
    _safe("choice", lambda A, x, y: A.choice(x, y)),
    _safe("composition", lambda A, x, y: A.seq(x, y)),
    _safe("concurrency", lambda A, x, y: A.par(x, y)),
    # third operand tied to the first pair to keep the enumeration finite
    _safe("non-atomic", lambda A, x, y: A.nonatomic(x, y, x)),
    _safe1("restriction", lambda A, x, c: A.restrict(c, x), with_condition=True),
    _safe1("corestriction", lambda A, x, c: A.corestrict(x, c), with_condition=True),
    _safe("if-then-else", lambda A, x, y, c: A.ite(c, x, y), with_condition=True),
    _safe("guarded", lambda A, x, y, c: A.gc((c, x), (A.cnot(c), y)), with_condition=True),
    _safe1("power", lambda A, x: A.power(x, 2)),
    _safe1("repetition", lambda A, x: A.star(x)),
    _safe("while", lambda A, x, y, c: A.loop(x, c, y), with_condition=True),
],
    expected="fails",
    witness=Witness(2, ((_prog(2, [(0, 0)], [0]), FAIL2),
                        (_prog(2, [(0, 1)], [0]), _prog(2, [(0, 1)], [0]))),
                    "enumeration", part="choice"),
    note="fails under every reading: choice, composition, concurrency, corestriction and the "
         "repetitions fail; restriction and both conditionals hold")


# -- atomic concurrency and commuting ----------------------------------------

def _p32_comm(A, p1, p2):
    return A.eq(A.par(p1, p2), A.par(p2, p1))


def _p32_assoc(A, p1, p2, p3):
    return A.eq(A.par(A.par(p1, p2), p3), A.par(p1, A.par(p2, p3)))


compound("P32", "concurrency is commutative, associative and refinement-safe", [
    Part("commutative", (P("p1"), P("p2")), _p32_comm),
    Part("associative", (P("p1"), P("p2"), P("p3")), _p32_assoc),
    _safe("refinement-safe", lambda A, x, y: A.par(x, y)),
],
    expected="fails",
    witness=Witness(2, (_prog(2, [(0, 0)], [0]), _prog(2, [(0, 1)], [0]), _prog(2, [(1, 0)], [1])),
                    "enumeration", part="associative"),
    note="fails under every reading: commutativity holds; the two groupings of three programs "
         "allow different orders, and refinement safety fails as for choice")


@law("P33", "concurrency distributes over choice on the left", [P("p1"), P("p2"), P("p3")],
     domain="normal", note=_LIVE)
def _p33(A, p1, p2, p3):
    return A.eq(A.par(p1, A.choice(p2, p3)), A.choice(A.par(p1, p2), A.par(p1, p3)))


@law("P34", "concurrency distributes over choice on the right", [P("p1"), P("p2"), P("p3")],
     domain="normal", note=_LIVE)
def _p34(A, p1, p2, p3):
    return A.eq(A.par(A.choice(p1, p2), p3), A.choice(A.par(p1, p3), A.par(p2, p3)))


@law("P35", "restriction distributes over concurrency", [P("p1"), P("p2"), C("C")],
     expected="fails",
     witness=Witness(2, (_prog(2, [(0, 0)], [0]), _prog(2, [(1, 0)], [1]), _cond(2, [1])),
                     "enumeration"),
     note="fails under every reading: restricting the second operand also restricts the states it "
          "is applied to after the first")
def _p35(A, p1, p2, c):
    return A.eq(A.restrict(c, A.par(p1, p2)), A.par(A.restrict(c, p1), A.restrict(c, p2)))


@law("P36", "corestriction distributes over concurrency", [P("p1"), P("p2"), C("C")],
     expected="fails",
     witness=Witness(2, (_prog(2, [(0, 0)], [0]), _prog(2, [(0, 1)], [0]), _cond(2, [1])),
                     "enumeration"),
     note="fails under every reading: corestricting the first operand also corestricts the "
          "intermediate states")
def _p36(A, p1, p2, c):
    return A.eq(A.corestrict(A.par(p1, p2), c), A.par(A.corestrict(p1, c), A.corestrict(p2, c)))


@law("P37", "composition refines concurrency", [P("p1"), P("p2")],
     expected="fails",
     witness=Witness(2, (_prog(2, [(0, 0)], [0]), _prog(2, [(1, 0)], [1])),
                     "enumeration"),
     note="fails under every reading: the reverse order can accept more initial states than the "
          "composition")
def _p37(A, p1, p2):
    return A.refines(A.seq(p1, p2), A.par(p1, p2))


@law("P38", "reverse composition refines concurrency", [P("p1"), P("p2")],
     expected="fails",
     witness=Witness(2, (_prog(2, [(0, 0)], [0]), _prog(2, [(0, 1)], [0])),
                     "enumeration"),
     note="fails under every reading: the composition order can accept more initial states than "
          "the reverse order")
def _p38(A, p1, p2):
    return A.refines(A.seq(p2, p1), A.par(p1, p2))


@law("P39", "concurrency of commuting programs is composition",
     [P("p1"), P("p2", hint=_commuting_hint)])
def _p39(A, p1, p2):
    return A.commutes(p1, p2), A.eq(A.par(p1, p2), A.seq(p1, p2))


# -- non-atomic concurrency --------------------------------------------------

@law("P40", "non-atomic concurrency inserts q at any of three points", [P("p1"), P("p2"), P("q")],
     domain="normal", note=_LIVE)
def _p40(A, p1, p2, q):
    rhs = A.choice(A.choice(A.seq(A.seq(q, p1), p2), A.seq(A.seq(p1, q), p2)),
                   A.seq(A.seq(p1, p2), q))
    return A.eq(A.nonatomic(p1, p2, q), rhs)


@law("P41", "coarser-grained concurrency refines finer-grained", [P("p1"), P("p2"), P("q")],
     expected="fails",
     witness=Witness(2, (_prog(2, [(0, 0)], [0]), _prog(2, [(1, 0)], [1]), _prog(2, [(0, 1)], [0])),
                     "enumeration"),
     note="fails under every reading: the finer interleavings can accept more initial states")
def _p41(A, p1, p2, q):
    return A.refines(A.par(A.seq(p1, p2), q), A.nonatomic(p1, p2, q))


@law("P42", "first law of exchange", [P("p1"), P("p2"), P("q")],
     expected="fails",
     witness=Witness(2, (_prog(2, [(0, 0)], [0]), _prog(2, [(0, 0)], [0]), _prog(2, [(1, 0)], [1])),
                     "enumeration"),
     note="fails under every reading: the other interleavings can accept more initial states")
def _p42(A, p1, p2, q):
    return A.refines(A.seq(p1, A.par(p2, q)), A.nonatomic(p1, p2, q))


@law("P43", "second law of exchange", [P("p"), P("q1"), P("q2")],
     expected="fails",
     witness=Witness(2, (_prog(2, [(0, 0)], [0]), _prog(2, [(1, 1)], [1]), _prog(2, [(1, 0)], [1])),
                     "enumeration"),
     note="fails under every reading: the other interleavings can accept more initial states")
def _p43(A, p, q1, q2):
    return A.refines(A.seq(A.par(p, q1), q2), A.nonatomic(q1, q2, p))


# -- conditionals ------------------------------------------------------------

@law("P44", "the guarded conditional is commutative", [P("p1"), P("p2"), C("C1"), C("C2")])
def _p44(A, p1, p2, c1, c2):
    return A.eq(A.gc((c1, p1), (c2, p2)), A.gc((c2, p2), (c1, p1)))


@law("P45", "both conditionals are associative",
     [P("p1"), P("p2"), P("p3"), C("C1"), C("C2"), C("C3")], interpreted=True,
     note="guarded: grouping of three branches as nested choices; if-then-else: "
          "if C1 then p1 else (if C2 then p2 else p3) = "
          "if C1 or C2 then (if C1 then p1 else p2) else p3")
def _p45(A, p1, p2, p3, c1, c2, c3):
    b1, b2, b3 = (c1, p1), (c2, p2), (c3, p3)
    flat = A.gc(b1, b2, b3)
    guarded = (A.eq(A.choice(A.gc(b1, b2), A.gc(b3)), flat)
               & A.eq(A.choice(A.gc(b1), A.gc(b2, b3)), flat))
    ite = A.eq(A.ite(c1, p1, A.ite(c2, p2, p3)), A.ite(A.cor(c1, c2), A.ite(c1, p1, p2), p3))
    return guarded & ite


def _p46_ite_first(A, p, q, r, c):
    return A.eq(A.ite(c, A.choice(p, q), r), A.choice(A.ite(c, p, r), A.ite(c, q, r)))


def _p46_ite_second(A, p, q, r, c):
    return A.eq(A.ite(c, r, A.choice(p, q)), A.choice(A.ite(c, r, p), A.ite(c, r, q)))


def _p46_gc_choice(A, p, q, r, c, d):
    split = A.choice(A.gc((c, p), (d, r)), A.gc((c, q), (d, r)))
    return A.eq(A.gc((c, A.choice(p, q)), (d, r)), split)


def _p46_ite_par(A, p, q, r, c):
    return A.eq(A.par(A.ite(c, p, q), r),
                A.choice(A.par(A.restrict(c, p), r), A.par(A.restrict(A.cnot(c), q), r)))


def _p46_gc_par(A, p, q, r, c, d):
    return A.eq(A.par(A.gc((c, p), (d, q)), r),
                A.choice(A.par(A.restrict(c, p), r), A.par(A.restrict(d, q), r)))


_PQRC = (P("p"), P("q"), P("r"), C("C"))

compound("P46", "both conditionals distribute over choice and concurrency", [
    Part("if-then-else/choice-first", _PQRC, _p46_ite_first),
    Part("if-then-else/choice-second", _PQRC, _p46_ite_second),
    Part("guarded/choice", _PQRC + (C("D"),), _p46_gc_choice),
    Part("if-then-else/concurrency", _PQRC, _p46_ite_par),
    Part("guarded/concurrency", _PQRC + (C("D"),), _p46_gc_par),
], interpreted=True,
    note="branch-wise distribution: a choice inside a branch splits the conditional; "
         "a conditional run concurrently with r is the choice of its restricted branches "
         "run concurrently with r",
    domain="normal")


@law("P47", "weaker guards give a refined guarded conditional",
     [P("p"), P("q"), C("D1"), C("D2"), C("C1"), C("C2")],
     expected="fails",
     witness=Witness(2, (FAIL2, _prog(2, [(0, 0)], [0]), _cond(2, []), _cond(2, []), _cond(2, []),
                         _cond(2, [0])),
                     "enumeration"),
     note="fails under every reading: smaller guards shrink the precondition, and refinement "
          "cannot shrink it")
def _p47(A, p, q, d1, d2, c1, c2):
    return (A.csub(d1, c1) & A.csub(d2, c2),
            A.refines(A.gc((d1, p), (d2, q)), A.gc((c1, p), (c2, q))))


@law("P48", "the guarded conditional is refinement-safe",
     [Ref("q1", "p1"), Ref("q2", "p2"), C("C")],
     expected="fails",
     witness=Witness(2, ((_prog(2, [(0, 0)], [0]), FAIL2),
                         (_prog(2, [(0, 1)], [0]), _prog(2, [(0, 1)], [0])), _cond(2, [0])),
                     "enumeration"),
     note="fails under every reading: overlapping guards behave like choice, which is not "
          "refinement-safe")
def _p48(A, r1, r2, c):
    (q1, p1), (q2, p2) = r1, r2
    return A.refines(A.gc((c, q1), (c, q2)), A.gc((c, p1), (c, p2)))


@law("P49", "if-then-else is refinement-safe", [Ref("q1", "p1"), Ref("q2", "p2"), C("C")])
def _p49(A, r1, r2, c):
    (q1, p1), (q2, p2) = r1, r2
    return A.refines(A.ite(c, q1, q2), A.ite(c, p1, p2))


@law("P50", "if-then-else with the complement swaps branches", [P("p1"), P("p2"), C("C")])
def _p50(A, p1, p2, c):
    return A.eq(A.ite(c, p1, p2), A.ite(A.cnot(c), p2, p1))


@law("P51", "a one-branch guarded conditional is a restriction", [P("p"), C("C")])
def _p51(A, p, c):
    return A.eq(A.restrict(c, p), A.gc((c, p)))


@law("P52", "a guarded conditional refines each guarded branch",
     [P("p1"), P("p2"), C("C1"), C("C2")],
     expected="fails",
     witness=Witness(2, (_prog(2, [(0, 0)], [0]), _prog(2, [(0, 1)], [0]), _cond(2, [0]),
                         _cond(2, [0])),
                     "enumeration"),
     note="fails under every reading: the other branch adds results on states where both guards "
          "hold")
def _p52(A, p1, p2, c1, c2):
    return A.refines(A.gc((c1, p1), (c2, p2)), A.restrict(c1, p1))


@law("P53", "restriction distributes into guards", [P("p"), P("q"), C("D"), C("C1"), C("C2")])
def _p53(A, p, q, d, c1, c2):
    return A.eq(A.restrict(d, A.gc((c1, p), (c2, q))), A.gc((A.cand(d, c1), p), (A.cand(d, c2), q)))


@law("P54", "if-then-else is a guarded conditional on C and its complement",
     [P("p1"), P("p2"), C("C")])
def _p54(A, p1, p2, c):
    return A.eq(A.ite(c, p1, p2), A.gc((c, p1), (A.cnot(c), p2)))


@law("P55", "if-then-else with not C swaps branches", [P("p1"), P("p2"), C("C")],
     note="same statement as P50, written with not for the complement")
def _p55(A, p1, p2, c):
    return A.eq(A.ite(c, p1, p2), A.ite(A.cnot(c), p2, p1))


# -- conditions as programs --------------------------------------------------

@law("P56", "restriction by True is the identity", [P("p")])
def _p56(A, p):
    return A.eq(A.restrict(A.true, p), p)


@law("P57", "restriction by False is Fail", [P("p")])
def _p57(A, p):
    return A.eq(A.restrict(A.false, p), A.fail)


@law("P58", "corestriction to True is the identity", [P("p")],
     domain="feasible",
     note="fails for infeasible programs: p \\ True drops states of Pre_p without results")
def _p58(A, p):
    return A.eq(A.corestrict(p, A.true), p)


@law("P59", "corestriction to False is Fail", [P("p")])
def _p59(A, p):
    return A.eq(A.corestrict(p, A.false), A.fail)


@law("P60", "if True selects the first branch", [P("p1"), P("p2")])
def _p60(A, p1, p2):
    return A.eq(A.ite(A.true, p1, p2), p1)


@law("P61", "if False selects the second branch", [P("p1"), P("p2")],
     note="also checked for the guarded form if True: p1 [] False: p2 end = p1")
def _p61(A, p1, p2):
    return A.eq(A.ite(A.false, p1, p2), p2) & A.eq(A.gc((A.true, p1), (A.false, p2)), p1)


def _p62_and(A, p, c, d):
    return A.eq(A.restrict(A.cand(c, d), p), A.restrict(c, A.restrict(d, p)))


def _p62_or(A, p, c, d):
    return A.eq(A.restrict(A.cor(c, d), p), A.choice(A.restrict(c, p), A.restrict(d, p)))


def _p62_not(A, p, q, c):
    return A.eq(A.ite(A.cnot(c), p, q), A.ite(c, q, p))


def _p62_implies(A, p, c, d):
    return A.csub(c, d), A.eq(A.restrict(c, A.restrict(d, p)), A.restrict(c, p))


compound("P62", "condition connectives distribute over choice, restriction and conditionals", [
    Part("and", (P("p"), C("C"), C("D")), _p62_and),
    Part("or", (P("p"), C("C"), C("D")), _p62_or),
    Part("not", (P("p"), P("q"), C("C")), _p62_not),
    Part("implies", (P("p"), C("C"), C("D")), _p62_implies),
], interpreted=True,
    note="and: (C and D):p = C:(D:p); or: (C or D):p = C:p | D:p; "
         "not: if not C then p else q = if C then q else p; "
         "implies: when C implies D, C:(D:p) = C:p")


# -- loops, invariants and variants ------------------------------------------

@law("P63", "a loop is the union of its unrollings", [P("a"), C("C"), P("b")],
     domain="normal", note=_LIVE)
def _p63(A, a, c, b):
    qs = A.unrollings(a, c, b)
    l = A.loop(a, c, b)
    ranges = A.rng(qs[0])
    for q in qs[1:]:
        ranges = A.cor(ranges, A.rng(q))
    return A.eq(l, A.unrolled_union(a, c, b)) & A.ceq(A.rng(l), ranges)


@law("P64", "a condition disjoint from the precondition is an invariant", [P("p"), C("I")])
def _p64(A, p, i):
    return A.cdisjoint(i, A.pre(p)), A.invariant(i, p)


@law("P65", "invariants are closed under union and intersection", [P("p"), C("I"), C("J")])
def _p65(A, p, i, j):
    return (A.invariant(i, p) & A.invariant(j, p),
            A.invariant(A.cor(i, j), p) & A.invariant(A.cand(i, j), p))


@law("P66", "an invariant survives refinement restricted to the old precondition",
     [Ref("p2", "p1"), C("I")])
def _p66(A, r, i):
    p2, p1 = r
    return A.invariant(i, p1), A.invariant(i, A.restrict(A.pre(p1), p2))


compound("P67", "every program operator preserves invariants", [
    _keeps_invariant("choice", lambda A, p, q: A.choice(p, q)),
    _keeps_invariant("composition", lambda A, p, q: A.seq(p, q)),
    _keeps_invariant("restriction", lambda A, p, c: A.restrict(c, p), binary=False,
                     with_condition=True),
    _keeps_invariant("corestriction", lambda A, p, c: A.corestrict(p, c), binary=False,
                     with_condition=True),
    _keeps_invariant("concurrency", lambda A, p, q: A.par(p, q)),
    _keeps_invariant("non-atomic", lambda A, p, q: A.nonatomic(p, q, p)),
    _keeps_invariant("if-then-else", lambda A, p, q, c: A.ite(c, p, q), with_condition=True),
    _keeps_invariant("guarded", lambda A, p, q, c: A.gc((c, p), (A.cnot(c), q)),
                     with_condition=True),
    _keeps_invariant("power", lambda A, p: A.power(p, 2), binary=False),
    _keeps_invariant("repetition", lambda A, p: A.star(p), binary=False),
    _keeps_invariant("while", lambda A, p, q, c: A.loop(p, c, q), with_condition=True),
],
    domain="normal", note=_LIVE + " (choice, repetition and while parts)")


@law("P68", "loop results satisfy the exit condition and the loop invariant",
     [P("a"), C("C"), P("b"), C("I", hint=_loop_invariant_hint)],
     domain="normal", note="loop invariant read as range(a) ⊆ I (see P68-literal); " + _LIVE)
def _p68(A, a, c, b, i):
    return A.loop_invariant(i, a, c, b), A.csub(A.rng(A.loop(a, c, b)), A.cand(c, i))


@law("P69", "invariant plus well-foundedness give loop feasibility",
     [P("a"), C("C"), P("b", hint=_body_hint)],
     note="Pre_b ∪ C as the loop invariant; loop feasibility means Pre_a ⊆ Pre_loop")
def _p69(A, a, c, b):
    ante = A.and_(A.feasible(a), A.feasible(b), A.loop_sufficient(a, c, b))
    return ante, A.loop_feasible(a, c, b)


# -- contracts, wp and sp ----------------------------------------------------

@law("P70", "weakening a contract keeps a contracted program correct",
     [P("b"), C("C", hint=_correct_pre_hint), R("R", hint=_correct_post_hint),
      C("C2", hint=_subset_of(lambda env: env["C"])),
      R("R2", hint=_superset_of(lambda env: env["R"]))])
def _p70(A, b, c, r, c2, r2):
    ante = A.and_(A.rsub(r, r2), A.csub(c2, c), A.correct(c, b, r))
    return ante, A.correct(c2, b, r2)


@law("P71", "a correct program satisfies sp and wp bounds",
     [P("b"), C("C", hint=_correct_pre_hint), R("R", hint=_correct_post_hint)])
def _p71(A, b, c, r):
    return A.correct(c, b, r), A.rsub(A.sp(b, c), r) & A.csub(c, A.wp(b, r))


@law("P72", "correctness is the subtraction formula",
     [P("b"), C("C", hint=_correct_pre_hint), R("R", hint=_correct_post_hint)],
     domain="feasible", note="fails for infeasible programs, see P72-infeasible")
def _p72(A, b, c, r):
    return A.iff(A.correct(c, b, r), A.correct_formula(c, b, r))


@law("P73", "sp of False is empty", [P("b")])
def _p73(A, b):
    return A.req(A.sp(b, A.false), A.empty_rel)


@law("P74", "wp of the empty postcondition is False", [P("b")],
     domain="feasible",
     note="fails for infeasible programs: wp keeps the states of Pre_b without results")
def _p74(A, b):
    return A.ceq(A.wp(b, A.empty_rel), A.false)


@law("P75", "sp of Fail is empty", [C("C")])
def _p75(A, c):
    return A.req(A.sp(A.fail, c), A.empty_rel)


@law("P76", "wp of Fail is False", [R("R")])
def _p76(A, r):
    return A.ceq(A.wp(A.fail, r), A.false)


@law("P77", "sp distributes over union", [P("b"), C("C"), C("D")])
def _p77(A, b, c, d):
    return A.req(A.sp(b, A.cor(c, d)), A.runion(A.sp(b, c), A.sp(b, d)))


@law("P78", "wp of a union contains the union of wps", [P("b"), R("R1"), R("R2")])
def _p78(A, b, r1, r2):
    return A.csub(A.cor(A.wp(b, r1), A.wp(b, r2)), A.wp(b, A.runion(r1, r2)))


@law("P79", "the most abstract implementation is correct and refined by every implementation",
     [Ref("q", "p")])
def _p79(A, qp):
    q, p = qp
    return A.feasible(p), A.and_(
        A.correct(A.pre(p), p, A.post(p)),
        A.implies(A.feasible(q), A.correct(A.pre(p), q, A.post(p))),
    )


@law("P80", "feasible iff every precondition state is trivial or relevant", [P("p")])
def _p80(A, p):
    return A.iff(A.feasible(p), A.trivial_or_relevant(p))


# -- supplementary laws ------------------------------------------------------

@law("choice-comm", "choice is commutative", [P("p1"), P("p2")])
def _choice_comm(A, p1, p2):
    return A.eq(A.choice(p1, p2), A.choice(p2, p1))


@law("choice-assoc", "choice is associative", [P("p1"), P("p2"), P("p3")])
def _choice_assoc(A, p1, p2, p3):
    return A.eq(A.choice(A.choice(p1, p2), p3), A.choice(p1, A.choice(p2, p3)))


@law("seq-assoc", "composition is associative", [P("p1"), P("p2"), P("p3")])
def _seq_assoc(A, p1, p2, p3):
    return A.eq(A.seq(A.seq(p1, p2), p3), A.seq(p1, A.seq(p2, p3)))


# -- recorded counterexamples ------------------------------------------------

@law("naive-seq", "composition equals composing the bare postconditions", [P("p1"), P("p2")],
     expected="fails",
     witness=Witness(3, (_prog(3, [(1, 1), (1, 2)], [1]), _prog(3, [(1, 1), (2, 2)], [1])),
                     "published"))
def _naive_seq(A, p1, p2):
    return A.req(A.post(A.seq(p1, p2)), A.rcompose(A.post(p1), A.post(p2)))


@law("P11-internal", "composition distributes over internal choice", [P("q"), P("p1"), P("p2")],
     expected="fails",
     witness=Witness(3, (_prog(3, [(0, 1), (0, 2)], [0]), _prog(3, [(1, 0)], [1]),
                         _prog(3, [(2, 0)], [2])), "published"))
def _p11_internal(A, q, p1, p2):
    return A.eq(A.seq(q, A.internal(p1, p2)), A.internal(A.seq(q, p1), A.seq(q, p2)))


@law("P14-demonic", "Fail is the unit of internal choice", [P("p")],
     expected="fails", witness=Witness(2, (SKIP2,), "derived"))
def _p14_demonic(A, p):
    return A.eq(A.internal(p, A.fail), p)


@law("choice-refinement", "a program refines its choice with another", [P("p1"), P("p2")],
     expected="fails", witness=Witness(2, (FAIL2, SKIP2), "derived"))
def _choice_refinement(A, p1, p2):
    return A.refines(p1, A.choice(p1, p2))


_INTER_P = _prog(2, [(0, 0), (0, 1)], [0])
_INTER_Q1 = _prog(2, [(0, 0)], [0])
_INTER_Q2 = _prog(2, [(0, 1)], [0])


@law("P31-intersection", "program intersection preserves implementations",
     [Ref("q1", "p1"), Ref("q2", "p2")], expected="fails",
     witness=Witness(2, ((_INTER_Q1, _INTER_P), (_INTER_Q2, _INTER_P)), "published"),
     note="refinement alone is preserved (an empty postcondition refines anything); the "
          "recorded witness fails once the refinements are required to be feasible")
def _p31_intersection(A, r1, r2):
    (q1, p1), (q2, p2) = r1, r2
    q = A.inter(q1, q2)
    return A.feasible(q1) & A.feasible(q2), A.feasible(q) & A.refines(q, A.inter(p1, p2))


@law("P31-difference", "program difference is refinement-safe",
     [Ref("q1", "p1"), Ref("q2", "p2")], expected="fails",
     witness=Witness(2, ((_INTER_Q1, _INTER_P), (_INTER_Q2, _INTER_P)), "derived"))
def _p31_difference(A, r1, r2):
    (q1, p1), (q2, p2) = r1, r2
    return A.refines(A.diff(q1, q2), A.diff(p1, p2))


_CONST0 = _prog(2, [(0, 0), (1, 0)], [0, 1])
_CONST1 = _prog(2, [(0, 1), (1, 1)], [0, 1])


@law("commute-refinement", "refinement preserves commuting", [Ref("q1", "p1"), Ref("q2", "p2")],
     expected="fails", witness=Witness(2, ((_CONST0, HAVOC2), (_CONST1, HAVOC2)), "published"))
def _commute_refinement(A, r1, r2):
    (q1, p1), (q2, p2) = r1, r2
    return A.commutes(p1, p2), A.commutes(q1, q2)


@law("commute-abstraction", "abstraction preserves commuting", [Ref("q1", "p1"), Ref("q2", "p2")],
     expected="fails",
     witness=Witness(2, ((_prog(2, [(0, 0)], [0]), _prog(2, [(0, 0)], [0])),
                         (_prog(2, [(0, 0)], [0]), _prog(2, [(0, 0), (0, 1)], [0]))),
                     "enumeration"),
     note="the recorded pair Skip, Havoc does commute (both orders give Havoc); the witness "
          "is a self-commuting program refining two programs that do not commute")
def _commute_abstraction(A, r1, r2):
    (q1, p1), (q2, p2) = r1, r2
    return A.commutes(q1, q2), A.commutes(p1, p2)


@law("P78-strict", "wp of a union is the union of wps", [P("b"), R("R1"), R("R2")],
     expected="fails",
     witness=Witness(3, (_prog(3, [(0, 1), (0, 2)], [0]), _rel(3, [(0, 1)]), _rel(3, [(0, 2)])),
                     "published"))
def _p78_strict(A, b, r1, r2):
    return A.ceq(A.wp(b, A.runion(r1, r2)), A.cor(A.wp(b, r1), A.wp(b, r2)))


@law("loop-feasibility", "a loop with feasible operands is feasible", [P("a"), C("C"), P("b")],
     expected="fails", witness=Witness(2, (SKIP2, _cond(2, []), SKIP2), "published"))
def _loop_feasibility(A, a, c, b):
    return A.feasible(a) & A.feasible(b), A.loop_feasible(a, c, b)


@law("P68-literal", "loop correctness with the loop invariant inside range(a)",
     [P("a"), C("C"), P("b"), C("I")], expected="fails",
     witness=Witness(2, (SKIP2, _cond(2, [0, 1]), SKIP2, _cond(2, [0])), "derived"))
def _p68_literal(A, a, c, b, i):
    return A.loop_invariant(i, a, c, b, literal=True), A.csub(A.rng(A.loop(a, c, b)), A.cand(c, i))


@law("P72-infeasible", "correctness is the subtraction formula, infeasible bodies included",
     [P("b"), C("C"), R("R")], expected="fails",
     witness=Witness(2, (_prog(2, [], [0, 1]), _cond(2, []), _rel(2, [])), "derived"))
def _p72_infeasible(A, b, c, r):
    return A.iff(A.correct(c, b, r), A.correct_formula(c, b, r))


# -- lookup ------------------------------------------------------------------

def _sort_key(law_id: str):
    m = re.fullmatch(r"P(\d+)(.*)", law_id)
    return (0, int(m.group(1)), m.group(2)) if m else (1, 0, law_id)


def law_ids() -> list[str]:
    return sorted(LAWS, key=_sort_key)


def theorem_ids() -> list[str]:
    return [i for i in law_ids() if re.fullmatch(r"P\d+", i)]


class UnknownLaw(KeyError):
    def __str__(self) -> str:
        return self.args[0]


def get_law(law_id: str) -> Law:
    try:
        return LAWS[law_id]
    except KeyError:
        raise UnknownLaw(f"unknown law {law_id!r}; known laws: {', '.join(law_ids())}") from None
