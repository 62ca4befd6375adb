"""Two interchangeable evaluators for law checkers.

A checker is written once against the methods below.  :class:`ObjectAlgebra`
evaluates it on one tuple of model values by calling the public operations.
:class:`TableAlgebra` evaluates it on numpy arrays of integer codes covering
many tuples at once; its lookup tables are filled by calling the same public
operations on every program of a small space, so both paths share one
implementation of the semantics.

Codes: a condition is its bit mask, a relation its bit mask, a program
``post << n | pre``.
"""

from __future__ import annotations

from functools import cached_property, reduce

import numpy as np

from .. import contracts as ct
from .. import loops as lp
from .. import program as pg
from ..sets import (
    Condition,
    Relation,
    StateSpace,
    image,
    is_well_founded,
    rel_compose,
    rel_restrict,
)

EXACT = "exact-pair"
EQUIVALENCE = "equivalence"


class Algebra:
    mode: str

    def eq(self, a, b):
        return self.exact_eq(a, b) if self.mode == EXACT else self.equivalent(a, b)

    def and_(self, *xs):
        return reduce(lambda x, y: x & y, xs)

    def or_(self, *xs):
        return reduce(lambda x, y: x | y, xs)

    def implies(self, a, b):
        return self.not_(a) | b

    def iff(self, a, b):
        return self.not_(a ^ b)

    def gc(self, *branches):
        return reduce(self.choice, [self.restrict(c, p) for c, p in branches])

    def unrolled_union(self, a, c, b):
        return reduce(self.choice, self.unrollings(a, c, b))


class ObjectAlgebra(Algebra):
    """Scalar evaluation on :class:`~progtheory.program.Program` values."""

    def __init__(self, space: StateSpace, mode: str = EXACT):
        self.space = space
        self.mode = mode
        self.skip = pg.skip(space)
        self.fail = pg.fail(space)
        self.havoc = pg.havoc(space)
        self.true = space.true
        self.false = space.false
        self.empty_rel = space.empty_relation

    def not_(self, x):
        return not x

    # programs
    def exact_eq(self, a, b):
        return a == b

    def equivalent(self, a, b):
        return pg.equivalent(a, b)

    def choice(self, a, b):
        return pg.choice(a, b)

    def internal(self, a, b):
        return pg.internal_choice(a, b)

    def seq(self, a, b):
        return pg.seq(a, b)

    def par(self, a, b):
        return pg.atomic_concurrency(a, b)

    def nonatomic(self, p1, p2, q):
        return pg.nonatomic_concurrency([p1, p2], q)

    def restrict(self, c, p):
        return pg.restrict(c, p)

    def corestrict(self, p, c):
        return pg.corestrict(p, c)

    def ite(self, c, p, q):
        return pg.if_then_else(c, p, q)

    def gc(self, *branches):
        return pg.guarded_conditional(list(branches))

    def inter(self, a, b):
        return pg.program_intersection(a, b)

    def diff(self, a, b):
        return pg.program_difference(a, b)

    def power(self, p, i):
        return lp.fixed_repetition(p, i)

    def star(self, p):
        return lp.arbitrary_repetition(p)

    def loop(self, a, c, b):
        return lp.while_loop(lp.LoopSpec(a, c, b))

    def unrollings(self, a, c, b):
        ls = lp.LoopSpec(a, c, b)
        return [lp.loop_unrolling(ls, i) for i in range(lp.stabilization_index(ls))]

    def feasible(self, p):
        return pg.is_feasible(p)

    def refines(self, a, b):
        return pg.refines(a, b)

    def commutes(self, a, b):
        return pg.commutes(a, b)

    def pre(self, p):
        return p.pre

    def post(self, p):
        return p.post

    def rng(self, p):
        return p.range

    def make(self, r, c):
        return pg.Program(self.space, r, c)

    def trivial_or_relevant(self, p):
        return all(pg.classify_state(p, s) != pg.IRRELEVANT for s in p.pre.members)

    # conditions
    def cand(self, c, d):
        return c & d

    def cor(self, c, d):
        return c | d

    def cnot(self, c):
        return ~c

    def csub(self, c, d):
        return c <= d

    def ceq(self, c, d):
        return c == d

    def cdisjoint(self, c, d):
        return c.isdisjoint(d)

    # relations
    def runion(self, r, s):
        return r | s

    def rsub(self, r, s):
        return r <= s

    def req(self, r, s):
        return r == s

    def rcompose(self, r, s):
        return rel_compose(r, s)

    def well_founded(self, r):
        return is_well_founded(r)

    def rel_restrict(self, r, c):
        return rel_restrict(r, c)

    def image(self, r, c):
        return image(r, c)

    # invariants and loops
    def invariant(self, i, p):
        return lp.is_invariant(i, p)

    def loop_invariant(self, i, a, c, b, literal=False):
        return lp.is_loop_invariant(i, lp.LoopSpec(a, c, b), literal=literal)

    def loop_feasible(self, a, c, b):
        return self.loop(a, c, b).pre >= a.pre

    def loop_sufficient(self, a, c, b):
        return lp.sufficient_feasibility(lp.LoopSpec(a, c, b))

    # contracts
    def wp(self, b, r):
        return ct.wp(b, r)

    def sp(self, b, c):
        return ct.sp(b, c)

    def correct(self, c, b, r):
        return ct.correct_by_definition(ct.ContractedProgram(c, r, b))

    def correct_formula(self, c, b, r):
        return ct.correct_by_formula(ct.ContractedProgram(c, r, b))


def _dtype(count: int):
    return np.uint8 if count <= 256 else np.uint16 if count <= 65536 else np.int64


class TableAlgebra(Algebra):
    """Vectorised evaluation over every program of a space of size 1 or 2."""

    def __init__(self, tables: "Tables", mode: str = EXACT):
        self.t = tables
        self.mode = mode
        self.space = tables.space
        t = tables
        self.skip = t.code(pg.skip(t.space))
        self.fail = t.code(pg.fail(t.space))
        self.havoc = t.code(pg.havoc(t.space))
        self.true = t.full
        self.false = 0
        self.empty_rel = 0

    def not_(self, x):
        return ~np.asarray(x, dtype=bool)

    def exact_eq(self, a, b):
        return np.asarray(a) == np.asarray(b)

    def equivalent(self, a, b):
        return self.t.equiv[a, b]

    def choice(self, a, b):
        return self.t.choice[a, b]

    def internal(self, a, b):
        return self.t.internal[a, b]

    def seq(self, a, b):
        return self.t.seq[a, b]

    def par(self, a, b):
        return self.t.par[a, b]

    def nonatomic(self, p1, p2, q):
        return self.choice(self.seq(self.par(p1, q), p2), self.seq(p1, self.par(p2, q)))

    def restrict(self, c, p):
        return self.t.restrict[c, p]

    def corestrict(self, p, c):
        return self.t.corestrict[p, c]

    def ite(self, c, p, q):
        return self.t.ite[c, p, q]

    def inter(self, a, b):
        return self.t.inter[a, b]

    def diff(self, a, b):
        return self.t.diff[a, b]

    def power(self, p, i):
        return self.t.powers[i][p]

    def star(self, p):
        return self.t.star[p]

    def loop(self, a, c, b):
        return self.seq(a, self.t.loop_tail[c, b])

    def unrollings(self, a, c, b):
        body = self.restrict(self.cnot(c), b)
        return [self.seq(a, self.corestrict(pw[body], c)) for pw in self.t.powers]

    def feasible(self, p):
        return self.t.feasible[p]

    def refines(self, a, b):
        return self.t.refines[a, b]

    def commutes(self, a, b):
        return self.seq(a, b) == self.seq(b, a)

    def pre(self, p):
        return self.t.pre[p]

    def post(self, p):
        return self.t.post[p]

    def rng(self, p):
        return self.t.rng[p]

    def make(self, r, c):
        return (np.asarray(r, dtype=np.int64) << self.t.n) | c

    def trivial_or_relevant(self, p):
        return self.t.trivial_or_relevant[p]

    def cand(self, c, d):
        return np.bitwise_and(c, d)

    def cor(self, c, d):
        return np.bitwise_or(c, d)

    def cnot(self, c):
        return np.bitwise_xor(c, self.t.full)

    def csub(self, c, d):
        return np.bitwise_and(c, np.bitwise_not(np.asarray(d, dtype=np.int64))) == 0

    def ceq(self, c, d):
        return np.asarray(c) == np.asarray(d)

    def cdisjoint(self, c, d):
        return np.bitwise_and(c, d) == 0

    runion = cor

    rsub = csub

    req = ceq

    def rcompose(self, r, s):
        return self.t.rcompose[r, s]

    def well_founded(self, r):
        return self.t.well_founded[r]

    def rel_restrict(self, r, c):
        return self.t.rel_restrict[r, c]

    def image(self, r, c):
        return self.t.image[r, c]

    def invariant(self, i, p):
        return self.t.invariant[i, p]

    def loop_invariant(self, i, a, c, b, literal=False):
        init = self.csub(i, self.rng(a)) if literal else self.csub(self.rng(a), i)
        return init & self.invariant(i, self.restrict(self.cnot(c), b))

    def loop_feasible(self, a, c, b):
        return self.csub(self.pre(a), self.pre(self.loop(a, c, b)))

    def loop_sufficient(self, a, c, b):
        inv = self.cor(self.pre(b), c)
        guarded = self.rel_restrict(self.post(b), self.cnot(c))
        return self.loop_invariant(inv, a, c, b) & self.well_founded(guarded)

    def wp(self, b, r):
        return self.t.wp[b, r]

    def sp(self, b, c):
        return self.t.sp[b, c]

    def correct(self, c, b, r):
        return self.t.correct[c, b, r]

    def correct_formula(self, c, b, r):
        return self.csub(c, self.wp(b, r))


class Tables:
    """Lazily built operation tables for one small state space."""

    def __init__(self, space: StateSpace):
        self.space = space
        self.n = n = space.size
        self.full = space.full
        self.n_conds = 1 << n
        self.n_rels = 1 << (n * n)
        self.n_progs = 1 << (n * n + n)
        self.programs = [pg.from_code(space, k) for k in range(self.n_progs)]
        self.conditions = [Condition(space, k) for k in range(self.n_conds)]
        self.relations = [Relation(space, k) for k in range(self.n_rels)]
        self.pdtype = _dtype(self.n_progs)
        self.cdtype = _dtype(self.n_conds)
        self.rdtype = _dtype(self.n_rels)

    @staticmethod
    def code(p: pg.Program) -> int:
        return p.code

    def _binary(self, fn) -> np.ndarray:
        ps = self.programs
        return np.array([[fn(a, b).code for b in ps] for a in ps], dtype=self.pdtype)

    def _bool_binary(self, fn) -> np.ndarray:
        ps = self.programs
        return np.array([[fn(a, b) for b in ps] for a in ps], dtype=bool)

    @cached_property
    def choice(self):
        return self._binary(pg.choice)

    @cached_property
    def internal(self):
        return self._binary(pg.internal_choice)

    @cached_property
    def seq(self):
        return self._binary(pg.seq)

    @cached_property
    def par(self):
        return self._binary(pg.atomic_concurrency)

    @cached_property
    def inter(self):
        return self._binary(pg.program_intersection)

    @cached_property
    def diff(self):
        return self._binary(pg.program_difference)

    @cached_property
    def refines(self):
        return self._bool_binary(pg.refines)

    @cached_property
    def equiv(self):
        return self._bool_binary(pg.equivalent)

    @cached_property
    def restrict(self):
        return np.array([[pg.restrict(c, p).code for p in self.programs] for c in self.conditions],
                        dtype=self.pdtype)

    @cached_property
    def corestrict(self):
        return np.array([[pg.corestrict(p, c).code for c in self.conditions]
                         for p in self.programs],
                        dtype=self.pdtype)

    @cached_property
    def ite(self):
        ps = self.programs
        return np.array([[[pg.if_then_else(c, a, b).code for b in ps] for a in ps]
                         for c in self.conditions], dtype=self.pdtype)

    @cached_property
    def powers(self) -> list[np.ndarray]:
        per_prog = [lp.repetition_powers(p) for p in self.programs]
        depth = max(len(ps) for ps in per_prog)
        return [np.array([lp.fixed_repetition(p, i).code for p in self.programs], dtype=self.pdtype)
                for i in range(depth)]

    @cached_property
    def star(self):
        return np.array([lp.arbitrary_repetition(p).code for p in self.programs], dtype=self.pdtype)

    @cached_property
    def loop_tail(self):
        # while_loop(a, C, b) = a ; tail(C, b)
        return np.array([[pg.corestrict(lp.arbitrary_repetition(pg.restrict(~c, b)), c).code
                          for b in self.programs] for c in self.conditions], dtype=self.pdtype)

    @cached_property
    def feasible(self):
        return np.array([pg.is_feasible(p) for p in self.programs], dtype=bool)

    @cached_property
    def normal(self):
        # feasible and silent outside the precondition: dom(post) = Pre
        return np.array([pg.is_feasible(p) and rel_restrict(p.post, p.pre) == p.post
                         for p in self.programs], dtype=bool)

    @cached_property
    def total(self):
        return np.array([p.pre.bits == self.full for p in self.programs], dtype=bool)

    @cached_property
    def trivial_or_relevant(self):
        return np.array([all(pg.classify_state(p, s) != pg.IRRELEVANT for s in p.pre.members)
                         for p in self.programs], dtype=bool)

    @cached_property
    def pre(self):
        return np.array([p.pre.bits for p in self.programs], dtype=self.cdtype)

    @cached_property
    def post(self):
        return np.array([p.post.bits for p in self.programs], dtype=self.rdtype)

    @cached_property
    def rng(self):
        return np.array([p.range.bits for p in self.programs], dtype=self.cdtype)

    @cached_property
    def rcompose(self):
        rs = self.relations
        return np.array([[rel_compose(r, s).bits for s in rs] for r in rs], dtype=self.rdtype)

    @cached_property
    def well_founded(self):
        return np.array([is_well_founded(r) for r in self.relations], dtype=bool)

    @cached_property
    def rel_restrict(self):
        return np.array([[rel_restrict(r, c).bits for c in self.conditions]
                         for r in self.relations],
                        dtype=self.rdtype)

    @cached_property
    def image(self):
        return np.array([[image(r, c).bits for c in self.conditions] for r in self.relations],
                        dtype=self.cdtype)

    @cached_property
    def invariant(self):
        return np.array([[lp.is_invariant(i, p) for p in self.programs] for i in self.conditions],
                        dtype=bool)

    @cached_property
    def wp(self):
        return np.array([[ct.wp(b, r).bits for r in self.relations] for b in self.programs],
                        dtype=self.cdtype)

    @cached_property
    def sp(self):
        return np.array([[ct.sp(b, c).bits for c in self.conditions] for b in self.programs],
                        dtype=self.rdtype)

    @cached_property
    def correct(self):
        return np.array([[[ct.correct_by_definition(ct.ContractedProgram(c, r, b))
                           for r in self.relations] for b in self.programs]
                         for c in self.conditions], dtype=bool)


_TABLES: dict[int, Tables] = {}


def tables_for(n: int) -> Tables:
    if n not in _TABLES:
        _TABLES[n] = Tables(StateSpace.of_size(n))
    return _TABLES[n]
