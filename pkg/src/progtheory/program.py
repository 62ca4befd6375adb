"""Programs as ⟨postcondition, precondition⟩ pairs and their operators.

A program over a state space is a relation ``post`` together with a set
``pre``.  Infeasible programs are ordinary values; feasibility is a
predicate.  Binary operators require both operands to live in the same
space; only :func:`refines` accepts a larger space on its left.

Restriction ``C : p`` keeps ``post`` on inputs in ``C`` and intersects the
precondition with ``C``.  With the precondition left untouched, restricting
a feasible program by ``False`` would yield the infeasible ``⟨∅, Pre⟩`` and
the restriction laws (feasibility closure, ``p ⊆ C:p``, ``False:p = Fail``,
``if True then p else q end = p``) would not hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .sets import (
    Condition,
    ModelError,
    Relation,
    StateSpace,
    _check_space,
    _compose_bits,
    _domain_bits,
    _image_bits,
    _iter_bits,
    _preimage_bits,
    _restrict_bits,
    is_function,
)
from .verdict import Verdict


@dataclass(frozen=True)
class Program:
    space: StateSpace
    post: Relation
    pre: Condition

    def __post_init__(self) -> None:
        _check_space(self.space, self.post.space)
        _check_space(self.space, self.pre.space)

    @property
    def domain(self) -> Condition:
        """The program's domain, a synonym for its precondition."""
        return self.pre

    @property
    def range(self) -> Condition:
        """Values the program can actually yield: ``post(Pre)``."""
        sp = self.space
        return Condition(sp, _image_bits(self.post.bits, self.pre.bits, sp.size, sp.full))

    @property
    def code(self) -> int:
        """Dense integer code ``post << n | pre``, used for enumeration order."""
        return (self.post.bits << self.space.size) | self.pre.bits

    def __str__(self) -> str:
        return f"<{self.post},{self.pre}>"


def _mk(space: StateSpace, post: int, pre: int) -> Program:
    return Program(space, Relation(space, post), Condition(space, pre))


def make_program(space: StateSpace, post: Relation | Iterable[tuple[str, str]],
                 pre: Condition | Iterable[str]) -> Program:
    if not isinstance(post, Relation):
        post = space.relation(post)
    if not isinstance(pre, Condition):
        pre = space.condition(pre)
    return Program(space, post, pre)


def from_code(space: StateSpace, code: int) -> Program:
    n = space.size
    return _mk(space, code >> n, code & space.full)


def special(kind: str, space: StateSpace) -> Program:
    kind = kind.lower()
    if kind == "fail":
        return _mk(space, 0, 0)
    if kind == "havoc":
        return Program(space, space.universal, space.true)
    if kind == "skip":
        return Program(space, space.identity, space.true)
    raise ModelError(f"unknown special program {kind!r}")


def skip(space: StateSpace) -> Program:
    return special("skip", space)


def fail(space: StateSpace) -> Program:
    return special("fail", space)


def havoc(space: StateSpace) -> Program:
    return special("havoc", space)


# -- basic operators ---------------------------------------------------------

def choice(p1: Program, p2: Program) -> Program:
    _check_space(p1.space, p2.space)
    return _mk(p1.space, p1.post.bits | p2.post.bits, p1.pre.bits | p2.pre.bits)


def internal_choice(p1: Program, p2: Program) -> Program:
    """Demonic choice: postconditions joined, preconditions intersected.

    Not part of the theory's operator set; kept for counterexample studies.
    """
    _check_space(p1.space, p2.space)
    return _mk(p1.space, p1.post.bits | p2.post.bits, p1.pre.bits & p2.pre.bits)


def seq(p1: Program, p2: Program) -> Program:
    """``p1 ; p2``: post is ``(post1 \\ Pre2) ; post2``, pre is ``Pre1 ∩ post1⁻¹(Pre2)``."""
    _check_space(p1.space, p2.space)
    sp = p1.space
    n, full = sp.size, sp.full
    through = p1.post.bits & (p2.pre.bits * sp._rep)
    post = _compose_bits(through, p2.post.bits, n, full)
    pre = p1.pre.bits & _preimage_bits(p1.post.bits, p2.pre.bits, n, full)
    return _mk(sp, post, pre)


def restrict(c: Condition, p: Program) -> Program:
    """Guarded command ``C : p``."""
    _check_space(c.space, p.space)
    sp = p.space
    return _mk(sp, _restrict_bits(p.post.bits, c.bits, sp.size, sp.full), p.pre.bits & c.bits)


def corestrict(p: Program, c: Condition) -> Program:
    """``p \\ C``: keep only runs whose result lies in ``C``."""
    _check_space(c.space, p.space)
    sp = p.space
    post = p.post.bits & (c.bits * sp._rep)
    pre = p.pre.bits & _preimage_bits(p.post.bits, c.bits, sp.size, sp.full)
    return _mk(sp, post, pre)


def sequence(programs: Sequence[Program]) -> Program:
    if not programs:
        raise ModelError("empty sequence")
    out = programs[0]
    for p in programs[1:]:
        out = seq(out, p)
    return out


# -- derived operators -------------------------------------------------------

def atomic_concurrency(p1: Program, p2: Program) -> Program:
    return choice(seq(p1, p2), seq(p2, p1))


def nonatomic_concurrency(steps: Sequence[Program], q: Program) -> Program:
    """``(p1, ..., pk) || q``: ``q`` runs once, atomically, between any two steps.

    Two steps follow the definition ``((p1 || q) ; p2) ∪ (p1 ; (p2 || q))``;
    longer lists group to the right, ``(p1, (p2, ..., pk)) || q``.
    """
    steps = list(steps)
    if len(steps) < 2:
        raise ModelError("non-atomic concurrency needs at least two steps; use atomic concurrency")
    for p in steps:
        _check_space(p.space, q.space)
    return _nonatomic(steps, q)


def _nonatomic(steps: list[Program], q: Program) -> Program:
    if len(steps) == 1:
        return atomic_concurrency(steps[0], q)
    head, rest = steps[0], steps[1:]
    first = seq(atomic_concurrency(head, q), sequence(rest))
    later = seq(head, _nonatomic(rest, q))
    return choice(first, later)


def guarded_conditional(branches: Sequence[tuple[Condition, Program]]) -> Program:
    """``if C1 : p1 [] C2 : p2 ... end``, the choice of the restricted branches."""
    if not branches:
        raise ModelError("guarded conditional needs at least one branch")
    c, p = branches[0]
    out = restrict(c, p)
    for c, p in branches[1:]:
        out = choice(out, restrict(c, p))
    return out


def if_then_else(c: Condition, p1: Program, p2: Program | None = None) -> Program:
    """``if C then p1 else p2 end``; a missing else branch means Skip."""
    if p2 is None:
        p2 = skip(p1.space)
    _check_space(p1.space, p2.space)
    return choice(restrict(c, p1), restrict(~c, p2))


def program_intersection(p1: Program, p2: Program) -> Program:
    """Both components intersected; not refinement-safe, kept for counterexamples."""
    _check_space(p1.space, p2.space)
    return _mk(p1.space, p1.post.bits & p2.post.bits, p1.pre.bits & p2.pre.bits)


def program_difference(p1: Program, p2: Program) -> Program:
    """Postcondition difference, precondition intersection; not refinement-safe."""
    _check_space(p1.space, p2.space)
    return _mk(p1.space, p1.post.bits & ~p2.post.bits, p1.pre.bits & p2.pre.bits)


# -- predicates --------------------------------------------------------------

def is_feasible(p: Program) -> bool:
    sp = p.space
    return p.pre.bits & ~_domain_bits(p.post.bits, sp.size, sp.full) == 0


def infeasible_states(p: Program) -> Condition:
    sp = p.space
    return Condition(sp, p.pre.bits & ~_domain_bits(p.post.bits, sp.size, sp.full))


def equivalent(p1: Program, p2: Program) -> bool:
    """Same precondition and same postcondition on it."""
    _check_space(p1.space, p2.space)
    if p1.pre.bits != p2.pre.bits:
        return False
    sp = p1.space
    pre = p1.pre.bits
    return (_restrict_bits(p1.post.bits, pre, sp.size, sp.full)
            == _restrict_bits(p2.post.bits, pre, sp.size, sp.full))


def refines(p2: Program, p1: Program) -> bool:
    """Does ``p2`` refine ``p1`` (extension, weakening, strengthening)?"""
    if p2.space is p1.space or p2.space == p1.space:
        sp = p1.space
        if p1.pre.bits & ~p2.pre.bits:
            return False
        return _restrict_bits(p2.post.bits, p1.pre.bits, sp.size, sp.full) & ~p1.post.bits == 0
    return check_refines(p2, p1).ok


def check_refines(p2: Program, p1: Program) -> Verdict:
    """Refinement with witnesses for each failed clause."""
    s1, s2 = p1.space, p2.space
    missing = [a for a in s1.atoms if a not in s2]
    if missing:
        return Verdict.failed("extension", missing_atoms=missing)
    pre1 = set(p1.pre.members)
    weaker = [a for a in p1.pre.members if a not in p2.pre]
    if weaker:
        return Verdict.failed("weakening", states=weaker)
    extra = [(x, y) for x, y in p2.post.pairs
             if x in pre1 and (y not in s1 or (x, y) not in p1.post)]
    if extra:
        return Verdict.failed("strengthening", pairs=extra)
    return Verdict.passed()


def commutes(p1: Program, p2: Program) -> bool:
    return seq(p1, p2) == seq(p2, p1)


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class ProgramClass:
    deterministic: bool
    functional_literal: bool
    total: bool
    markovian: bool

    def flags(self) -> list[str]:
        # the literal "functional" test only accepts empty postconditions,
        # hence the name it is reported under
        names = [("deterministic", self.deterministic),
                 ("functional-literal", self.functional_literal),
                 ("total", self.total), ("markovian", self.markovian)]
        return [name for name, on in names if on]

    def __str__(self) -> str:
        return ",".join(self.flags()) or "none"


def is_functional_literal(post: Relation) -> bool:
    """Every subset ``C`` of the space is disjoint from ``post(C)``.

    A pair ``(x, y)`` in ``post`` violates the test for ``C = {x, y}`` and
    any violating ``C`` contains such a pair, so checking those two-element
    sets decides the quantifier.  Only the empty relation passes.
    """
    sp = post.space
    n, full = sp.size, sp.full
    for k in _iter_bits(post.bits):
        c = (1 << (k // n)) | (1 << (k % n))
        if _image_bits(post.bits, c, n, full) & c:
            return False
    return True


def is_markovian(post: Relation) -> bool:
    """Each output state is reached from all inputs or from none."""
    sp = post.space
    n, full = sp.size, sp.full
    rows = [(post.bits >> (i * n)) & full for i in range(n)]
    for j in range(n):
        col = [r >> j & 1 for r in rows]
        if any(col) and not all(col):
            return False
    return True


def classify_program(p: Program) -> ProgramClass:
    return ProgramClass(
        deterministic=is_function(p.post),
        functional_literal=is_functional_literal(p.post),
        total=p.pre.bits == p.space.full,
        markovian=is_markovian(p.post),
    )


TRIVIAL = "trivial"
IRRELEVANT = "irrelevant-nontrivial"
RELEVANT = "relevant"


def classify_state(p: Program, s: str) -> str:
    sp = p.space
    row = p.post.row(sp.index(s))
    if row == sp.full:
        return TRIVIAL
    if row == 0:
        return IRRELEVANT
    return RELEVANT
