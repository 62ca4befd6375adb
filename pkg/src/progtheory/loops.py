"""Repetition, while loops, invariants and variants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .program import (
    Program,
    choice,
    corestrict,
    is_feasible,
    restrict,
    seq,
    skip,
)
from .sets import (
    Condition,
    ModelError,
    _check_space,
    image,
    is_well_founded,
    rel_restrict,
)
from .verdict import TheoremViolation, Verdict


@dataclass(frozen=True)
class LoopSpec:
    """``from init until exit loop body end``."""

    init: Program
    exit: Condition
    body: Program

    def __post_init__(self) -> None:
        _check_space(self.init.space, self.exit.space)
        _check_space(self.init.space, self.body.space)

    @property
    def space(self):
        return self.init.space

    @property
    def guarded_body(self) -> Program:
        """``not exit : body``, the part that is actually iterated."""
        return restrict(~self.exit, self.body)


@dataclass(frozen=True)
class Variant:
    measure: Mapping[str, int]

    def value(self, atom: str) -> int:
        try:
            return self.measure[atom]
        except KeyError:
            raise ModelError(f"variant is undefined on atom {atom!r}") from None


def fixed_repetition(p: Program, i: int) -> Program:
    """``p^i`` with ``p^0 = Skip`` and ``p^(i+1) = p ; p^i``."""
    if i < 0:
        raise ModelError("repetition count must be non-negative")
    out = skip(p.space)
    for _ in range(i):
        out = seq(p, out)
    return out


def repetition_powers(p: Program) -> list[Program]:
    """The distinct powers ``p^0, p^1, ...`` up to the first repeat.

    Each power is a function of the previous one over a finite set of
    programs, so the sequence is eventually periodic and every later power
    already occurs in the returned prefix.
    """
    seen = set()
    powers = []
    cur = skip(p.space)
    while cur not in seen:
        seen.add(cur)
        powers.append(cur)
        cur = seq(p, cur)
    return powers


def arbitrary_repetition(p: Program) -> Program:
    """``loop p end``: the choice over all powers of ``p``."""
    powers = repetition_powers(p)
    out = powers[0]
    for q in powers[1:]:
        out = choice(out, q)
    return out


def while_loop(ls: LoopSpec) -> Program:
    body_star = arbitrary_repetition(ls.guarded_body)
    return seq(ls.init, corestrict(body_star, ls.exit))


def loop_unrolling(ls: LoopSpec, i: int) -> Program:
    """The loop restricted to runs leaving after exactly ``i`` iterations."""
    return seq(ls.init, corestrict(fixed_repetition(ls.guarded_body, i), ls.exit))


def stabilization_index(ls: LoopSpec) -> int:
    """Number of unrollings whose union already equals the whole loop."""
    return len(repetition_powers(ls.guarded_body))


def is_invariant(inv: Condition, p: Program) -> bool:
    _check_space(inv.space, p.space)
    return image(p.post, inv & p.pre) <= inv


def is_loop_invariant(inv: Condition, ls: LoopSpec, *, literal: bool = False) -> bool:
    """Initialisation establishes ``inv`` and the guarded body preserves it.

    ``literal=True`` demands ``inv ⊆ range(init)`` instead of
    ``range(init) ⊆ inv``; the loop correctness theorem fails under that
    reading, and the law suite keeps it only to exhibit the failure.
    """
    _check_space(inv.space, ls.space)
    init_range = ls.init.range
    established = inv <= init_range if literal else init_range <= inv
    return established and is_invariant(inv, ls.guarded_body)


def check_loop_correctness(ls: LoopSpec, inv: Condition) -> Verdict:
    """Loop results satisfy ``exit ∩ inv`` whenever ``inv`` is a loop invariant."""
    if not is_loop_invariant(inv, ls):
        escaping = image(ls.guarded_body.post, inv & ls.guarded_body.pre) - inv
        return Verdict.failed("not-a-loop-invariant",
                              uninitialised=list((ls.init.range - inv).members),
                              escaping=list(escaping.members))
    results = while_loop(ls).range
    offending = results - (ls.exit & inv)
    if offending.bits:
        return Verdict.failed("theorem-violation", offending=list(offending.members))
    return Verdict.passed(results=list(results.members))


def sufficient_feasibility(ls: LoopSpec) -> bool:
    """``Pre_body ∪ exit`` is a loop invariant and the guarded body is well-founded."""
    inv = ls.body.pre | ls.exit
    return is_loop_invariant(inv, ls) and is_well_founded(rel_restrict(ls.body.post, ~ls.exit))


def check_loop_feasibility(ls: LoopSpec) -> Verdict:
    """Decide loop feasibility directly and via the sufficient condition.

    The direct verdict asks whether every state accepted by ``init`` can
    leave the loop, i.e. ``Pre_init ⊆ Pre_loop``.  This is stronger than
    feasibility of the loop program itself, which always holds for
    feasible operands.
    """
    bad = [name for name, p in (("init", ls.init), ("body", ls.body)) if not is_feasible(p)]
    if bad:
        return Verdict.failed("operands-infeasible", operands=bad)
    loop = while_loop(ls)
    stuck = ls.init.pre - loop.pre
    direct = stuck.bits == 0
    sufficient = sufficient_feasibility(ls)
    if sufficient and not direct:
        raise TheoremViolation(f"loop feasibility sufficient condition holds but states "
                               f"{list(stuck.members)} cannot exit")
    witnesses = {"direct": direct, "sufficient": sufficient}
    if direct:
        return Verdict.passed(**witnesses)
    return Verdict.failed("infeasible-loop", stuck=list(stuck.members), **witnesses)


def check_variant(v: Variant, ls: LoopSpec) -> bool:
    """``v`` strictly decreases along every body step taken outside ``exit``."""
    sp = ls.space
    values = {a: v.value(a) for a in sp.atoms}
    body = ls.body.post
    ok = all(values[t] < values[s] for s, t in body.pairs if s not in ls.exit)
    if ok and not is_well_founded(rel_restrict(body, ~ls.exit)):
        raise TheoremViolation("a variant exists but the guarded body is not well-founded")
    return ok


def variant_violations(v: Variant, ls: LoopSpec) -> list[tuple[str, str]]:
    values = {a: v.value(a) for a in ls.space.atoms}
    return [(s, t) for s, t in ls.body.post.pairs
            if s not in ls.exit and not values[t] < values[s]]
