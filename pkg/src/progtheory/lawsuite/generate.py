"""Seeded random model values for the randomized law mode.

Every generator takes a :class:`random.Random` so that a seed fixes the whole
sample stream.  ``domain`` selects the program class: ``"all"`` (uniform
over pair sets and preconditions), ``"feasible"`` (uniform draws filtered by
feasibility) or ``"normal"`` (feasible and silent outside the precondition).
"""

from __future__ import annotations

import random

from .. import program as pg
from ..sets import Condition, Relation, StateSpace, image

DOMAINS = ("all", "feasible", "normal")


def _rng(seed: int | str | random.Random) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_condition(rng: random.Random, space: StateSpace) -> Condition:
    return Condition(space, rng.getrandbits(space.size) if space.size else 0)


def random_relation(rng: random.Random, space: StateSpace) -> Relation:
    return Relation(space, rng.getrandbits(space.size * space.size))


def _nonempty_row(rng: random.Random, space: StateSpace, within: int | None = None) -> int:
    within = space.full if within is None else within
    while True:
        row = rng.getrandbits(space.size) & within
        if row:
            return row


def _assemble(space: StateSpace, rows: list[int], pre: int) -> pg.Program:
    post = 0
    for i, row in enumerate(rows):
        post |= row << (i * space.size)
    return pg.Program(space, Relation(space, post), Condition(space, pre))


def random_program(space: StateSpace, seed: int | str | random.Random = 0,
                   domain: str = "all") -> pg.Program:
    """A random program; the same seed always yields the same program."""
    rng = _rng(seed)
    if domain == "all":
        return pg.Program(space, random_relation(rng, space), random_condition(rng, space))
    if domain == "feasible":
        while True:
            p = pg.Program(space, random_relation(rng, space), random_condition(rng, space))
            if pg.is_feasible(p):
                return p
    if domain == "normal":
        pre = random_condition(rng, space).bits
        rows = [_nonempty_row(rng, space) if pre >> i & 1 else 0 for i in range(space.size)]
        return _assemble(space, rows, pre)
    raise ValueError(f"unknown program domain {domain!r}; expected one of {DOMAINS}")


def random_refinement(rng: random.Random, p: pg.Program, domain: str = "all") -> pg.Program:
    """A random ``q`` with ``q ⊆ p`` that lies in ``domain`` when ``p`` does.

    ``Pre_q`` adds random states to ``Pre_p``; on ``Pre_p`` each row of
    ``q`` is a random subset of the row of ``p`` (nonempty when ``q`` must
    be feasible); elsewhere rows are arbitrary.
    """
    space = p.space
    pre = p.pre.bits | random_condition(rng, space).bits
    rows = []
    for i in range(space.size):
        prow = p.post.row(i)
        if p.pre.bits >> i & 1:
            row = (_nonempty_row(rng, space, prow) if domain != "all" and prow
                   else rng.getrandbits(space.size) & prow)
        elif domain == "normal":
            row = _nonempty_row(rng, space) if pre >> i & 1 else 0
        elif domain == "feasible" and pre >> i & 1:
            row = _nonempty_row(rng, space)
        else:
            row = rng.getrandbits(space.size)
        rows.append(row)
    return _assemble(space, rows, pre)


# -- hints: generators that make a law's antecedent likely to hold ----------

def reachable_closure(p: pg.Program, start: Condition) -> Condition:
    """Smallest invariant of ``p`` containing ``start``."""
    cur = start
    while True:
        nxt = cur | image(p.post, cur & p.pre)
        if nxt == cur:
            return cur
        cur = nxt


def commuting_partner(rng: random.Random, p: pg.Program, domain: str = "all") -> pg.Program:
    """A program likely to commute with ``p``: powers, Skip/Fail, or a random draw."""
    space = p.space
    pick = rng.randrange(5)
    if pick == 0:
        return pg.seq(p, p)
    if pick == 1:
        return p
    if pick == 2:
        return pg.skip(space)
    if pick == 3:
        return pg.fail(space)
    return random_program(space, rng, domain)


def well_founded_body(rng: random.Random, space: StateSpace, exit_: Condition,
                      domain: str = "feasible") -> pg.Program:
    """A total program whose steps outside ``exit_`` descend a random ranking.

    Half of the draws are unconstrained so the sufficient-condition antecedent
    is exercised on both sides.
    """
    if rng.random() < 0.5:
        return random_program(space, rng, domain)
    order = list(range(space.size))
    rng.shuffle(order)
    rank = {s: r for r, s in enumerate(order)}
    rows = []
    for i in range(space.size):
        # exit states end every chain, so they count as lower
        lower = sum(1 << j for j in range(space.size) if rank[j] < rank[i]) | exit_.bits
        if exit_.bits >> i & 1 or not lower:
            rows.append(_nonempty_row(rng, space))
        else:
            rows.append(_nonempty_row(rng, space, lower))
    return _assemble(space, rows, space.full)
