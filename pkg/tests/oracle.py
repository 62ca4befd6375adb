"""Reference semantics on plain frozensets, written straight from the definitions.

States are ints ``0..n-1``.  A program is ``(post, pre)`` with ``post`` a
frozenset of pairs and ``pre`` a frozenset of states.  Nothing here uses
the bit encoding of the package, so agreement between the two is evidence
that the encoding is right.
"""

from __future__ import annotations

from itertools import product

from progtheory.program import Program, make_program
from progtheory.sets import Condition, Relation, StateSpace


def states(n):
    return frozenset(range(n))


def full(n):
    return frozenset(product(range(n), repeat=2))


# -- conversion ------------------------------------------------------------------

def to_oracle(p: Program):
    idx = p.space.index
    return (frozenset((idx(a), idx(b)) for a, b in p.post.pairs),
            frozenset(idx(a) for a in p.pre.members))


def cond_to_oracle(c: Condition):
    return frozenset(c.space.index(a) for a in c.members)


def rel_to_oracle(r: Relation):
    return frozenset((r.space.index(a), r.space.index(b)) for a, b in r.pairs)


def from_oracle(space: StateSpace, prog) -> Program:
    post, pre = prog
    at = space.atoms
    return make_program(space, [(at[a], at[b]) for a, b in post], [at[a] for a in pre])


def cond_from_oracle(space: StateSpace, c) -> Condition:
    return space.condition([space.atoms[a] for a in c])


def rel_from_oracle(space: StateSpace, r) -> Relation:
    return space.relation([(space.atoms[a], space.atoms[b]) for a, b in r])


# -- relations -------------------------------------------------------------------

def image(r, c):
    return frozenset(y for x, y in r if x in c)


def preimage(r, c):
    return frozenset(x for x, y in r if y in c)


def dom(r):
    return frozenset(x for x, _ in r)


def rng(r):
    return frozenset(y for _, y in r)


def compose(r, s):
    return frozenset((x, z) for x, y in r for y2, z in s if y == y2)


def rrestrict(r, c):
    return frozenset((x, y) for x, y in r if x in c)


def rcorestrict(r, c):
    return frozenset((x, y) for x, y in r if y in c)


def well_founded(r):
    """No infinite chain; on a finite set, no cycle."""
    live = set(dom(r) | rng(r))
    while True:
        sinks = {x for x in live if not any((x, y) in r for y in live)}
        if not sinks:
            return not live
        live -= sinks


# -- programs ---------------------------------------------------------------------

def skip(n):
    return frozenset((s, s) for s in range(n)), states(n)


def fail(n):
    return frozenset(), frozenset()


def havoc(n):
    return full(n), states(n)


def choice(p, q):
    return p[0] | q[0], p[1] | q[1]


def internal(p, q):
    return p[0] | q[0], p[1] & q[1]


def seq(p, q):
    (r1, a1), (r2, a2) = p, q
    post = frozenset((x, z) for x, y in r1 if y in a2 for y2, z in r2 if y2 == y)
    pre = frozenset(x for x in a1 if any((x, y) in r1 for y in a2))
    return post, pre


def restrict(c, p):
    return rrestrict(p[0], c), p[1] & c


def corestrict(p, c):
    post = rcorestrict(p[0], c)
    return post, frozenset(x for x in p[1] if any(y in c for xx, y in p[0] if xx == x))


def par(p, q):
    return choice(seq(p, q), seq(q, p))


def nonatomic(p1, p2, q):
    return choice(seq(par(p1, q), p2), seq(p1, par(p2, q)))


def ite(c, p, q, n):
    return choice(restrict(c, p), restrict(states(n) - c, q))


def guarded(branches):
    out = fail(0)
    for c, p in branches:
        out = choice(out, restrict(c, p))
    return out


def intersection(p, q):
    return p[0] & q[0], p[1] & q[1]


def difference(p, q):
    return p[0] - q[0], p[1] & q[1]


def power(p, i, n):
    """``p^0 = Skip`` and ``p^(i+1) = p ; p^i``; ``p^1`` differs from ``p`` when ``p`` is infeasible."""
    out = skip(n)
    for _ in range(i):
        out = seq(p, out)
    return out


def star(p, n):
    """Union of all powers, stopping once a power repeats."""
    seen, out, cur = set(), fail(n), skip(n)
    while cur not in seen:
        seen.add(cur)
        out = choice(out, cur)
        cur = seq(p, cur)
    return out


def while_loop(a, c, b, n):
    return seq(a, corestrict(star(restrict(states(n) - c, b), n), c))


def unrolling(a, c, b, i, n):
    return seq(a, corestrict(power(restrict(states(n) - c, b), i, n), c))


# -- predicates --------------------------------------------------------------------

def feasible(p):
    return p[1] <= dom(p[0])


def refines(q, p):
    """``q`` refines ``p`` over the same space."""
    return p[1] <= q[1] and rrestrict(q[0], p[1]) <= p[0]


def equivalent(p, q):
    return p[1] == q[1] and rrestrict(p[0], p[1]) == rrestrict(q[0], q[1])


def invariant(i, p):
    return image(p[0], i & p[1]) <= i


def loop_invariant(i, a, c, b, n):
    return image(a[0], a[1]) <= i and invariant(i, restrict(states(n) - c, b))


def wp(b, r):
    return b[1] - dom(b[0] - r)


def sp(b, c):
    return rrestrict(b[0], c)


def correct(c, b, r):
    """Definition: ``b`` is feasible and refines the contract ``<r, c>``."""
    return feasible(b) and refines(b, (r, c))


def state_kind(p, s, n):
    row = {y for x, y in p[0] if x == s}
    if len(row) == n:
        return "trivial"
    if not row:
        return "irrelevant"
    return "relevant"


def all_programs(n):
    pairs = sorted(full(n))
    for pm in range(1 << len(pairs)):
        post = frozenset(pr for k, pr in enumerate(pairs) if pm >> k & 1)
        for cm in range(1 << n):
            yield post, frozenset(s for s in range(n) if cm >> s & 1)


def all_conditions(n):
    for cm in range(1 << n):
        yield frozenset(s for s in range(n) if cm >> s & 1)
