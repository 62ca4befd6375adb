"""Finite state spaces, conditions and binary relations.

Atoms are interned to indices per :class:`StateSpace`.  A :class:`Condition`
is an ``n``-bit mask and a :class:`Relation` is an ``n*n``-bit mask where the
pair ``(i, j)`` lives at bit ``i*n + j``, so row ``i`` of a relation (the
successors of atom ``i``) is the ``n``-bit slice starting at ``i*n``.

Everything here is immutable.  Mixing values from different spaces raises
:class:`ModelError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator


class ModelError(Exception):
    """Raised for ill-formed model values (unknown atoms, mixed spaces, ...)."""


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class StateSpace:
    name: str
    atoms: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False)
    _rep: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        atoms = tuple(str(a) for a in self.atoms)
        if not atoms:
            raise ModelError(f"state space {self.name!r} is empty")
        index = {}
        for i, a in enumerate(atoms):
            if a in index:
                raise ModelError(f"duplicate atom {a!r} in state space {self.name!r}")
            index[a] = i
        n = len(atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "_index", index)
        # one bit at the start of every row; C * _rep copies C into each row
        object.__setattr__(self, "_rep", sum(1 << (i * n) for i in range(n)))

    @classmethod
    def of_size(cls, n: int, name: str | None = None) -> "StateSpace":
        """Space with atoms ``"0" .. "n-1"``."""
        return cls(name or f"S{n}", tuple(str(i) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def full(self) -> int:
        return (1 << len(self.atoms)) - 1

    def index(self, atom: str) -> int:
        try:
            return self._index[str(atom)]
        except KeyError:
            raise ModelError(
                f"atom {atom!r} is not in state space {self.name!r} {{{', '.join(self.atoms)}}}"
            ) from None

    def __contains__(self, atom: object) -> bool:
        return str(atom) in self._index

    def condition(self, atoms: Iterable[str] = ()) -> "Condition":
        bits = 0
        for a in atoms:
            bits |= 1 << self.index(a)
        return Condition(self, bits)

    def relation(self, pairs: Iterable[tuple[str, str]] = ()) -> "Relation":
        n = self.size
        bits = 0
        for x, y in pairs:
            bits |= 1 << (self.index(x) * n + self.index(y))
        return Relation(self, bits)

    @property
    def true(self) -> "Condition":
        return Condition(self, self.full)

    @property
    def false(self) -> "Condition":
        return Condition(self, 0)

    @property
    def identity(self) -> "Relation":
        n = self.size
        return Relation(self, sum(1 << (i * n + i) for i in range(n)))

    @property
    def universal(self) -> "Relation":
        return Relation(self, (1 << (self.size * self.size)) - 1)

    @property
    def empty_relation(self) -> "Relation":
        return Relation(self, 0)

    def __str__(self) -> str:
        return "{" + ",".join(self.atoms) + "}"


def _check_space(a: StateSpace, b: StateSpace) -> None:
    if a is not b and a != b:
        raise ModelError(f"state space mismatch: {a.name!r} vs {b.name!r}")


@dataclass(frozen=True)
class Condition:
    """A subset of a state space."""

    space: StateSpace
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.space.size:
            raise ModelError(f"condition bits {self.bits:#x} out of range for {self.space.name!r}")

    @property
    def members(self) -> tuple[str, ...]:
        atoms = self.space.atoms
        return tuple(atoms[i] for i in _iter_bits(self.bits))

    def __iter__(self) -> Iterator[str]:
        return iter(self.members)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, atom: object) -> bool:
        return atom in self.space and bool(self.bits >> self.space.index(atom) & 1)

    def __and__(self, other: "Condition") -> "Condition":
        _check_space(self.space, other.space)
        return Condition(self.space, self.bits & other.bits)

    def __or__(self, other: "Condition") -> "Condition":
        _check_space(self.space, other.space)
        return Condition(self.space, self.bits | other.bits)

    def __sub__(self, other: "Condition") -> "Condition":
        _check_space(self.space, other.space)
        return Condition(self.space, self.bits & ~other.bits)

    def __invert__(self) -> "Condition":
        return Condition(self.space, self.space.full ^ self.bits)

    def __le__(self, other: "Condition") -> bool:
        _check_space(self.space, other.space)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: "Condition") -> bool:
        return other <= self

    def isdisjoint(self, other: "Condition") -> bool:
        _check_space(self.space, other.space)
        return self.bits & other.bits == 0

    def __str__(self) -> str:
        return "{" + ",".join(self.members) + "}"


@dataclass(frozen=True)
class Relation:
    """A set of ordered atom pairs over one state space."""

    space: StateSpace
    bits: int

    def __post_init__(self) -> None:
        n = self.space.size
        if self.bits < 0 or self.bits >> (n * n):
            raise ModelError(f"relation bits {self.bits:#x} out of range for {self.space.name!r}")

    def row(self, i: int) -> int:
        n = self.space.size
        return (self.bits >> (i * n)) & self.space.full

    @property
    def pairs(self) -> tuple[tuple[str, str], ...]:
        n = self.space.size
        atoms = self.space.atoms
        return tuple((atoms[k // n], atoms[k % n]) for k in _iter_bits(self.bits))

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, pair: object) -> bool:
        x, y = pair  # type: ignore[misc]
        if x not in self.space or y not in self.space:
            return False
        n = self.space.size
        return bool(self.bits >> (self.space.index(x) * n + self.space.index(y)) & 1)

    def __and__(self, other: "Relation") -> "Relation":
        return rel_algebra("inter", self, other)

    def __or__(self, other: "Relation") -> "Relation":
        return rel_algebra("union", self, other)

    def __sub__(self, other: "Relation") -> "Relation":
        return rel_algebra("diff", self, other)

    def __le__(self, other: "Relation") -> bool:
        _check_space(self.space, other.space)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: "Relation") -> bool:
        return other <= self

    def __str__(self) -> str:
        return "{" + ",".join(f"({x},{y})" for x, y in self.pairs) + "}"


# -- raw bit kernels, shared with the program module ------------------------

def _image_bits(rel: int, cond: int, n: int, full: int) -> int:
    acc = 0
    for i in _iter_bits(cond):
        acc |= rel >> (i * n)
    return acc & full


def _preimage_bits(rel: int, cond: int, n: int, full: int) -> int:
    out = 0
    for i in range(n):
        if (rel >> (i * n)) & cond:
            out |= 1 << i
    return out


def _domain_bits(rel: int, n: int, full: int) -> int:
    out = 0
    for i in range(n):
        if (rel >> (i * n)) & full:
            out |= 1 << i
    return out


def _range_bits(rel: int, n: int, full: int) -> int:
    acc = 0
    while rel:
        acc |= rel & full
        rel >>= n
    return acc


def _restrict_bits(rel: int, cond: int, n: int, full: int) -> int:
    mask = 0
    for i in _iter_bits(cond):
        mask |= full << (i * n)
    return rel & mask


def _compose_bits(r: int, s: int, n: int, full: int) -> int:
    out = 0
    for i in range(n):
        row = (r >> (i * n)) & full
        if row:
            img = 0
            for j in _iter_bits(row):
                img |= s >> (j * n)
            out |= (img & full) << (i * n)
    return out


# -- public operations -------------------------------------------------------

def condition_algebra(op: str, c: Condition, d: Condition | None = None) -> Condition | bool:
    """Boolean-like operators on conditions.

    ``op`` is one of ``and``, ``or``, ``not``, ``diff`` or ``implies``; the
    last one is the subset test and returns a bool.
    """
    if op == "not":
        if d is not None:
            raise ModelError("'not' takes a single condition")
        return ~c
    if d is None:
        raise ModelError(f"condition operator {op!r} needs two operands")
    if op == "and":
        return c & d
    if op == "or":
        return c | d
    if op == "diff":
        return c - d
    if op == "implies":
        return c <= d
    raise ModelError(f"unknown condition operator {op!r}")


def image(r: Relation, c: Condition) -> Condition:
    _check_space(r.space, c.space)
    sp = r.space
    return Condition(sp, _image_bits(r.bits, c.bits, sp.size, sp.full))


def preimage(r: Relation, c: Condition) -> Condition:
    _check_space(r.space, c.space)
    sp = r.space
    return Condition(sp, _preimage_bits(r.bits, c.bits, sp.size, sp.full))


def domain(r: Relation) -> Condition:
    sp = r.space
    return Condition(sp, _domain_bits(r.bits, sp.size, sp.full))


def range_of(r: Relation) -> Condition:
    sp = r.space
    return Condition(sp, _range_bits(r.bits, sp.size, sp.full))


def rel_compose(r: Relation, s: Relation) -> Relation:
    """``r ; s`` in order of application: ``(r ; s)(X) = s(r(X))``."""
    _check_space(r.space, s.space)
    sp = r.space
    return Relation(sp, _compose_bits(r.bits, s.bits, sp.size, sp.full))


def rel_restrict(r: Relation, c: Condition) -> Relation:
    """``r ∩ (C × S)``."""
    _check_space(r.space, c.space)
    sp = r.space
    return Relation(sp, _restrict_bits(r.bits, c.bits, sp.size, sp.full))


def rel_corestrict(r: Relation, c: Condition) -> Relation:
    """``r ∩ (S × C)``."""
    _check_space(r.space, c.space)
    return Relation(r.space, r.bits & (c.bits * r.space._rep))


def rel_algebra(op: str, r: Relation, s: Relation) -> Relation:
    _check_space(r.space, s.space)
    if op == "union":
        return Relation(r.space, r.bits | s.bits)
    if op == "inter":
        return Relation(r.space, r.bits & s.bits)
    if op == "diff":
        return Relation(r.space, r.bits & ~s.bits)
    raise ModelError(f"unknown relation operator {op!r}")


def is_function(r: Relation) -> bool:
    n, full = r.space.size, r.space.full
    for i in range(n):
        row = (r.bits >> (i * n)) & full
        if row & (row - 1):
            return False
    return True


def is_total_relation(r: Relation) -> bool:
    sp = r.space
    return _domain_bits(r.bits, sp.size, sp.full) == sp.full


def is_well_founded(r: Relation) -> bool:
    """True iff ``r`` admits no infinite chain.

    On a finite set an infinite chain exists exactly when the graph of ``r``
    has a cycle (self-loops included), so this strips sinks until nothing is
    left or no sink remains.
    """
    n, full = r.space.size, r.space.full
    rows = [(r.bits >> (i * n)) & full for i in range(n)]
    alive = full
    while alive:
        sinks = 0
        for i in _iter_bits(alive):
            if rows[i] & alive == 0:
                sinks |= 1 << i
        if not sinks:
            return False
        alive &= ~sinks
    return True
