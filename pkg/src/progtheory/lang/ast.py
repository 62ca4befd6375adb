"""Syntax trees for TP files.

Every node carries a source position that is ignored by equality, so two
parses of differently laid out text compare equal when their structure does.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Pos:
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


NOPOS = Pos(0, 0)


def _pos():
    return field(default=NOPOS, compare=False, repr=False)


# -- expressions ---------------------------------------------------------------

@dataclass(frozen=True)
class Name:
    id: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class SetLit:
    """``{a, b}``; ``{}`` is typed by context as a condition or a relation."""

    atoms: tuple[str, ...]
    pos: Pos = _pos()


@dataclass(frozen=True)
class PairSetLit:
    pairs: tuple[tuple[str, str], ...]
    pos: Pos = _pos()


@dataclass(frozen=True)
class Const:
    """``skip``, ``fail``, ``havoc``, ``true`` or ``false``."""

    kind: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class ProgLit:
    post: "Expr"
    pre: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Not:
    operand: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class NonAtomic:
    steps: tuple["Expr", ...]
    other: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Loop:
    body: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class While:
    init: "Expr"
    exit: "Expr"
    body: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class IfThen:
    branches: tuple[tuple["Expr", "Expr"], ...]
    otherwise: "Expr | None"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Guarded:
    branches: tuple[tuple["Expr", "Expr"], ...]
    pos: Pos = _pos()


@dataclass(frozen=True)
class Contract:
    pre: "Expr"
    body: "Expr"
    post: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Call:
    """``pre(p)``, ``range(p)`` or ``post(p)``."""

    fn: str
    arg: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class VariantTable:
    entries: tuple[tuple[str, int], ...]
    pos: Pos = _pos()


Expr = (Name | SetLit | PairSetLit | Const | ProgLit | Binary | Not | Power | NonAtomic | Loop
        | While | IfThen | Guarded | Contract | Call | VariantTable)


# -- items -----------------------------------------------------------------------

@dataclass(frozen=True)
class Universe:
    name: str
    atoms: tuple[str, ...]
    pos: Pos = _pos()


@dataclass(frozen=True)
class Binding:
    kind: str  # condition | relation | program | contract
    name: str
    expr: Expr
    pos: Pos = _pos()


@dataclass(frozen=True)
class Check:
    kind: str
    negated: bool
    args: tuple  # expressions, or a law id string for ``check law``
    pos: Pos = _pos()


@dataclass(frozen=True)
class Print:
    query: str
    expr: Expr
    pos: Pos = _pos()


Item = Universe | Binding | Check | Print


@dataclass(frozen=True)
class File:
    items: tuple[Item, ...]
