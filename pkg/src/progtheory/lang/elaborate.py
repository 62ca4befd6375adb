"""Name resolution and type-directed evaluation of TP trees into a model.

Operators are overloaded by operand type: ``|`` and ``&`` are union and
intersection on conditions and relations and the two choices on programs,
``;`` composes relations or programs, ``:`` restricts a program or a
relation, ``\\`` corestricts a program or a relation or subtracts
conditions.  An empty ``{}`` takes its type from its surroundings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import program as pg
from ..contracts import ContractedProgram
from ..lawsuite.registry import UnknownLaw, get_law
from ..loops import LoopSpec, Variant, arbitrary_repetition, fixed_repetition, while_loop
from ..program import Program
from ..sets import (Condition, ModelError, Relation, StateSpace, rel_compose, rel_corestrict,
                    rel_restrict)
from . import ast
from .lexer import Diagnostic
from .printer import format_item

COND, REL, PROG, CONTRACT, VARIANT = "condition", "relation", "program", "contract", "variant table"


@dataclass(frozen=True)
class LoopValue:
    """A ``from … until … loop … end`` program that remembers its parts."""

    spec: LoopSpec
    program: Program


@dataclass(frozen=True)
class Directive:
    item: ast.Check | ast.Print
    args: tuple
    text: str


@dataclass
class Model:
    space: StateSpace | None = None
    bindings: dict[str, object] = field(default_factory=dict)
    directives: list[Directive] = field(default_factory=list)

    def snapshot(self) -> tuple:
        """Order-free description of the model, used to compare models."""
        from .printer import show_value
        universe = (None if self.space is None
                    else (self.space.name, tuple(sorted(self.space.atoms))))
        return universe, tuple(sorted((name, kind_of(v), show_value(v))
                                      for name, v in self.bindings.items()))


def kind_of(v) -> str:
    if isinstance(v, Condition):
        return COND
    if isinstance(v, Relation):
        return REL
    if isinstance(v, (Program, LoopValue)):
        return PROG
    if isinstance(v, ContractedProgram):
        return CONTRACT
    if isinstance(v, Variant):
        return VARIANT
    raise TypeError(type(v).__name__)


def as_program(v) -> Program:
    return v.program if isinstance(v, LoopValue) else v


class ElabError(Exception):
    def __init__(self, pos: ast.Pos, message: str, note: str = ""):
        super().__init__(message)
        self.pos, self.message, self.note = pos, message, note


_ARGS = {
    "feasible": (PROG,),
    "refines": (PROG, PROG),
    "equivalent": (PROG, PROG),
    "correct": (CONTRACT,),
    "commutes": (PROG, PROG),
    "invariant": (COND, PROG),
    "loop_invariant": (COND, "loop"),
    "loop_correct": (COND, "loop"),
    "loop_feasible": ("loop",),
    "variant": (VARIANT, "loop"),
}


class Elaborator:
    def __init__(self, model: Model | None = None):
        self.model = model or Model()
        self.universe_pos: ast.Pos | None = None
        self.bound_at: dict[str, ast.Pos] = {}
        self.diags: list[Diagnostic] = []

    # -- items -------------------------------------------------------------------

    def run(self, tree: ast.File) -> tuple[Model, list[Diagnostic]]:
        for item in tree.items:
            try:
                self.item(item)
            except ElabError as err:
                self.diags.append(Diagnostic("error", err.pos, err.message, err.note))
        return self.model, self.diags

    def item(self, item: ast.Item) -> None:
        if isinstance(item, ast.Universe):
            if self.model.space is not None:
                first = self.model.space.name
                raise ElabError(item.pos,
                                f"second universe '{item.name}'; a file declares exactly one",
                                f"universe '{first}' declared at {self.universe_pos}")
            try:
                self.model.space = StateSpace(item.name, item.atoms)
            except ModelError as err:
                raise ElabError(item.pos, str(err)) from None
            self.universe_pos = item.pos
            return
        if isinstance(item, ast.Check) and item.kind == "law":
            try:
                get_law(item.args[0])
            except UnknownLaw:
                raise ElabError(item.pos, f"unknown law '{item.args[0]}'") from None
            self.model.directives.append(Directive(item, item.args, format_item(item)))
            return
        if self.model.space is None:
            raise ElabError(item.pos, "no universe declared before this item",
                            "start the file with 'universe NAME = {atoms}'")
        if isinstance(item, ast.Binding):
            if item.name in self.bound_at:
                raise ElabError(item.pos, f"duplicate binding '{item.name}'",
                                f"first bound at {self.bound_at[item.name]}")
            value = self.typed(item.expr, item.kind)
            self.model.bindings[item.name] = value
            self.bound_at[item.name] = item.pos
        elif isinstance(item, ast.Check):
            args = tuple(self.typed(a, want) for a, want in zip(item.args, _ARGS[item.kind]))
            self.model.directives.append(Directive(item, args, format_item(item)))
        elif isinstance(item, ast.Print):
            kind, value = self.expr(item.expr)
            allowed = {PROG: ("post", "pre", "range", "dom", "classify"), REL: ("range", "dom"),
                       CONTRACT: ("post", "pre", "range", "dom", "classify")}
            if item.query not in allowed.get(kind, ()):
                raise ElabError(item.pos, f"cannot print {item.query} of a {kind}")
            self.model.directives.append(Directive(item, (value,), format_item(item)))

    # -- expressions ---------------------------------------------------------------

    def typed(self, e: ast.Expr, want: str):
        if want == "loop":
            kind, value = self.expr(e, PROG)
            if not isinstance(value, LoopValue):
                raise ElabError(e.pos,
                                f"expected a loop (from … until … loop … end), found a {kind}")
            return value
        kind, value = self.expr(e, want)
        if kind != want:
            raise ElabError(e.pos, f"expected a {want}, found a {kind}")
        return value

    def expr(self, e: ast.Expr, want: str | None = None) -> tuple[str, object]:
        try:
            return self._expr(e, want)
        except ModelError as err:
            raise ElabError(e.pos, str(err)) from None

    def _atoms(self, atoms, pos: ast.Pos) -> None:
        space = self.model.space
        for a in atoms:
            if a not in space:
                raise ElabError(pos, f"atom '{a}' is not in universe '{space.name}'",
                                f"universe '{space.name}' = {{{','.join(space.atoms)}}}")

    def _expr(self, e: ast.Expr, want: str | None) -> tuple[str, object]:
        space = self.model.space
        match e:
            case ast.Name(id=name):
                if name not in self.model.bindings:
                    raise ElabError(e.pos, f"unknown name '{name}'")
                v = self.model.bindings[name]
                return kind_of(v), v
            case ast.Const(kind=kind):
                if kind in ("true", "false"):
                    return COND, space.true if kind == "true" else space.false
                return PROG, pg.special(kind, space)
            case ast.SetLit(atoms=()):
                if want == REL:
                    return REL, space.empty_relation
                if want == COND:
                    return COND, space.false
                raise ElabError(e.pos, "cannot tell whether {} is a condition or a relation here")
            case ast.SetLit(atoms=atoms):
                self._atoms(atoms, e.pos)
                return COND, space.condition(atoms)
            case ast.PairSetLit(pairs=pairs):
                self._atoms([a for pair in pairs for a in pair], e.pos)
                return REL, space.relation(pairs)
            case ast.VariantTable(entries=entries):
                self._atoms([a for a, _ in entries], e.pos)
                measure = {}
                for a, v in entries:
                    if a in measure:
                        raise ElabError(e.pos, f"variant gives atom '{a}' two values")
                    measure[a] = v
                return VARIANT, Variant(measure)
            case ast.ProgLit(post=post, pre=pre):
                return PROG, Program(space, self.typed(post, REL), self.typed(pre, COND))
            case ast.Call(fn=fn, arg=arg):
                p = as_program(self.typed(arg, PROG))
                return (REL, p.post) if fn == "post" else (COND, p.pre if fn == "pre" else p.range)
            case ast.Not(operand=x):
                return COND, ~self.typed(x, COND)
            case ast.Power(base=base, exponent=k):
                return PROG, fixed_repetition(self.program(base), k)
            case ast.NonAtomic(steps=steps, other=other):
                return PROG, pg.nonatomic_concurrency([self.program(s) for s in steps],
                                                      self.program(other))
            case ast.Loop(body=body):
                return PROG, arbitrary_repetition(self.program(body))
            case ast.While(init=init, exit=exit_, body=body):
                spec = LoopSpec(self.program(init), self.typed(exit_, COND), self.program(body))
                return PROG, LoopValue(spec, while_loop(spec))
            case ast.IfThen(branches=branches, otherwise=otherwise):
                result = None if otherwise is None else self.program(otherwise)
                for c, p in reversed(branches):
                    result = pg.if_then_else(self.typed(c, COND), self.program(p), result)
                return PROG, result
            case ast.Guarded(branches=branches):
                return PROG, pg.guarded_conditional(
                    [(self.typed(c, COND), self.program(p)) for c, p in branches])
            case ast.Contract(pre=pre, body=body, post=post):
                return CONTRACT, ContractedProgram(self.typed(pre, COND), self.typed(post, REL),
                                                   self.program(body))
            case ast.Binary():
                return self.binary(e, want)
        raise ElabError(e.pos, f"unsupported expression {type(e).__name__}")

    def program(self, e: ast.Expr) -> Program:
        return as_program(self.typed(e, PROG))

    def binary(self, e: ast.Binary, want: str | None) -> tuple[str, object]:
        op = e.op
        if op in ("and", "or"):
            a, b = self.typed(e.left, COND), self.typed(e.right, COND)
            return COND, (a & b) if op == "and" else (a | b)
        if op == ":":
            c = self.typed(e.left, COND)
            kind, v = self.expr(e.right, want)
            if kind == PROG:
                return PROG, pg.restrict(c, as_program(v))
            if kind == REL:
                return REL, rel_restrict(v, c)
            raise ElabError(e.pos, f"':' restricts a program or a relation, not a {kind}")
        if op == "\\":
            kind, v = self.expr(e.left, want)
            c = self.typed(e.right, COND)
            if kind == PROG:
                return PROG, pg.corestrict(as_program(v), c)
            if kind == REL:
                return REL, rel_corestrict(v, c)
            if kind == COND:
                return COND, v - c
            raise ElabError(e.pos, f"'\\' does not apply to a {kind}")
        # same-typed operands; an empty {} on the left borrows the right's type
        if isinstance(e.left, ast.SetLit) and not e.left.atoms:
            kind, b = self.expr(e.right, want)
            a = self.typed(e.left, kind)
        else:
            kind, a = self.expr(e.left, want)
            b = self.typed(e.right, kind)
        table = {
            ("|", COND): lambda x, y: x | y,
            ("&", COND): lambda x, y: x & y,
            ("|", REL): lambda x, y: x | y,
            ("&", REL): lambda x, y: x & y,
            (";", REL): rel_compose,
            ("|", PROG): pg.choice,
            ("&", PROG): pg.internal_choice,
            (";", PROG): pg.seq,
            ("||", PROG): pg.atomic_concurrency,
        }
        fn = table.get((op, kind))
        if fn is None:
            raise ElabError(e.pos, f"'{op}' does not apply to a {kind}")
        if kind == PROG:
            a, b = as_program(a), as_program(b)
        return kind, fn(a, b)


def elaborate(tree: ast.File) -> tuple[Model, list[Diagnostic]]:
    """Evaluate every binding and queue the directives in file order."""
    return Elaborator().run(tree)


def evaluate(e: ast.Expr, model: Model) -> tuple[str, object]:
    """Type and value of ``e`` in the scope of ``model``; raises :class:`ElabError`."""
    if model.space is None:
        raise ElabError(e.pos, "no universe to evaluate in")
    return Elaborator(model).expr(e)
