"""Canonical text for TP trees and model values.

Sets print with atoms and pairs in lexicographic order and no spaces, so the
same value always prints the same way.  The source formatter emits the
fewest parentheses that reparse to the same tree.
"""

from __future__ import annotations

from ..contracts import ContractedProgram
from ..program import Program
from ..sets import Condition, Relation, StateSpace
from . import ast
from .parser import BINARY, NOT_BP, POWER_BP

ATOMIC = 1000


# -- values ----------------------------------------------------------------------

def show_atoms(atoms) -> str:
    return "{" + ",".join(sorted(atoms)) + "}"


def show_pairs(pairs) -> str:
    return "{" + ",".join(f"({a},{b})" for a, b in sorted(pairs)) + "}"


def show_condition(c: Condition) -> str:
    return show_atoms(c.members)


def show_relation(r: Relation) -> str:
    return show_pairs(r.pairs)


def show_program(p: Program) -> str:
    return f"<{show_relation(p.post)},{show_condition(p.pre)}>"


def show_contract(cp: ContractedProgram) -> str:
    return (f"require {show_condition(cp.pre)} do {show_program(cp.body)} "
            f"ensure {show_relation(cp.post)} end")


def show_universe(space: StateSpace) -> str:
    return f"universe {space.name} = {show_atoms(space.atoms)}"


def show_value(v) -> str:
    if isinstance(v, Condition):
        return show_condition(v)
    if isinstance(v, Relation):
        return show_relation(v)
    if isinstance(v, Program):
        return show_program(v)
    if isinstance(v, ContractedProgram):
        return show_contract(v)
    program = getattr(v, "program", None)
    if isinstance(program, Program):
        return show_program(program)
    raise TypeError(f"no canonical text for {type(v).__name__}")


# -- source ------------------------------------------------------------------------

def format_expr(e: ast.Expr, min_bp: int = 0) -> str:
    text, bp = _render(e)
    return f"({text})" if bp < min_bp else text


def _render(e: ast.Expr) -> tuple[str, int]:
    match e:
        case ast.Name(id=name):
            return name, ATOMIC
        case ast.Const(kind=kind):
            return kind, ATOMIC
        case ast.SetLit(atoms=atoms):
            return show_atoms(atoms), ATOMIC
        case ast.PairSetLit(pairs=pairs):
            return show_pairs(pairs), ATOMIC
        case ast.VariantTable(entries=entries):
            return "{" + ",".join(f"{a}:{v}" for a, v in entries) + "}", ATOMIC
        case ast.ProgLit(post=post, pre=pre):
            return f"<{format_expr(post)},{format_expr(pre)}>", ATOMIC
        case ast.Call(fn=fn, arg=arg):
            return f"{fn}({format_expr(arg)})", ATOMIC
        case ast.Loop(body=body):
            return f"loop {format_expr(body)} end", ATOMIC
        case ast.While(init=init, exit=exit_, body=body):
            return (f"from {format_expr(init)} until {format_expr(exit_)} "
                    f"loop {format_expr(body)} end"), ATOMIC
        case ast.Contract(pre=pre, body=body, post=post):
            return (f"require {format_expr(pre)} do {format_expr(body)} "
                    f"ensure {format_expr(post)} end"), ATOMIC
        case ast.IfThen(branches=branches, otherwise=otherwise):
            guard = BINARY[":"][0] + 1
            (c, p), *rest = branches
            out = f"if {format_expr(c, guard)} then {format_expr(p)}"
            for c, p in rest:
                out += f" elseif {format_expr(c)} then {format_expr(p)}"
            if otherwise is not None:
                out += f" else {format_expr(otherwise)}"
            return out + " end", ATOMIC
        case ast.Guarded(branches=branches):
            guard = BINARY[":"][0] + 1
            arms = " [] ".join(f"{format_expr(c, guard)} : {format_expr(p)}" for c, p in branches)
            return f"if {arms} end", ATOMIC
        case ast.Power(base=base, exponent=k):
            return f"{format_expr(base, POWER_BP)}^{k}", POWER_BP
        case ast.Not(operand=x):
            return f"not {format_expr(x, NOT_BP)}", NOT_BP
        case ast.NonAtomic(steps=steps, other=other):
            lbp, rbp = BINARY["||"]
            inner = ", ".join(format_expr(s) for s in steps)
            return f"({inner}) || {format_expr(other, rbp)}", lbp
        case ast.Binary(op=op, left=left, right=right):
            lbp, rbp = BINARY[op]
            left_min = lbp if rbp > lbp else lbp + 1
            return f"{format_expr(left, left_min)} {op} {format_expr(right, rbp)}", lbp
    raise TypeError(f"unknown expression node {type(e).__name__}")


def format_item(item: ast.Item) -> str:
    match item:
        case ast.Universe(name=name, atoms=atoms):
            return f"universe {name} = {{{','.join(atoms)}}}"
        case ast.Binding(kind=kind, name=name, expr=expr):
            return f"{kind} {name} = {format_expr(expr)}"
        case ast.Check(kind=kind, negated=negated, args=args):
            head = " ".join(["check"] + (["not"] if negated else []) + [kind])
            return head + " " + ", ".join(a if isinstance(a, str) else format_expr(a) for a in args)
        case ast.Print(query=query, expr=expr):
            return f"print {query} {format_expr(expr)}"
    raise TypeError(f"unknown item {type(item).__name__}")


def format_file(tree: ast.File) -> str:
    return "".join(format_item(item) + "\n" for item in tree.items)
