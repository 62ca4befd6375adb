"""Recursive-descent parser for TP files.

Binary operators are parsed by precedence climbing.  From tightest to
loosest: ``^`` (postfix), ``not``, ``and``, ``or``, ``:`` (right
associative), ``\\``, ``;``, ``||``, ``&``, ``|``.  The condition
connectives sit above ``:`` so that ``C and D : p`` guards ``p`` by both.
"""

from __future__ import annotations

from . import ast
from .lexer import ITEM_KEYWORDS, Diagnostic, Token, tokenize

# op -> (left binding power, right binding power)
BINARY = {
    "|": (10, 11),
    "&": (20, 21),
    "||": (30, 31),
    ";": (40, 41),
    "\\": (50, 51),
    ":": (60, 60),
    "or": (70, 71),
    "and": (80, 81),
}
NOT_BP = 90
POWER_BP = 100

CHECK_ARITY = {
    "feasible": 1,
    "refines": 2,
    "equivalent": 2,
    "correct": 1,
    "commutes": 2,
    "invariant": 2,
    "loop_invariant": 2,
    "loop_correct": 2,
    "loop_feasible": 1,
    "variant": 2,
    "law": 1,
}
QUERIES = ("post", "pre", "range", "dom", "classify")
CALLS = ("pre", "range", "post")

EXPR_START = ("'('", "'<'", "'{'", "'fail'", "'false'", "'from'", "'havoc'", "'if'", "'loop'",
              "'not'", "'require'", "'skip'", "'true'", "identifier")


class ParseError(Exception):
    def __init__(self, token: Token, expected: tuple[str, ...] | str):
        self.token = token
        self.expected = (expected,) if isinstance(expected, str) else expected

    def diagnostic(self) -> Diagnostic:
        want = self.expected[0] if len(self.expected) == 1 else "one of " + ", ".join(self.expected)
        return Diagnostic("error", self.token.pos, f"expected {want}, found {self.token}")


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    # -- token helpers ---------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("kw", "punct") and self.tok.text == text

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise ParseError(self.tok, f"'{text}'")
        return self.advance()

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.advance()
            return True
        return False

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            raise ParseError(self.tok, "identifier")
        return self.advance()

    def atom(self) -> str:
        if self.tok.kind not in ("ident", "nat"):
            raise ParseError(self.tok, ("atom", "'}'") if self.at("}") else "atom")
        return self.advance().text

    def nat(self) -> int:
        if self.tok.kind != "nat":
            raise ParseError(self.tok, "natural number")
        return int(self.advance().text)

    # -- items -----------------------------------------------------------------

    def parse_file(self) -> tuple[ast.File, list[Diagnostic]]:
        items, diags = [], []
        while self.tok.kind != "eof":
            start = self.i
            try:
                items.append(self.item())
            except ParseError as err:
                diags.append(err.diagnostic())
                if self.i == start:
                    self.advance()
                while self.tok.kind != "eof" and not (
                        self.tok.kind == "kw" and self.tok.text in ITEM_KEYWORDS):
                    self.advance()
        return ast.File(tuple(items)), diags

    def item(self) -> ast.Item:
        t = self.tok
        if self.accept("universe"):
            name = self.ident().text
            self.expect("=")
            self.expect("{")
            atoms = [self.atom()]
            while self.accept(","):
                atoms.append(self.atom())
            self.expect("}")
            return ast.Universe(name, tuple(atoms), t.pos)
        if t.kind == "kw" and t.text in ("condition", "relation", "program", "contract"):
            self.advance()
            name = self.ident().text
            self.expect("=")
            return ast.Binding(t.text, name, self.expr(), t.pos)
        if self.accept("check"):
            negated = self.accept("not")
            kind = self.tok
            if kind.kind != "ident" or kind.text not in CHECK_ARITY:
                raise ParseError(kind, tuple(f"'{k}'" for k in sorted(CHECK_ARITY)))
            self.advance()
            if kind.text == "law":
                return ast.Check("law", negated, (self.ident().text,), t.pos)
            args = [self.expr()]
            for _ in range(CHECK_ARITY[kind.text] - 1):
                self.accept(",")
                args.append(self.expr())
            return ast.Check(kind.text, negated, tuple(args), t.pos)
        if self.accept("print"):
            query = self.tok
            if query.kind != "ident" or query.text not in QUERIES:
                raise ParseError(query, tuple(f"'{q}'" for q in QUERIES))
            self.advance()
            return ast.Print(query.text, self.expr(), t.pos)
        raise ParseError(t, tuple(f"'{k}'" for k in sorted(ITEM_KEYWORDS)))

    # -- expressions -------------------------------------------------------------

    def expr(self, min_bp: int = 0) -> ast.Expr:
        left = self.prefix()
        while True:
            t = self.tok
            if self.at("^"):
                if POWER_BP < min_bp:
                    break
                self.advance()
                left = ast.Power(left, self.nat(), t.pos)
                continue
            op = t.text if t.kind in ("kw", "punct") else None
            if op not in BINARY:
                break
            lbp, rbp = BINARY[op]
            if lbp < min_bp:
                break
            self.advance()
            left = ast.Binary(op, left, self.expr(rbp), t.pos)
        return left

    def prefix(self) -> ast.Expr:
        t = self.tok
        if t.kind == "ident":
            if t.text in CALLS and self.peek().text == "(" and self.peek().kind == "punct":
                self.advance()
                self.advance()
                arg = self.expr()
                self.expect(")")
                return ast.Call(t.text, arg, t.pos)
            self.advance()
            return ast.Name(t.text, t.pos)
        if t.kind == "kw" and t.text in ("skip", "fail", "havoc", "true", "false"):
            self.advance()
            return ast.Const(t.text, t.pos)
        if self.accept("not"):
            return ast.Not(self.expr(NOT_BP), t.pos)
        if self.accept("("):
            first = self.expr()
            if not self.at(","):
                self.expect(")")
                return first
            steps = [first]
            while self.accept(","):
                steps.append(self.expr())
            self.expect(")")
            self.expect("||")
            return ast.NonAtomic(tuple(steps), self.expr(BINARY["||"][1]), t.pos)
        if self.accept("<"):
            post = self.expr()
            self.expect(",")
            pre = self.expr()
            self.expect(">")
            return ast.ProgLit(post, pre, t.pos)
        if self.at("{"):
            return self.braces()
        if self.accept("loop"):
            body = self.expr()
            self.expect("end")
            return ast.Loop(body, t.pos)
        if self.accept("from"):
            init = self.expr()
            self.expect("until")
            exit_ = self.expr()
            self.expect("loop")
            body = self.expr()
            self.expect("end")
            return ast.While(init, exit_, body, t.pos)
        if self.accept("if"):
            return self.conditional(t)
        if self.accept("require"):
            pre = self.expr()
            self.expect("do")
            body = self.expr()
            self.expect("ensure")
            post = self.expr()
            self.expect("end")
            return ast.Contract(pre, body, post, t.pos)
        raise ParseError(t, EXPR_START)

    def conditional(self, start: Token) -> ast.Expr:
        # the first guard decides between the two forms
        guard = self.expr(BINARY[":"][0] + 1)
        if self.accept(":"):
            branches = [(guard, self.expr())]
            while self.accept("[]"):
                g = self.expr(BINARY[":"][0] + 1)
                self.expect(":")
                branches.append((g, self.expr()))
            if not self.at("end"):
                raise ParseError(self.tok, ("'[]'", "'end'"))
            self.advance()
            return ast.Guarded(tuple(branches), start.pos)
        if not self.at("then"):
            raise ParseError(self.tok, ("':'", "'then'"))
        self.advance()
        branches = [(guard, self.expr())]
        otherwise = None
        while self.accept("elseif"):
            g = self.expr()
            self.expect("then")
            branches.append((g, self.expr()))
        if self.accept("else"):
            otherwise = self.expr()
        if not self.at("end"):
            raise ParseError(self.tok, ("'else'", "'elseif'", "'end'"))
        self.advance()
        return ast.IfThen(tuple(branches), otherwise, start.pos)

    def braces(self) -> ast.Expr:
        start = self.expect("{")
        if self.accept("}"):
            return ast.SetLit((), start.pos)
        if self.at("("):
            pairs = [self.pair()]
            while self.accept(","):
                pairs.append(self.pair())
            self.expect("}")
            return ast.PairSetLit(tuple(sorted(set(pairs))), start.pos)
        first = self.atom()
        if self.accept(":"):
            entries = [(first, self.nat())]
            while self.accept(","):
                a = self.atom()
                self.expect(":")
                entries.append((a, self.nat()))
            self.expect("}")
            return ast.VariantTable(tuple(sorted(set(entries))), start.pos)
        atoms = [first]
        while self.accept(","):
            atoms.append(self.atom())
        if not self.at("}"):
            raise ParseError(self.tok, ("','", "'}'"))
        self.advance()
        return ast.SetLit(tuple(sorted(set(atoms))), start.pos)

    def pair(self) -> tuple[str, str]:
        self.expect("(")
        a = self.atom()
        self.expect(",")
        b = self.atom()
        self.expect(")")
        return a, b


def parse(text: str) -> tuple[ast.File, list[Diagnostic]]:
    """Parse TP source into a tree and positioned diagnostics.

    Set literals are stored sorted and without repeats, so layout and order
    of elements never affect the tree.
    """
    tokens, diags = tokenize(text)
    tree, more = Parser(tokens).parse_file()
    return tree, sorted(diags + more, key=lambda d: (d.pos.line, d.pos.col))


def parse_expression(text: str) -> tuple[ast.Expr | None, list[Diagnostic]]:
    """Parse a single expression that must span the whole of ``text``."""
    tokens, diags = tokenize(text)
    if diags:
        return None, diags
    p = Parser(tokens)
    try:
        e = p.expr()
        if p.tok.kind != "eof":
            raise ParseError(p.tok, "end of expression")
    except ParseError as err:
        return None, [err.diagnostic()]
    return e, []
