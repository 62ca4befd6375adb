"""Tokenizer for TP source text."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ast import Pos

KEYWORDS = frozenset("""
    universe condition relation program contract check print
    not and or if then elseif else end loop from until
    require do ensure skip fail havoc true false
""".split())

ITEM_KEYWORDS = frozenset(
    {"universe", "condition", "relation", "program", "contract", "check", "print"})

# longest punctuation first so that "||" and "[]" win over "|" and "["
PUNCT = ("||", "[]", "{", "}", "(", ")", "<", ">", ",", ";", ":", "|", "&", "\\", "^", "=")

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>--[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*(?:-[A-Za-z0-9_]+)*)
  | (?P<nat>[0-9]+)
  | (?P<punct>\|\||\[\]|[{}()<>,;:|&\\^=])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # ident | nat | kw | punct | eof
    text: str
    pos: Pos

    def __str__(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    pos: Pos
    message: str
    note: str = ""

    def render(self, source: str = "<input>") -> str:
        out = f"{source}:{self.pos}: {self.severity}: {self.message}"
        if self.note:
            out += f"\n  note: {self.note}"
        return out


def tokenize(text: str) -> tuple[list[Token], list[Diagnostic]]:
    """Split ``text`` into tokens; illegal characters become diagnostics."""
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    i, line, line_start = 0, 1, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        pos = Pos(line, i - line_start + 1)
        if m is None:
            diags.append(Diagnostic("error", pos, f"illegal character {text[i]!r}"))
            i += 1
            continue
        kind = m.lastgroup
        chunk = m.group()
        if kind == "ident":
            tokens.append(Token("kw" if chunk in KEYWORDS else "ident", chunk, pos))
        elif kind in ("nat", "punct"):
            tokens.append(Token(kind, chunk, pos))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = i + chunk.rindex("\n") + 1
        i = m.end()
    tokens.append(Token("eof", "", Pos(line, i - line_start + 1)))
    return tokens, diags
