"""The TP specification language: parse, elaborate, print and run."""

from .ast import Pos
from .elaborate import LoopValue, Model, elaborate
from .lexer import Diagnostic, tokenize
from .parser import parse
from .printer import format_file, show_value
from .runner import Result, run_directives


def load(text: str) -> tuple[Model, list[Diagnostic]]:
    """Parse and elaborate ``text``; the model is only usable without diagnostics."""
    tree, diags = parse(text)
    if diags:
        return Model(), diags
    return elaborate(tree)


def format_model(model: Model) -> str:
    """Every binding as a canonical literal, preceded by the universe."""
    from .elaborate import kind_of
    from .printer import show_universe
    lines = [] if model.space is None else [show_universe(model.space)]
    for name, value in model.bindings.items():
        lines.append(f"{kind_of(value)} {name} = {show_value(value)}")
    return "".join(line + "\n" for line in lines)


__all__ = ["Diagnostic", "LoopValue", "Model", "Pos", "Result", "elaborate", "format_file",
           "format_model", "load", "parse", "run_directives", "show_value", "tokenize"]
