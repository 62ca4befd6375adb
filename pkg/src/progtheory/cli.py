"""Command-line driver: ``progtheory run|laws|eval|enumerate|format``.

Exit status: 0 when everything checked passes, 1 when a check fails or a
law behaves unexpectedly, 2 on unreadable input, syntax or elaboration
errors, unknown laws and exceeded bounds.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import TextIO

from .lang import format_file, format_model, load, parse, run_directives, show_value
from .lang.elaborate import ElabError, Model, evaluate
from .lang.lexer import Diagnostic
from .lang.parser import QUERIES, parse_expression
from .lang.printer import show_program
from .lang.runner import query_value
from .lawsuite.engine import (ENUMERATION_BOUND, BoundExceeded, LawConfig, enumerate_programs,
                               run_suite)
from .lawsuite.registry import UnknownLaw
from .sets import StateSpace

OK, FAILED, ERROR = 0, 1, 2
DEFAULT_UNIVERSE = ("s0", "s1", "s2")


def _emit(out: TextIO, fmt: str, record: dict, text: str) -> None:
    out.write((json.dumps(record, sort_keys=False) if fmt == "jsonl" else text) + "\n")


def _diagnostics(diags: list[Diagnostic], source: str, err: TextIO) -> None:
    for d in diags:
        err.write(d.render(source) + "\n")


def _read(path: str, err: TextIO) -> str | None:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except (OSError, UnicodeDecodeError) as e:
        reason = e.strerror if isinstance(e, OSError) else e
        err.write(f"{path}: error: cannot read file: {reason}\n")
        return None


def _load_file(path: str, err: TextIO) -> Model | None:
    text = _read(path, err)
    if text is None:
        return None
    model, diags = load(text)
    if diags:
        _diagnostics(diags, path, err)
        return None
    return model


# -- run -----------------------------------------------------------------------------

def _witness_lines(witnesses: dict) -> list[str]:
    lines = []
    for key, value in witnesses.items():
        shown = value if isinstance(value, str) else json.dumps(value)
        lines.append(f"    {key}: {shown}")
    return lines


def cmd_run(args, out: TextIO, err: TextIO) -> int:
    status = OK
    for path in args.files:
        model = _load_file(path, err)
        if model is None:
            status = ERROR
            continue
        results = run_directives(model)
        for r in results:
            shown = r.value if r.value is not None else r.verdict
            text = "\n".join([f"{path}:{r.pos}: {r.text}: {shown}"] + _witness_lines(r.witnesses))
            _emit(out, args.format, {"file": path, **r.to_dict()}, text)
        failed = sum(not r.ok for r in results)
        if args.format == "text":
            out.write(f"{path}: {len(results)} directives, {failed} failed\n")
        if failed and status == OK:
            status = FAILED
    return status


# -- laws ------------------------------------------------------------------------------

def cmd_laws(args, out: TextIO, err: TextIO) -> int:
    config = LawConfig(size=args.size, mode=args.mode, samples=args.samples, seed=args.seed)
    try:
        suite = run_suite(args.law or None, (config,), workers=args.workers)
    except UnknownLaw as e:
        err.write(f"error: {e.args[0]}\n")
        return ERROR
    except BoundExceeded as e:
        err.write(f"error: {e}\n")
        return ERROR
    for r in suite.reports:
        record = r.to_dict(timing=args.timing)
        text = (f"{r.law_id:<20} {r.verdict:<18} cases={r.cases} excluded={r.excluded} "
                f"vacuous={r.vacuous} failures={r.failures}")
        if args.timing:
            text += f" millis={record['millis']}"
        for ex in r.counterexamples[:1]:
            text += "\n    counterexample: " + " ".join(f"{k}={v}" for k, v in ex.items())
        _emit(out, args.format, record, text)
    if args.format == "text":
        bad = suite.unexpected
        out.write(f"{len(suite.reports)} laws checked, {len(bad)} unexpected"
                  + (": " + ", ".join(r.law_id for r in bad) if bad else "") + "\n")
    return OK if suite.ok else FAILED


# -- eval --------------------------------------------------------------------------------

def cmd_eval(args, out: TextIO, err: TextIO) -> int:
    if args.file:
        model = _load_file(args.file, err)
        if model is None:
            return ERROR
        if model.space is None:
            err.write(f"{args.file}: error: no universe declared\n")
            return ERROR
    else:
        model = Model(StateSpace("S", DEFAULT_UNIVERSE))
    expr, diags = parse_expression(args.expr)
    if diags:
        _diagnostics(diags, "<expr>", err)
        return ERROR
    try:
        kind, value = evaluate(expr, model)
    except ElabError as e:
        _diagnostics([Diagnostic("error", e.pos, e.message, e.note)], "<expr>", err)
        return ERROR
    if args.print is None:
        out.write(show_value(value) + "\n")
        return OK
    relation_query = kind == "relation" and args.print in ("dom", "range")
    if kind not in ("program", "contract") and not relation_query:
        err.write(f"<expr>: error: cannot print {args.print} of a {kind}\n")
        return ERROR
    out.write(query_value(args.print, value) + "\n")
    return OK


# -- enumerate ---------------------------------------------------------------------------------

def cmd_enumerate(args, out: TextIO, err: TextIO) -> int:
    if args.size < 1:
        err.write("error: size must be at least 1\n")
        return ERROR
    try:
        programs = enumerate_programs(StateSpace.of_size(args.size))
        first = next(programs)
    except BoundExceeded:
        err.write(f"error: enumeration is limited to {ENUMERATION_BOUND} states, got {args.size}\n")
        return ERROR
    out.write(show_program(first) + "\n")
    for p in programs:
        out.write(show_program(p) + "\n")
    return OK


# -- format ------------------------------------------------------------------------------------

def cmd_format(args, out: TextIO, err: TextIO) -> int:
    text = _read(args.file, err)
    if text is None:
        return ERROR
    if args.model:
        model, diags = load(text)
        if diags:
            _diagnostics(diags, args.file, err)
            return ERROR
        out.write(format_model(model))
        return OK
    tree, diags = parse(text)
    if diags:
        _diagnostics(diags, args.file, err)
        return ERROR
    out.write(format_file(tree))
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="progtheory",
                                 description="Finite-state workbench for programs as "
                                             "postcondition/precondition pairs.")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="check the directives of TP files")
    run.add_argument("files", nargs="+")
    run.add_argument("--format", choices=("text", "jsonl"), default="text")
    run.set_defaults(func=cmd_run)

    laws = sub.add_parser("laws", help="model-check the registered laws")
    laws.add_argument("--law", action="append", help="law id; repeat to select several")
    laws.add_argument("--size", type=int, default=2, help="number of states (default 2)")
    laws.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    laws.add_argument("--samples", type=int, default=1000, help="cases per law in random mode")
    laws.add_argument("--seed", type=int, default=0)
    laws.add_argument("--format", choices=("text", "jsonl"), default="text")
    laws.add_argument("--timing", action="store_true",
                      help="report elapsed milliseconds (output is then not reproducible)")
    laws.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    laws.set_defaults(func=cmd_laws)

    ev = sub.add_parser("eval", help="evaluate an expression")
    ev.add_argument("file", nargs="?", help="TP file whose bindings are in scope")
    ev.add_argument("--expr", required=True)
    ev.add_argument("--print", choices=QUERIES, help="facet to print (default: the whole value)")
    ev.set_defaults(func=cmd_eval)

    en = sub.add_parser("enumerate", help="list every program over a small space")
    en.add_argument("--size", type=int, default=1)
    en.set_defaults(func=cmd_enumerate)

    fmt = sub.add_parser("format", help="print a TP file in canonical form")
    fmt.add_argument("file")
    fmt.add_argument("--model", action="store_true",
                     help="print the elaborated bindings as literals instead")
    fmt.set_defaults(func=cmd_format)
    return ap


def main(argv: list[str] | None = None, out: TextIO | None = None,
         err: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args, out or sys.stdout, err or sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
