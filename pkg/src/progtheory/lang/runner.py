"""Evaluate queued directives against a model."""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import program as pg
from ..contracts import is_correct
from ..lawsuite.engine import LawConfig, check_law
from ..loops import (check_loop_correctness, check_loop_feasibility, check_variant, is_invariant,
                     is_loop_invariant, variant_violations)
from ..program import Program
from ..sets import Condition, ModelError, Relation, domain, image, range_of
from ..verdict import TheoremViolation, Verdict
from . import ast
from .elaborate import Directive, Model, as_program
from .printer import show_condition, show_value


@dataclass(frozen=True)
class Result:
    pos: ast.Pos
    text: str
    verdict: str  # pass | fail | error
    value: str | None = None
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        out = {"id": self.text, "position": str(self.pos), "verdict": self.verdict}
        if self.value is not None:
            out["value"] = self.value
        out["witnesses"] = self.witnesses
        return out


def plain(v):
    """Witness values as deterministic JSON-friendly data."""
    if isinstance(v, (Condition, Relation, Program)):
        return show_value(v)
    if isinstance(v, dict):
        return {str(k): plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        items = [plain(x) for x in v]
        return [list(x) if isinstance(x, tuple) else x for x in items]
    return v


def _outcome(v: Verdict | bool, **witnesses) -> tuple[bool, dict]:
    if isinstance(v, Verdict):
        merged = dict(v.witnesses)
        if v.status and v.status not in ("pass", "fail"):
            merged = {"status": v.status, **merged}
        return v.ok, merged
    return bool(v), ({} if v else witnesses)


def _evaluate(d: Directive) -> tuple[bool, dict]:
    kind, args = d.item.kind, d.args
    if kind == "feasible":
        p = as_program(args[0])
        return _outcome(pg.is_feasible(p), infeasible=pg.infeasible_states(p))
    if kind == "refines":
        return _outcome(pg.check_refines(as_program(args[0]), as_program(args[1])))
    if kind == "equivalent":
        p, q = map(as_program, args)
        return _outcome(pg.equivalent(p, q), left=p, right=q)
    if kind == "commutes":
        p, q = map(as_program, args)
        return _outcome(pg.commutes(p, q), **{"p;q": pg.seq(p, q), "q;p": pg.seq(q, p)})
    if kind == "correct":
        return _outcome(is_correct(args[0]))
    if kind == "invariant":
        inv, p = args[0], as_program(args[1])
        escaping = image(p.post, inv & p.pre) - inv
        return _outcome(is_invariant(inv, p), escaping=escaping)
    if kind == "loop_invariant":
        inv, loop = args
        body = loop.spec.guarded_body
        return _outcome(is_loop_invariant(inv, loop.spec),
                        uninitialised=loop.spec.init.range - inv,
                        escaping=image(body.post, inv & body.pre) - inv)
    if kind == "loop_correct":
        return _outcome(check_loop_correctness(args[1].spec, args[0]))
    if kind == "loop_feasible":
        ok, witnesses = _outcome(check_loop_feasibility(args[0].spec))
        if not ok:
            witnesses["pre_init"] = args[0].spec.init.pre
            witnesses["pre_loop"] = args[0].program.pre
        return ok, witnesses
    if kind == "variant":
        v, loop = args
        return _outcome(check_variant(v, loop.spec), violations=variant_violations(v, loop.spec))
    if kind == "law":
        report = check_law(args[0], LawConfig())
        witnesses = {"cases": report.cases, "failures": report.failures}
        if report.counterexamples:
            witnesses["counterexample"] = report.counterexamples[0]
        return report.failures == 0, witnesses
    raise ValueError(f"unknown directive kind {kind!r}")


def query_value(query: str, value) -> str:
    if isinstance(value, Relation):
        return show_condition(domain(value) if query == "dom" else range_of(value))
    p = value.contract if hasattr(value, "contract") else as_program(value)
    if query == "classify":
        return str(pg.classify_program(p))
    facet = {"post": p.post, "pre": p.pre, "range": p.range, "dom": domain(p.post)}[query]
    return show_value(facet)


def run_directive(d: Directive) -> Result:
    pos = d.item.pos
    try:
        if isinstance(d.item, ast.Print):
            return Result(pos, d.text, "pass", value=query_value(d.item.query, d.args[0]))
        ok, witnesses = _evaluate(d)
    except (ModelError, TheoremViolation) as err:
        return Result(pos, d.text, "error", witnesses={"explanation": str(err)})
    if d.item.negated:
        ok = not ok
    return Result(pos, d.text, "pass" if ok else "fail", witnesses=plain(witnesses))


def run_directives(model: Model) -> list[Result]:
    """Run every directive in file order."""
    return [run_directive(d) for d in model.directives]
