"""Exhaustive and randomized checking of registered laws."""

from __future__ import annotations

import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterator

import numpy as np

from .. import program as pg
from ..sets import Condition, ModelError, Relation, StateSpace, rel_restrict
from . import generate as gen
from .algebra import ObjectAlgebra, TableAlgebra, tables_for
from .registry import CONDITION, PROGRAM, REFINEMENT, RELATION, Law, get_law, law_ids

ENUMERATION_BOUND = 3   # largest space enumerate_programs accepts
TABLE_BOUND = 2         # largest space checked with vectorised tables
OBJECT_CASE_LIMIT = 300_000
CHUNK = 1 << 22
MAX_RECORDED = 5


class BoundExceeded(ModelError):
    pass


@dataclass(frozen=True)
class LawConfig:
    size: int = 2
    mode: str = "exhaustive"
    samples: int = 1000
    seed: int = 0
    # reading overrides, used to show that a weaker reading really fails
    equality: str | None = None
    domain: str | None = None


@dataclass
class LawReport:
    law_id: str
    mode: str
    size: int
    cases: int
    excluded: int
    vacuous: int
    failures: int
    counterexamples: list[dict[str, str]]
    elapsed: float
    expected: str
    witness_reproduced: bool | None = None
    seed: int | None = None

    @property
    def ok(self) -> bool:
        """The outcome matches the registry's expectation."""
        if self.expected == "holds":
            return self.failures == 0
        return bool(self.witness_reproduced)

    @property
    def verdict(self) -> str:
        if self.expected == "holds":
            return "pass" if self.ok else "FAIL"
        return "fails-as-expected" if self.ok else "UNEXPECTED-PASS"

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "id": self.law_id,
            "verdict": self.verdict,
            "mode": self.mode,
            "size": self.size,
            "cases": self.cases,
            "excluded": self.excluded,
            "vacuous": self.vacuous,
            "failures": self.failures,
            "witnesses": self.counterexamples,
            "expected": self.expected,
        }
        if self.seed is not None:
            d["seed"] = self.seed
        if self.witness_reproduced is not None:
            d["recorded_counterexample"] = ("reproduced" if self.witness_reproduced
                                            else "not-reproduced")
        if timing:
            d["millis"] = round(self.elapsed * 1000)
        return d


# -- enumeration and sampling --------------------------------------------------

def enumerate_programs(space: StateSpace, bound: int = ENUMERATION_BOUND) -> Iterator[pg.Program]:
    """All programs over ``space`` in increasing code order."""
    if space.size > bound:
        raise BoundExceeded(f"cannot enumerate programs over {space.size} states (bound {bound}); "
                            f"use random mode instead")
    for code in range(1 << (space.size * space.size + space.size)):
        yield pg.from_code(space, code)


def random_program(space: StateSpace, seed: int | str | random.Random = 0,
                   feasible_only: bool = False) -> pg.Program:
    return gen.random_program(space, seed, "feasible" if feasible_only else "all")


def in_domain(p: pg.Program, domain: str) -> bool:
    if domain == "all":
        return True
    if not pg.is_feasible(p):
        return False
    return domain == "feasible" or rel_restrict(p.post, p.pre) == p.post


# -- evaluation ------------------------------------------------------------------

def _split(result):
    if isinstance(result, tuple):
        return result
    return True, result


def _show(value) -> str:
    return str(value)


def _describe(part, values) -> dict[str, str]:
    out = {"part": part.name} if part.name else {}
    for slot, v in zip(part.slots, values):
        if slot.kind == REFINEMENT:
            for name, piece in zip(slot.names, v):
                out[name] = _show(piece)
        else:
            out[slot.name] = _show(v)
    return out


def replay(law: Law, values, equality: str | None = None, part: str = "") -> tuple[bool, bool]:
    """Evaluate one part of ``law`` on a concrete tuple: ``(antecedent, consequent)``."""
    space = _space_of(values[0])
    A = ObjectAlgebra(space, equality or law.equality)
    ante, cons = _split(law.part(part).check(A, *values))
    return bool(ante), bool(cons)


def _space_of(v) -> StateSpace:
    return v[0].space if isinstance(v, tuple) else v.space


def _witness_reproduced(law: Law) -> bool | None:
    if law.witness is None:
        return None
    ante, cons = replay(law, law.witness.values, part=law.witness.part)
    return ante and not cons


def check_law(law_id: str, config: LawConfig = LawConfig()) -> LawReport:
    law = get_law(law_id)
    equality = config.equality or law.equality
    domain = config.domain or law.domain
    if config.mode == "exhaustive":
        run = (_exhaustive_tables if config.size <= TABLE_BOUND else _exhaustive_objects)
        args = (config.size, equality, domain)
        seed = None
    elif config.mode == "random":
        run, args, seed = _random, (config, equality, domain), config.seed
    else:
        raise ValueError(f"unknown mode {config.mode!r}; expected exhaustive or random")
    start = time.perf_counter()
    cases = excluded = vacuous = failures = 0
    examples: list[dict[str, str]] = []
    for part in law.parts:
        c, x, v, f, ex = run(law.id, part, *args)
        cases, excluded, vacuous, failures = cases + c, excluded + x, vacuous + v, failures + f
        examples.extend(ex[:MAX_RECORDED - len(examples)])
    return LawReport(law.id, config.mode, config.size, cases, excluded, vacuous, failures, examples,
                     time.perf_counter() - start, law.expected, _witness_reproduced(law), seed)


def _domain_mask(T, domain: str):
    if domain == "all":
        return np.ones(T.n_progs, dtype=bool)
    return T.feasible if domain == "feasible" else T.normal


def _slot_arrays(T, slot, domain: str):
    dom = slot.domain or domain
    if slot.kind == PROGRAM:
        return (np.nonzero(_domain_mask(T, dom))[0].astype(T.pdtype),)
    if slot.kind == CONDITION:
        return (np.arange(T.n_conds, dtype=T.cdtype),)
    if slot.kind == RELATION:
        return (np.arange(T.n_rels, dtype=T.rdtype),)
    mask = _domain_mask(T, dom)
    q, p = np.nonzero(T.refines & mask[:, None] & mask[None, :])
    return q.astype(T.pdtype), p.astype(T.pdtype)


def _decode(T, slot, value):
    if slot.kind == PROGRAM:
        return T.programs[int(value)]
    if slot.kind == CONDITION:
        return T.conditions[int(value)]
    if slot.kind == RELATION:
        return T.relations[int(value)]
    return (T.programs[int(value[0])], T.programs[int(value[1])])


def _unfiltered_count(n: int, slot) -> int:
    """Values a slot ranges over before any domain filter.

    Refinement pairs factor over states: where ``p`` accepts, ``q`` must
    accept and pick a subset of ``p``'s row (``3^n`` row pairs); elsewhere
    both rows and ``q``'s acceptance are free (``2·4^n``).
    """
    if slot.kind == CONDITION:
        return 1 << n
    if slot.kind == RELATION:
        return 1 << (n * n)
    if slot.kind == PROGRAM:
        return 1 << (n * n + n)
    return (3 ** n + 2 * 4 ** n) ** n


def _exhaustive_tables(law_id: str, part, n: int, equality: str, domain: str):
    T = tables_for(n)
    A = TableAlgebra(T, equality)
    domains = [_slot_arrays(T, s, domain) for s in part.slots]
    sizes = [len(d[0]) for d in domains]
    total = math.prod(sizes)
    vacuous = failures = 0
    examples: list[dict[str, str]] = []
    for lo in range(0, total, CHUNK):
        flat = np.arange(lo, min(total, lo + CHUNK), dtype=np.int64)
        idx = np.unravel_index(flat, sizes) if sizes else ()
        values = [d[0][i] if len(d) == 1 else (d[0][i], d[1][i]) for d, i in zip(domains, idx)]
        ante, cons = _split(part.check(A, *values))
        ante = np.broadcast_to(np.asarray(ante, dtype=bool), flat.shape)
        cons = np.broadcast_to(np.asarray(cons, dtype=bool), flat.shape)
        vacuous += int((~ante).sum())
        bad = ante & ~cons
        failures += int(bad.sum())
        for k in np.nonzero(bad)[0][:MAX_RECORDED - len(examples)]:
            concrete = []
            for slot, d, i in zip(part.slots, domains, idx):
                raw = d[0][i[k]] if len(d) == 1 else (d[0][i[k]], d[1][i[k]])
                concrete.append(_decode(T, slot, raw))
            examples.append(_describe(part, concrete))
    unfiltered = math.prod(_unfiltered_count(n, s) for s in part.slots)
    return unfiltered, unfiltered - total, vacuous, failures, examples


def _object_domain(space: StateSpace, slot, domain: str) -> list:
    dom = slot.domain or domain
    if slot.kind == CONDITION:
        return [Condition(space, k) for k in range(1 << space.size)]
    if slot.kind == RELATION:
        return [Relation(space, k) for k in range(1 << (space.size * space.size))]
    progs = [p for p in enumerate_programs(space) if in_domain(p, dom)]
    if slot.kind == PROGRAM:
        return progs
    return [(q, p) for p in progs for q in progs if pg.refines(q, p)]


def _estimate(space: StateSpace, slot) -> int:
    n = space.size
    if slot.kind == CONDITION:
        return 1 << n
    if slot.kind == RELATION:
        return 1 << (n * n)
    progs = 1 << (n * n + n)
    return progs if slot.kind == PROGRAM else progs * progs


def _exhaustive_objects(law_id: str, part, n: int, equality: str, domain: str):
    space = StateSpace.of_size(n)
    estimate = math.prod(_estimate(space, s) for s in part.slots)
    if n > ENUMERATION_BOUND or estimate > OBJECT_CASE_LIMIT:
        raise BoundExceeded(f"{law_id}: exhaustive check over {n} states needs about "
                            f"{estimate} cases "
                            f"(limit {OBJECT_CASE_LIMIT}); use random mode instead")
    A = ObjectAlgebra(space, equality)
    doms = [_object_domain(space, s, domain) for s in part.slots]
    cases = vacuous = failures = 0
    examples: list[dict[str, str]] = []
    for values in itertools.product(*doms):
        cases += 1
        ante, cons = _split(part.check(A, *values))
        if not ante:
            vacuous += 1
        elif not cons:
            failures += 1
            if len(examples) < MAX_RECORDED:
                examples.append(_describe(part, values))
    unfiltered = math.prod(_unfiltered_count(n, s) for s in part.slots)
    return unfiltered, unfiltered - cases, vacuous, failures, examples


def _draw(rng: random.Random, space: StateSpace, slot, env: dict, domain: str):
    dom = slot.domain or domain
    if slot.hint is not None:
        value = slot.hint(rng, space, env, dom)
        if slot.kind != PROGRAM or in_domain(value, dom):
            return value
    if slot.kind == CONDITION:
        return gen.random_condition(rng, space)
    if slot.kind == RELATION:
        return gen.random_relation(rng, space)
    p = gen.random_program(space, rng, dom)
    if slot.kind == PROGRAM:
        return p
    return (gen.random_refinement(rng, p, dom), p)


def _random(law_id: str, part, config: LawConfig, equality: str, domain: str):
    space = StateSpace.of_size(config.size)
    A = ObjectAlgebra(space, equality)
    rng = random.Random(f"{config.seed}:{law_id}:{part.name}")
    vacuous = failures = 0
    examples: list[dict[str, str]] = []
    for i in range(config.samples):
        # alternate unconditioned and feasible-only draws
        dom = "feasible" if domain == "all" and i % 2 else domain
        env: dict = {}
        values = []
        for slot in part.slots:
            v = _draw(rng, space, slot, env, dom)
            values.append(v)
            env[slot.name] = v
            if slot.kind == REFINEMENT:
                env.update(zip(slot.names, v))
        ante, cons = _split(part.check(A, *values))
        if not ante:
            vacuous += 1
        elif not cons:
            failures += 1
            if len(examples) < MAX_RECORDED:
                examples.append(_describe(part, values))
    return config.samples, 0, vacuous, failures, examples


# -- suites ----------------------------------------------------------------------

DEFAULT_CONFIGS = (LawConfig(2, "exhaustive"), LawConfig(4, "random", 1000, 0))


@dataclass
class SuiteReport:
    reports: list[LawReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    @property
    def unexpected(self) -> list[LawReport]:
        return [r for r in self.reports if not r.ok]


def _check_pair(args) -> LawReport:
    law_id, config = args
    return check_law(law_id, config)


def run_suite(laws: list[str] | None = None, configs=DEFAULT_CONFIGS,
              workers: int = 1) -> SuiteReport:
    """Check every selected law under every config, ordered by law then config."""
    ids = law_ids() if laws is None else [get_law(i).id for i in laws]
    jobs = [(i, c) for i in ids for c in configs]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = list(pool.map(_check_pair, jobs))
    else:
        reports = [_check_pair(j) for j in jobs]
    return SuiteReport(reports)


def with_seed(config: LawConfig, seed: int) -> LawConfig:
    return replace(config, seed=seed)
