from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from progtheory.lawsuite.engine import LawConfig, check_law
from progtheory.program import Program, from_code
from progtheory.sets import Condition, Relation, StateSpace, domain

sys.path.insert(0, str(Path(__file__).parent))

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

SPACES = {n: StateSpace.of_size(n) for n in range(1, 5)}


@lru_cache(maxsize=None)
def law_report(law_id: str, size: int = 2, mode: str = "exhaustive", samples: int = 1000,
               seed: int = 0):
    return check_law(law_id, LawConfig(size, mode, samples, seed))


@st.composite
def programs(draw, n: int | None = None):
    n = n or draw(st.integers(1, 4))
    sp = SPACES[n]
    return from_code(sp, draw(st.integers(0, (1 << (n * n + n)) - 1)))


@st.composite
def normal_programs(draw, n: int):
    """Feasible programs whose precondition is exactly the domain of their post."""
    r = draw(relations(n))
    return Program(r.space, r, domain(r))


def program_tuples(k: int, max_n: int = 4):
    """``k`` programs over one shared space."""
    return st.integers(1, max_n).flatmap(lambda n: st.tuples(*[programs(n)] * k))


def conditions(n: int):
    return st.integers(0, (1 << n) - 1).map(lambda b: Condition(SPACES[n], b))


def relations(n: int):
    return st.integers(0, (1 << (n * n)) - 1).map(lambda b: Relation(SPACES[n], b))


@pytest.fixture(scope="session")
def corpus() -> Path:
    return CORPUS


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
