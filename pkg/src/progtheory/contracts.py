"""Contracted programs, weakest preconditions and strongest postconditions.

``require Pre do b ensure post end`` claims that ``b`` is a feasible
refinement of ``⟨post, Pre⟩``.  :func:`is_correct` decides the claim from
that definition and also evaluates the subtraction formula
``Pre ⊆ wp(b, post)``.  The two agree whenever ``b`` is feasible; for an
infeasible body the formula can hold while the definition does not, since
feasibility of ``b`` is a property of states outside ``Pre`` as well.
"""

from __future__ import annotations

from dataclasses import dataclass

from .program import Program, is_feasible, infeasible_states, refines
from .sets import Condition, ModelError, Relation, _check_space, domain, rel_restrict
from .verdict import TheoremViolation, Verdict


@dataclass(frozen=True)
class ContractedProgram:
    pre: Condition
    post: Relation
    body: Program

    def __post_init__(self) -> None:
        _check_space(self.pre.space, self.post.space)
        _check_space(self.pre.space, self.body.space)

    @property
    def space(self):
        return self.body.space

    @property
    def contract(self) -> Program:
        return Program(self.space, self.post, self.pre)

    def __str__(self) -> str:
        return f"require {self.pre} do {self.body} ensure {self.post} end"


def wp(b: Program, post: Relation) -> Condition:
    """States of ``Pre_b`` on which every result of ``b`` is allowed by ``post``."""
    _check_space(b.space, post.space)
    return b.pre - domain(b.post - post)


def wp_goal(b: Program, goal: Condition) -> Condition:
    """``wp`` for a one-state goal: ``wp(b, S × goal)``."""
    _check_space(b.space, goal.space)
    sp = b.space
    return wp(b, Relation(sp, goal.bits * sp._rep))


def sp(b: Program, pre: Condition) -> Relation:
    """``post_b`` restricted to ``pre``."""
    return rel_restrict(b.post, pre)


def correct_by_formula(cp: ContractedProgram) -> bool:
    return cp.pre <= wp(cp.body, cp.post)


def correct_by_definition(cp: ContractedProgram) -> bool:
    return is_feasible(cp.body) and refines(cp.body, cp.contract)


def is_correct(cp: ContractedProgram) -> Verdict:
    """Correctness verdict with witnesses.

    The verdict follows the definition (feasible refinement).  For a
    feasible body the formula must agree, otherwise :class:`TheoremViolation`
    is raised.
    """
    by_def = correct_by_definition(cp)
    by_formula = correct_by_formula(cp)
    feasible = is_feasible(cp.body)
    if feasible and by_def != by_formula:
        raise TheoremViolation(f"correctness formulations disagree on {cp}")
    if by_def:
        return Verdict.passed(formula=by_formula)
    witnesses: dict = {"formula": by_formula}
    if not feasible:
        witnesses["infeasible_body_states"] = list(infeasible_states(cp.body).members)
    violating = cp.pre - wp(cp.body, cp.post)
    if violating.bits:
        witnesses["violating_states"] = list(violating.members)
        forbidden = rel_restrict(cp.body.post, cp.pre) - cp.post
        witnesses["forbidden_pairs"] = list(forbidden.pairs)
    return Verdict(False, "infeasible-body" if not feasible else "incorrect", witnesses)


def most_abstract_implementation(p: Program) -> ContractedProgram:
    """``require Pre_p do p ensure post_p end`` for a feasible ``p``."""
    if not is_feasible(p):
        raise ModelError(f"most abstract implementation needs a feasible program; "
                         f"{p} is infeasible")
    return ContractedProgram(p.pre, p.post, p)


def contract_refines(cp2: ContractedProgram, cp1: ContractedProgram) -> bool:
    """Same contract and the body of ``cp2`` refines that of ``cp1``."""
    if cp2.space != cp1.space:
        return False
    return cp2.pre == cp1.pre and cp2.post == cp1.post and refines(cp2.body, cp1.body)
