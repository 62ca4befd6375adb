from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class TheoremViolation(AssertionError):
    """A checked theorem produced a counterexample on a concrete instance."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of a checker, with witnesses explaining a failure.

    ``status`` refines ``ok`` when a checker distinguishes several ways of
    failing (for example a precondition that does not hold versus a genuine
    violation).
    """

    ok: bool
    status: str = ""
    witnesses: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls, status: str = "pass", **witnesses: Any) -> "Verdict":
        return cls(True, status, witnesses)

    @classmethod
    def failed(cls, status: str = "fail", **witnesses: Any) -> "Verdict":
        return cls(False, status, witnesses)
