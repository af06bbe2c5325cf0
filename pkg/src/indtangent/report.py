"""Pass/fail reports shared by every axiom checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: Optional[str] = None

    def line(self) -> str:
        if self.passed:
            return f"PASS {self.name}"
        return f"FAIL {self.name}: {self.witness or 'no witness'}"

    def record(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witness": self.witness}


@dataclass
class Report:
    title: str = ""
    results: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Optional[str] = None) -> bool:
        self.results.append(CheckResult(name, bool(passed), None if passed else witness))
        return bool(passed)

    def merge(self, other: "Report", prefix: str = "") -> None:
        for r in other.results:
            self.results.append(CheckResult(prefix + r.name, r.passed, r.witness))
        self.notes.extend(n for n in other.notes if n not in self.notes)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def lines(self) -> list:
        return [r.line() for r in self.results]

    def __iter__(self) -> Iterator[CheckResult]:
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)

    def __str__(self) -> str:
        head = [f"# {n}" for n in self.notes]
        return "\n".join(head + self.lines())
