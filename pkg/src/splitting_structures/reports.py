"""
Report records shared by the checks and suites.
"""
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class LawReport:
    law: str
    checked: int
    violations: tuple[dict[str, Any], ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict[str, Any]:
        return {"law": self.law, "checked": self.checked, "violations": list(self.violations)}


@dataclass
class SuiteReport:
    suite: str
    checks: list[LawReport] = field(default_factory=list)

    def add(self, report: LawReport) -> LawReport:
        self.checks.append(report)
        return report

    @property
    def violations(self) -> list[dict[str, Any]]:
        return [{"law": c.law, **v} for c in self.checks for v in c.violations]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {"suite": self.suite, "checks": [c.to_dict() for c in self.checks]}
