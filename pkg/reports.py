"""Verification reports: the common return type of every identity suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class VerificationReport:
    suite: str
    params: dict[str, Any] = field(default_factory=dict)
    checks_run: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    notes: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, location: str, expected: Any = None, actual: Any = None) -> bool:
        """Count one check; record a failure entry when ``ok`` is false."""
        self.checks_run += 1
        if not ok:
            self.failures.append({"location": location, "expected": expected, "actual": actual})
        return ok

    def note(self, **entry: Any) -> None:
        self.notes.append(entry)

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "params": dict(self.params),
            "passed": self.passed,
            "checks_run": self.checks_run,
            "failures": list(self.failures),
            "notes": list(self.notes),
        }


def merge_reports(suite: str, reports: list[VerificationReport], **params: Any) -> VerificationReport:
    """Combine sub-suite reports; locations and notes get the sub-suite name."""
    merged = VerificationReport(suite, dict(params))
    for r in reports:
        merged.checks_run += r.checks_run
        for f in r.failures:
            merged.failures.append({**f, "location": f"{r.suite}: {f['location']}"})
        for n in r.notes:
            merged.notes.append({"suite": r.suite, **n})
    return merged
