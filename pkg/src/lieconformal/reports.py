"""Shared pass/fail/skipped reporting for all check suites.

Checks are appended in a deterministic order by every producer; a report
fails iff any single check fails.  Skipped checks (out-of-truncation
identities) are first-class and never count as passes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass(frozen=True)
class CheckItem:
    check_id: str
    status: str
    witnesses: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "id": self.check_id,
            "status": self.status,
            "witnesses": list(self.witnesses),
        }


@dataclass
class Report:
    title: str
    checks: list[CheckItem] = field(default_factory=list)

    def add(self, check_id: str, status: str, witnesses: tuple[str, ...] = ()) -> None:
        self.checks.append(CheckItem(check_id, status, witnesses))

    def ok(self, check_id: str) -> None:
        self.add(check_id, PASS)

    def fail(self, check_id: str, *witnesses: str) -> None:
        self.add(check_id, FAIL, tuple(witnesses))

    def skip(self, check_id: str, *witnesses: str) -> None:
        self.add(check_id, SKIPPED, tuple(witnesses))

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def failures(self) -> list[CheckItem]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def skipped(self) -> list[CheckItem]:
        return [c for c in self.checks if c.status == SKIPPED]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "status": PASS if self.passed else FAIL,
            "counts": {
                "pass": sum(1 for c in self.checks if c.status == PASS),
                "fail": len(self.failures),
                "skipped": len(self.skipped),
            },
            "checks": [c.to_dict() for c in self.checks],
        }

    def summary(self) -> str:
        d = self.to_dict()
        counts = d["counts"]
        return (
            f"{self.title}: {d['status']} "
            f"({counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped)"
        )
