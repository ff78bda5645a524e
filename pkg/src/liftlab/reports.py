"""Structured pass/fail reports shared by verifiers, audits and probes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_payload(self) -> dict:
        payload: dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.detail:
            payload["detail"] = self.detail
        return payload


@dataclass(frozen=True)
class CheckReport:
    """Named checks plus free-form context; passes iff every check passes."""

    subject: str
    checks: tuple[Check, ...]
    info: Mapping[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def to_payload(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_payload() for c in self.checks],
            "info": dict(self.info),
        }
