from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "PASS"
FAIL = "FAIL"
VACUOUS = "VACUOUS"
FLAG = "FLAG"


@dataclass
class Check:
    name: str
    status: str
    witness: dict[str, Any] = field(default_factory=dict)
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAIL


@dataclass
class VerificationReport:
    """Ordered list of named checks.  FLAG and VACUOUS do not count as failures."""

    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, status: str, message: str = "", **witness) -> Check:
        check = Check(name, status, witness, message)
        self.checks.append(check)
        return check

    def fail(self, name: str, message: str, **witness) -> Check:
        return self.add(name, FAIL, message, **witness)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def names(self, status: str | None = None) -> list[str]:
        return [c.name for c in self.checks if status is None or c.status == status]

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            line = f"{c.name}: {c.status}"
            if c.message:
                line += f" ({c.message})"
            lines.append(line)
        return "\n".join(lines)
