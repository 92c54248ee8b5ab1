"""Check reports shared by validators and reconstruction drivers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def jsonable(x: Any) -> Any:
    """Turn witnesses into plain JSON values (Fractions become "p/q" strings)."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(jsonable(v) for v in x)
    return x


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None


@dataclass
class Report:
    subject: str
    checks: list[Check] = field(default_factory=list)
    derived: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, witness: Any = None) -> bool:
        if not passed and witness is None:
            raise ValueError(f"failed check {name!r} needs a witness")
        self.checks.append(Check(name, bool(passed), None if passed else jsonable(witness)))
        return passed

    def extend(self, other: Report, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "checks": [{"name": c.name, "pass": c.passed, "witness": c.witness} for c in self.checks],
            "derived": jsonable(self.derived),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"subject: {self.subject}"]
        if not self.checks:
            lines.append("no checks run")
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"{status}  {c.name}"
            if not c.passed:
                line += f"  witness={json.dumps(c.witness, sort_keys=True)}"
            lines.append(line)
        for k in sorted(self.derived):
            lines.append(f"derived {k}: {json.dumps(jsonable(self.derived[k]), sort_keys=True)}")
        return "\n".join(lines) + "\n"


ValidationReport = Report
ReconstructionReport = Report
