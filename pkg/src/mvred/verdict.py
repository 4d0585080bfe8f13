"""Pass/fail reports returned by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Verdict:
    check: str
    passed: bool
    counterexample: object = None
    details: dict = field(default_factory=dict)
    witness_key: str = "counterexample"

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        out = {"check": self.check, "pass": self.passed}
        out.update(self.details)
        if not self.passed and self.counterexample is not None:
            out[self.witness_key] = self.counterexample
        return out
