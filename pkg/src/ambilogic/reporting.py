"""Structured pass/fail reports used by validators and verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Violation:
    kind: str
    message: str
    context: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "message": self.message, "context": self.context}


@dataclass
class Report:
    """A list of violations; empty means the checked property holds."""

    entries: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.entries

    def add(self, kind: str, message: str, **context) -> None:
        self.entries.append(Violation(kind, message, context))

    def kinds(self):
        return {v.kind for v in self.entries}

    def extend(self, other: "Report") -> None:
        self.entries.extend(other.entries)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.entries]}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join("%s: %s" % (v.kind, v.message) for v in self.entries)
