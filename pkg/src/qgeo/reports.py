"""Check reports shared by every verification routine."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import List, Optional


@dataclass
class Violation:
    kind: str  # "relation" | "word" | "pair" | "entry" | ...
    label: str
    residual: str

    def to_dict(self):
        return {self.kind: self.label, "residual": self.residual}


@dataclass
class CheckReport:
    model: str
    check: str
    degree_bound: Optional[int] = None
    violations: List[Violation] = field(default_factory=list)
    elapsed_ms: float = 0.0
    notes: List[str] = field(default_factory=list)
    skipped: bool = False

    @property
    def status(self):
        if self.skipped:
            return "skipped"
        return "fail" if self.violations else "pass"

    @property
    def ok(self):
        return not self.violations

    def fail(self, kind, label, residual):
        self.violations.append(Violation(kind, str(label), str(residual)))

    def merge(self, other: "CheckReport"):
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)

    def to_dict(self, with_time=True):
        d = {
            "model": self.model,
            "check": self.check,
            "degree_bound": self.degree_bound,
            "status": self.status,
            "violations": [v.to_dict() for v in self.violations],
        }
        if self.notes:
            d["notes"] = list(self.notes)
        if with_time:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d

    def __str__(self):
        head = f"[{self.status.upper():4}] {self.model} :: {self.check}"
        if self.degree_bound is not None:
            head += f" (degree <= {self.degree_bound})"
        lines = [head]
        for n in self.notes:
            lines.append(f"    note: {n}")
        for v in self.violations[:20]:
            lines.append(f"    {v.kind} {v.label}: residual {v.residual}")
        if len(self.violations) > 20:
            lines.append(f"    ... {len(self.violations) - 20} more")
        return "\n".join(lines)


@contextmanager
def timed(report: CheckReport):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed_ms += (time.perf_counter() - t0) * 1000.0


def export_report(reports, format="json", with_time=True) -> bytes:
    """Serialise reports.  JSON is a list of report objects; text is one block per report."""
    if format == "json":
        return json.dumps([r.to_dict(with_time) for r in reports], indent=2).encode()
    if format == "text":
        return ("\n".join(str(r) for r in reports) + ("\n" if reports else "")).encode()
    raise ValueError(f"unknown format {format!r}")
