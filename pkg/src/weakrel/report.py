"""Verification reports: one record per checked identity, merged into a suite."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

MAX_STORED_FAILURES = 10


@dataclass
class CheckRecord:
    name: str
    anchor: str = ""
    trials: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    failure_count: int = 0
    cell: tuple[int, int] | None = None

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def tick(self, ok: bool, **detail) -> bool:
        """Count one trial; keep the first few failures verbatim."""
        self.trials += 1
        if not ok:
            self.fail(**detail)
        return ok

    def fail(self, **detail) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_STORED_FAILURES:
            self.failures.append({k: _jsonable(v) for k, v in detail.items()})

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"name": self.name, "anchor": self.anchor}
        if self.cell is not None:
            d["cell"] = list(self.cell)
        d["trials"] = self.trials
        d["failure_count"] = self.failure_count
        d["failures"] = self.failures
        return d


@dataclass
class VerificationReport:
    suite: str
    checks: list[CheckRecord] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    def check(self, name: str, anchor: str = "", cell=None) -> CheckRecord:
        rec = CheckRecord(name=name, anchor=anchor, cell=cell)
        self.checks.append(rec)
        return rec

    def extend(self, other: "VerificationReport", prefix: str | None = None) -> None:
        for rec in other.checks:
            if prefix:
                rec.name = f"{prefix}/{rec.name}"
            self.checks.append(rec)

    def __getitem__(self, name: str) -> CheckRecord:
        for rec in self.checks:
            if rec.name == name:
                return rec
        raise KeyError(name)

    @property
    def passed(self) -> bool:
        return all(rec.passed for rec in self.checks)

    @property
    def failed_checks(self) -> list[CheckRecord]:
        return [rec for rec in self.checks if not rec.passed]

    def to_dict(self) -> dict[str, Any]:
        out = {
            "suite": self.suite,
            "verdict": "pass" if self.passed else "fail",
            "checks": [rec.to_dict() for rec in self.checks],
        }
        if self.info:
            out["info"] = {k: _jsonable(v) for k, v in self.info.items()}
        return out

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"{self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for rec in self.checks:
            status = "ok  " if rec.passed else "FAIL"
            cell = f" {list(rec.cell)}" if rec.cell is not None else ""
            lines.append(f"  [{status}] {rec.name}{cell}: {rec.trials} trials, {rec.failure_count} failures")
            for f in rec.failures[:3]:
                lines.append(f"         counterexample: {json.dumps(f)}")
        return "\n".join(lines)


def _jsonable(v):
    from fractions import Fraction

    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if hasattr(v, "to_json"):
        return v.to_json()
    if hasattr(v, "item") and not isinstance(v, (str, bytes)):
        return v.item()
    return v
