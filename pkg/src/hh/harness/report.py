"""JSON-lines reports, one record per check."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

STATUSES = ("pass", "fail", "skip")


@dataclass
class CheckRecord:
    check: str
    anchor: str
    status: str
    residual: str = "0"
    detail: str = ""
    wall_time: float = 0.0

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "check": self.check,
            "anchor": self.anchor,
            "status": self.status,
            "residual": self.residual,
            "detail": self.detail,
        }
        if timings:
            d["wall_time"] = round(self.wall_time, 6)
        return d


@dataclass
class SuiteReport:
    suite: str
    config: dict
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.records)

    def counts(self) -> dict:
        return {s: sum(r.status == s for r in self.records) for s in STATUSES}

    def to_jsonl(self, timings: bool = False) -> str:
        lines = [json.dumps({"suite": self.suite, "config": self.config}, sort_keys=True)]
        for r in self.records:
            lines.append(json.dumps({"suite": self.suite, **r.to_dict(timings)}, sort_keys=True))
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        c = self.counts()
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.suite}: {verdict} ({c['pass']} pass, {c['fail']} fail, {c['skip']} skip)"
