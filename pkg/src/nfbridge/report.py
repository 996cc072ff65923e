"""Suite reports and their JSON / CSV serialization."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__

CSV_COLUMNS = ("id", "paper_eq", "pass", "detail")


@dataclass(frozen=True)
class Check:
    id: str
    paper_eq: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"id": self.id, "paper_eq": self.paper_eq, "pass": bool(self.passed), "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    mode: str
    seed: int
    checks: list[Check] = field(default_factory=list)
    scenario: dict = field(default_factory=dict)
    kappas: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    wall_time_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> dict:
        n_pass = sum(1 for c in self.checks if c.passed)
        return {
            "total": len(self.checks),
            "passed": n_pass,
            "failed": len(self.checks) - n_pass,
            "pass": self.passed,
            "kappas": self.kappas,
            "residuals": self.residuals,
            "scenario": self.scenario,
            "tool_version": __version__,
            "wall_time_s": self.wall_time_s,
        }

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "mode": self.mode,
            "seed": self.seed,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary(),
        }


def summarize(checks: list[dict]) -> dict:
    """Recompute the pass counts from serialized checks."""
    n_pass = sum(1 for c in checks if c["pass"])
    return {"total": len(checks), "passed": n_pass, "failed": len(checks) - n_pass, "pass": n_pass == len(checks)}


def to_json(report: SuiteReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=False)


def to_csv(report: SuiteReport) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for c in report.checks:
        row = c.to_dict()
        row["pass"] = "true" if row["pass"] else "false"
        w.writerow(row)
    return buf.getvalue()


def emit_report(report: SuiteReport, fmt: str, path: str | Path) -> None:
    """Write ``report`` as ``json`` or ``csv``; ``path == '-'`` writes to stdout."""
    if fmt == "json":
        text = to_json(report) + "\n"
    elif fmt == "csv":
        text = to_csv(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if str(path) == "-":
        import sys

        sys.stdout.write(text)
        return
    Path(path).write_text(text)
