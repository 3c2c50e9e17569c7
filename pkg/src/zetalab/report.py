"""Experiment reports: scalar summaries, aligned series tables, and checks.

A report is a plain record of what an experiment computed: the
configuration knobs it ran with, named scalar outcomes, aligned columns of
per-item values (per-k gaps, per-cell diagnostics, scan grids), and a list
of pass/fail checks with their measured values and budgets.  Writers are
atomic (temp file in the target directory, then rename) so a crashed run
never leaves a half-written artifact behind.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import ValidationError


@dataclass(frozen=True)
class CheckResult:
    """A single named comparison: value measured against a budget."""

    name: str
    passed: bool
    value: float
    budget: float
    note: str = ""


@dataclass
class ExperimentReport:
    """Everything one experiment run wants to persist."""

    name: str
    config: dict = field(default_factory=dict)
    scalars: dict = field(default_factory=dict)
    series: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add_check(self, name: str, value: float, budget: float,
                  passed: bool | None = None, note: str = "") -> CheckResult:
        if passed is None:
            passed = bool(value <= budget)
        check = CheckResult(name=name, passed=bool(passed), value=float(value),
                            budget=float(budget), note=note)
        self.checks.append(check)
        return check

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> str:
        payload = {
            "name": self.name,
            "config": self.config,
            "scalars": self.scalars,
            "series": {k: list(v) for k, v in self.series.items()},
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "value": c.value,
                    "budget": c.budget,
                    "note": c.note,
                }
                for c in self.checks
            ],
            "notes": list(self.notes),
            "all_passed": self.all_passed,
        }
        return json.dumps(payload, indent=2, sort_keys=True, allow_nan=True)


def _atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_report_json(path: str, report: ExperimentReport) -> None:
    _atomic_write_text(path, report.to_json() + "\n")


def write_csv(path: str, columns: Mapping[str, Sequence]) -> None:
    """Write aligned columns as comma-delimited text, atomically.

    All columns must share one length; floats are written with repr-level
    precision so a reread reproduces the values bit for bit.
    """
    names = list(columns.keys())
    if not names:
        raise ValidationError("csv needs at least one column")
    lengths = {len(columns[n]) for n in names}
    if len(lengths) != 1:
        raise ValidationError(f"column lengths differ: { {n: len(columns[n]) for n in names} }")

    def fmt(x) -> str:
        if isinstance(x, float):
            return repr(x)
        return str(x)

    lines = [",".join(names)]
    for i in range(lengths.pop()):
        lines.append(",".join(fmt(columns[n][i]) for n in names))
    _atomic_write_text(path, "\n".join(lines) + "\n")
