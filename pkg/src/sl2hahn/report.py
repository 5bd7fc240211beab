"""Check records and their text, json and csv renderings.

Expected and actual values are always strings: integers in decimal and
rationals as ``p/q``, so no float ever reaches a report.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__

CSV_FIELDS = ("id", "params", "expected", "actual", "pass", "millis")
_INT = re.compile(r"-?\d+")


def render(value) -> str:
    """Exact string form of a check value."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (tuple, list)):
        return "(" + ",".join(render(v) for v in value) + ")"
    return str(value)


@dataclass(frozen=True)
class CheckRecord:
    id: str
    params: tuple  # sorted (name, value) pairs; values are int or str
    expected: str
    actual: str
    passed: bool
    millis: int = 0

    def sort_key(self):
        return (self.id, tuple((k, (0, v, "") if isinstance(v, int) else (1, 0, v)) for k, v in self.params))

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "params": dict(self.params),
            "expected": self.expected,
            "actual": self.actual,
            "pass": self.passed,
            "millis": self.millis,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CheckRecord":
        return cls(
            obj["id"],
            tuple(sorted(obj["params"].items())),
            obj["expected"],
            obj["actual"],
            bool(obj["pass"]),
            int(obj["millis"]),
        )


def make_record(check_id: str, params: dict, expected, actual, passed: bool, millis: int = 0) -> CheckRecord:
    return CheckRecord(check_id, tuple(sorted(params.items())), render(expected), render(actual), bool(passed), millis)


@dataclass
class Report:
    config: dict
    checks: list = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def summary(self) -> dict:
        passed = sum(c.passed for c in self.checks)
        return {"total": len(self.checks), "passed": passed, "failed": len(self.checks) - passed}

    def canonical(self) -> "Report":
        return Report(dict(self.config), sorted(self.checks, key=CheckRecord.sort_key), self.version)

    def __eq__(self, other):
        if not isinstance(other, Report):
            return NotImplemented
        return (self.version, self.config, self.checks) == (other.version, other.config, other.checks)


def _encode_params(params: tuple) -> str:
    return ";".join(f"{k}={v}" for k, v in params)


def _decode_params(text: str) -> tuple:
    out = []
    for item in filter(None, text.split(";")):
        k, _, v = item.partition("=")
        out.append((k, int(v) if _INT.fullmatch(v) else v))
    return tuple(sorted(out))


def to_json(report: Report) -> str:
    doc = {
        "version": report.version,
        "config": report.config,
        "checks": [c.to_json() for c in report.checks],
        "summary": report.summary,
    }
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def from_json(text: str) -> Report:
    doc = json.loads(text)
    return Report(doc["config"], [CheckRecord.from_json(c) for c in doc["checks"]], doc["version"])


def to_csv(report: Report) -> str:
    """One row per check; the config and version are not part of the csv form."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for c in report.checks:
        writer.writerow([c.id, _encode_params(c.params), c.expected, c.actual, render(c.passed), c.millis])
    return buf.getvalue()


def from_csv(text: str, config: dict | None = None) -> Report:
    rows = list(csv.DictReader(io.StringIO(text)))
    checks = [
        CheckRecord(
            r["id"], _decode_params(r["params"]), r["expected"], r["actual"], r["pass"] == "true", int(r["millis"])
        )
        for r in rows
    ]
    return Report(config or {}, checks)


def to_text(report: Report) -> str:
    lines = []
    for c in report.checks:
        params = " ".join(f"{k}={v}" for k, v in c.params)
        tag = "PASS" if c.passed else "FAIL"
        lines.append(f"{tag} {c.id} [{params}] expected={c.expected} actual={c.actual}")
    s = report.summary
    lines.append(f"{s['passed']}/{s['total']} checks passed, {s['failed']} failed")
    return "\n".join(lines) + "\n"
