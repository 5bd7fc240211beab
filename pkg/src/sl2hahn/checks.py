"""Structured pass/fail results for identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IdentityViolation
from .exactarith import RepMatrix, first_difference, format_rational


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def add_equal(self, name: str, lhs: RepMatrix, rhs: RepMatrix) -> bool:
        """Record whether two matrices agree, noting the first differing entry."""
        if lhs.shape != rhs.shape:
            self.add(name, False, f"shape {lhs.shape} != {rhs.shape}")
            return False
        diff = first_difference(lhs, rhs)
        if diff is None:
            self.add(name, True)
            return True
        r, c, a, b = diff
        self.add(name, False, f"entry ({r},{c}): {format_rational(a)} != {format_rational(b)}")
        return False

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def raise_if_failed(self) -> None:
        bad = self.failures()
        if bad:
            raise IdentityViolation("; ".join(f"{c.name}: {c.detail}" for c in bad))

    def __str__(self):
        return "\n".join(
            f"[{'PASS' if c.passed else 'FAIL'}] {c.name}" + (f" ({c.detail})" if c.detail else "")
            for c in self.checks
        )
