"""Check records and exact JSON encoding of results."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__

CONVENTIONS_VERSION = "1"


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None
    expected_fail: bool = False  # a failure the theory predicts, not a defect

    @property
    def status(self) -> str:
        if self.expected_fail:
            return "expected-fail" if not self.passed else "unexpected-pass"
        return "pass" if self.passed else "FAIL"

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "witness": exact(self.witness)}


@dataclass
class CheckList:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Any = None, expected_fail: bool = False) -> Check:
        c = Check(name, bool(passed), witness, expected_fail)
        self.checks.append(c)
        return c

    def extend(self, other: "CheckList | list[Check]") -> None:
        self.checks.extend(other.checks if isinstance(other, CheckList) else other)

    @property
    def all_ok(self) -> bool:
        return all(c.status in ("pass", "expected-fail") for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status not in ("pass", "expected-fail")]

    def __iter__(self):
        return iter(self.checks)

    def __len__(self) -> int:
        return len(self.checks)


def fraction_str(x) -> int | str:
    """Integer, or 'p/q' for a proper rational."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def exact(obj: Any) -> Any:
    """Recursively convert to JSON-safe exact values (no floats)."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, float):
        raise TypeError(f"floating-point value {obj!r} in an exact report")
    if isinstance(obj, dict):
        return {str(k): exact(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [exact(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return str(obj)


def dumps(record: dict) -> str:
    return json.dumps(exact(record), sort_keys=True, indent=2) + "\n"


def provenance() -> dict:
    return {"code_version": __version__, "conventions_version": CONVENTIONS_VERSION}
