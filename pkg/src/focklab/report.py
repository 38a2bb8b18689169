"""Verification reports: named checks with measured values and tolerances.

Reports serialize to JSON with sorted keys and checks ordered by name, so
two runs with the same seed produce byte-identical files.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .multipliers import NormScan

__all__ = ["Check", "Report", "REPORT_SCHEMA"]


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "measured": _finite(self.measured),
                "tolerance": _finite(self.tolerance), "pass": bool(self.passed)}


def _finite(x: float):
    # JSON has no inf/nan; those become strings so the file stays valid
    x = float(x)
    return x if math.isfinite(x) else repr(x)


@dataclass
class Report:
    suite: str
    seed: int
    checks: list[Check] = field(default_factory=list)
    scans: list[NormScan] = field(default_factory=list)
    settings: dict = field(default_factory=dict)

    def upper(self, name: str, measured: float, tolerance: float) -> Check:
        """Record a check that passes when ``measured <= tolerance``."""
        measured = float(measured)
        ok = math.isfinite(measured) and measured <= tolerance
        return self._add(Check(name, measured, float(tolerance), ok))

    def within(self, name: str, measured: float, lo: float, hi: float) -> Check:
        """Record ``lo <= measured <= hi``; the stored tolerance is the distance to the interval."""
        measured = float(measured)
        dist = max(lo - measured, measured - hi, 0.0)
        return self._add(Check(name, measured, float(hi - lo), math.isfinite(measured) and dist == 0.0))

    def flag(self, name: str, ok: bool, measured: float = 0.0) -> Check:
        return self._add(Check(name, float(measured), 0.0, bool(ok)))

    def _add(self, c: Check) -> Check:
        if any(c.name == old.name for old in self.checks):
            raise ValueError(f"duplicate check name {c.name!r}")
        self.checks.append(c)
        return c

    def add_scan(self, scan: NormScan) -> None:
        self.scans.append(scan)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": int(self.seed),
            "settings": dict(self.settings),
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.name)],
            "scans": [s.to_dict() for s in sorted(self.scans, key=lambda s: s.label)],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def summary_lines(self) -> list[str]:
        lines = []
        for c in sorted(self.checks, key=lambda c: c.name):
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"{mark}  {c.name}: measured {c.measured:.3e} (tolerance {c.tolerance:.1e})")
        return lines


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["suite", "seed", "settings", "checks", "scans", "pass"],
    "additionalProperties": False,
    "properties": {
        "suite": {"type": "string"},
        "seed": {"type": "integer", "minimum": 0},
        "settings": {"type": "object"},
        "pass": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "measured", "tolerance", "pass"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "measured": {"type": ["number", "string"]},
                    "tolerance": {"type": ["number", "string"]},
                    "pass": {"type": "boolean"},
                },
            },
        },
        "scans": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "degrees", "norms"],
                "additionalProperties": False,
                "properties": {
                    "label": {"type": "string"},
                    "degrees": {"type": "array", "items": {"type": "integer"}},
                    "norms": {"type": "array", "items": {"type": "number"}},
                },
            },
        },
    },
}
