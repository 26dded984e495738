"""Verification reports: per-check records, JSON serialization, merging.

Reports are deterministic: given the same configuration and seeds the JSON
output is byte-identical (all reductions are sequential, no timestamps).
Complex values are serialized as [re, im] pairs.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field

import numpy as np

SCHEMA_VERSION = 1


def complex_to_json(value):
    value = complex(value)
    return [value.real, value.imag]


@dataclass(frozen=True)
class CheckRecord:
    """One verified identity: its residual statistics and pass verdict.

    direction "max_below" passes when the residual stays under the tolerance;
    "min_above" marks negative controls that must exceed the threshold.
    """

    name: str
    anchor: str
    residual_max: float
    residual_mean: float
    samples: int
    tolerance: float
    direction: str = "max_below"

    @property
    def passed(self):
        if self.direction == "min_above":
            return self.residual_max > self.tolerance
        return self.residual_max < self.tolerance

    def to_dict(self):
        return {
            "name": self.name,
            "anchor": self.anchor,
            "residual_max": float(self.residual_max),
            "residual_mean": float(self.residual_mean),
            "samples": int(self.samples),
            "tolerance": float(self.tolerance),
            "direction": self.direction,
            "pass": bool(self.passed),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            name=d["name"],
            anchor=d["anchor"],
            residual_max=d["residual_max"],
            residual_mean=d["residual_mean"],
            samples=d["samples"],
            tolerance=d["tolerance"],
            direction=d.get("direction", "max_below"),
        )


def record_from_values(name, anchor, values, tolerance, direction="max_below"):
    vals = np.asarray([abs(v) for v in values], dtype=float)
    stat = float(np.min(vals)) if direction == "min_above" else float(np.max(vals))
    return CheckRecord(
        name=name,
        anchor=anchor,
        residual_max=stat,
        residual_mean=float(np.mean(vals)),
        samples=len(vals),
        tolerance=tolerance,
        direction=direction,
    )


def environment_stamp(threads=None):
    return {
        "float_eps": float(np.finfo(float).eps),
        "numpy": np.__version__,
        "python": "%d.%d.%d" % sys.version_info[:3],
        "threads": int(threads) if threads else 1,
    }


@dataclass
class VerificationReport:
    campaign: str
    records: list[CheckRecord] = field(default_factory=list)
    environment: dict = field(default_factory=environment_stamp)

    @property
    def passed(self):
        return all(r.passed for r in self.records)

    def add(self, record):
        self.records.append(record)

    def to_dict(self):
        return {
            "schema": SCHEMA_VERSION,
            "campaign": self.campaign,
            "environment": self.environment,
            "records": [r.to_dict() for r in self.records],
            "pass": bool(self.passed),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self):
        lines = [f"campaign: {self.campaign}"]
        for r in self.records:
            verdict = "PASS" if r.passed else "FAIL"
            op = ">" if r.direction == "min_above" else "<"
            lines.append(
                f"  {verdict} {r.name}: {r.residual_max:.3e} {op} "
                f"{r.tolerance:.1e} (n={r.samples}) [{r.anchor}]"
            )
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, d):
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError("unsupported report schema")
        rep = cls(campaign=d["campaign"], environment=d.get("environment", {}))
        for rd in d["records"]:
            rep.add(CheckRecord.from_dict(rd))
        return rep


def merge_reports(reports, campaign="merged"):
    merged = VerificationReport(campaign=campaign)
    for rep in reports:
        for r in rep.records:
            merged.add(r)
    return merged
