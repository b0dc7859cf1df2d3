"""Check and run reports: the auditable output of every verification."""
from __future__ import annotations

import json
from dataclasses import dataclass, field


def _jsonable(value):
    """Coerce numpy scalars/arrays to plain Python for stable JSON output."""
    import numpy as np

    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class CheckReport:
    """Outcome of one inequality/property verification.

    ``empirical_constant`` is always the quantity re-evaluated at
    ``worst_witness``, so a stored witness reproduces the constant exactly.
    """

    check_name: str
    empirical_constant: float
    worst_witness: object
    sample_count: int
    passed: bool
    notes: str = ""
    seed: int | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "empirical_constant": _jsonable(self.empirical_constant),
            "worst_witness": _jsonable(self.worst_witness),
            "sample_count": int(self.sample_count),
            "passed": bool(self.passed),
            "notes": self.notes,
            "seed": self.seed,
            "details": _jsonable(self.details),
        }


@dataclass
class RunReport:
    """Aggregated result of a suite run, reproducible from its own config."""

    version: str
    config: dict
    checks: list
    timings: dict
    overall_passed: bool

    def to_dict(self, include_timings: bool = True) -> dict:
        doc = {
            "version": self.version,
            "config": _jsonable(self.config),
            "checks": [c.to_dict() for c in self.checks],
            "overall_passed": bool(self.overall_passed),
        }
        if include_timings:
            doc["timings_seconds"] = {k: round(v, 6) for k, v in self.timings.items()}
        return doc

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings=include_timings), indent=2, sort_keys=True)

    def write_json(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())
            fh.write("\n")

    def write_csv(self, path) -> None:
        import csv

        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["check_name", "passed", "empirical_constant", "sample_count", "seconds"])
            for c in self.checks:
                writer.writerow(
                    [
                        c.check_name,
                        int(c.passed),
                        repr(float(c.empirical_constant)),
                        c.sample_count,
                        round(self.timings.get(c.check_name, 0.0), 6),
                    ]
                )
