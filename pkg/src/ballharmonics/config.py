"""Suite configuration: typed flat key-value files plus CLI overrides.

A run's report embeds the fully resolved config, and re-running with that
config reproduces identical empirical constants (bit-stable given a fixed
thread-partition count).
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .errors import ConfigError

KNOWN_SUITES = ("lipschitz", "schwarz", "bloch", "degree", "poisson", "all")


@dataclass
class SuiteConfig:
    seed: int = 20260801
    n: int = 3
    p: float = 1.0
    hardy_norm: float = 1.0
    bound_M: float = 1.0
    coefficient_variant: str = "proof"
    sphere_samples: int = 1 << 14
    ball_samples: int = 1 << 16
    point_samples: int = 4096
    pair_samples: int = 20000
    function_count: int = 20
    map_samples: int = 30
    points_per_map: int = 60
    matrix_samples: int = 10000
    degree_directions: int = 16
    covering_tol: float = 5e-3
    mc_solver_samples: int = 1 << 19
    budget_slack: float = 2.0
    max_degree: int = 4
    suites: tuple = ("all",)
    out_path: str | None = None
    csv_path: str | None = None

    def validate(self) -> "SuiteConfig":
        bad = []
        if self.n < 2:
            bad.append(("n", "must be >= 2"))
        if self.p < 1:
            bad.append(("p", "must be >= 1"))
        if not self.hardy_norm > 0:
            bad.append(("hardy_norm", "must be > 0"))
        if not self.bound_M > 0:
            bad.append(("bound_M", "must be > 0"))
        if self.coefficient_variant not in ("proof", "statement"):
            bad.append(("coefficient_variant", "must be 'proof' or 'statement'"))
        for fld in (
            "sphere_samples",
            "ball_samples",
            "point_samples",
            "pair_samples",
            "function_count",
            "map_samples",
            "points_per_map",
            "matrix_samples",
            "degree_directions",
            "mc_solver_samples",
        ):
            if getattr(self, fld) < 1:
                bad.append((fld, "must be >= 1"))
        if not self.covering_tol > 0:
            bad.append(("covering_tol", "must be > 0"))
        if self.budget_slack < 1:
            bad.append(("budget_slack", "must be >= 1"))
        if self.max_degree < 1:
            bad.append(("max_degree", "must be >= 1"))
        unknown = [s for s in self.suites if s not in KNOWN_SUITES]
        if unknown:
            bad.append(("suites", f"unknown suites {unknown}; choose from {KNOWN_SUITES}"))
        if bad:
            msg = "; ".join(f"{name}: {why}" for name, why in bad)
            raise ConfigError(f"invalid configuration: {msg}", fields=[name for name, _ in bad])
        return self

    def to_dict(self) -> dict:
        doc = dataclasses.asdict(self)
        doc["suites"] = list(self.suites)
        return doc


def _convert(field: dataclasses.Field, raw: str):
    raw = raw.strip()
    if field.name == "suites":
        return tuple(s.strip() for s in raw.split(",") if s.strip())
    if field.type in ("int", int):
        return int(raw)
    if field.type in ("float", float):
        return float(raw)
    if field.type in ("str | None",):
        return raw or None
    return raw


def load_config_file(path: str) -> dict:
    """Parse a flat ``key = value`` file into typed override values."""
    fields = {f.name: f for f in dataclasses.fields(SuiteConfig)}
    overrides = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'", fields=["<file>"])
            key, raw = (part.strip() for part in line.split("=", 1))
            if key not in fields:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}", fields=[key])
            try:
                overrides[key] = _convert(fields[key], raw)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key!r}: {exc}", fields=[key]) from exc
    return overrides


def resolve_config(file_path: str | None = None, **cli_overrides) -> SuiteConfig:
    """File values first, CLI flags on top, then validation."""
    values = {}
    if file_path:
        values.update(load_config_file(file_path))
    values.update({k: v for k, v in cli_overrides.items() if v is not None})
    return SuiteConfig(**values).validate()
