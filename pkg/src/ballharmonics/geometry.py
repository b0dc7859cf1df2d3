"""Dimension-generic points, balls, and quadrature over spheres and balls.

Sphere rules realize the normalized surface measure (weights sum to 1);
ball rules realize the normalized volume measure.  All randomness flows
from a single 64-bit seed through counter-based Philox streams, so any
(kind, seed, count, n) combination reproduces bit-identical nodes.
"""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PreconditionError

_MASK64 = (1 << 64) - 1

SPHERE_MONTE_CARLO = "sphere_monte_carlo"
SPHERE_TRAPEZOID_2D = "sphere_trapezoid_2d"
BALL_MONTE_CARLO = "ball_monte_carlo"

_KIND_STREAM = {SPHERE_MONTE_CARLO: 1, SPHERE_TRAPEZOID_2D: 2, BALL_MONTE_CARLO: 3}


def spawn_rng(seed: int, *stream) -> np.random.Generator:
    """Independent Philox generator for (seed, stream...).

    Stream components may be ints or strings; strings are hashed with a
    stable CRC so the mapping never changes between runs.
    """
    key = []
    for part in stream:
        if isinstance(part, str):
            part = zlib.crc32(part.encode("utf-8"))
        key.append(int(part) & _MASK64)
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK64, spawn_key=tuple(key))
    return np.random.Generator(np.random.Philox(ss))


def as_point(x, n: int | None = None) -> np.ndarray:
    """Validate and return a point of R^n as a float64 vector."""
    p = np.asarray(x, dtype=float)
    if p.ndim != 1:
        raise PreconditionError(f"point must be a 1-d coordinate list, got shape {p.shape}")
    if p.size < 2:
        raise PreconditionError("points need dimension n >= 2")
    if n is not None and p.size != n:
        raise PreconditionError(f"expected dimension {n}, got {p.size}")
    if not np.all(np.isfinite(p)):
        raise PreconditionError("point has non-finite coordinates")
    return p


@dataclass(frozen=True)
class Ball:
    """Euclidean ball B^n(center, radius)."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise PreconditionError("ball radius must be positive and finite")

    @property
    def n(self) -> int:
        return self.center.size

    @classmethod
    def unit(cls, n: int) -> "Ball":
        return cls(np.zeros(n), 1.0)

    def contains(self, x, slack: float = 0.0) -> bool:
        x = as_point(x, self.n)
        return float(np.linalg.norm(x - self.center)) <= self.radius + slack


def distance_to_boundary(x, domain: Ball) -> float:
    """Distance from an interior point to the sphere bounding ``domain``."""
    x = as_point(x, domain.n)
    d = domain.radius - float(np.linalg.norm(x - domain.center))
    if d < -1e-12 * domain.radius:
        raise DomainError("point lies outside the closed ball")
    return max(d, 0.0)


@dataclass(frozen=True)
class QuadratureRule:
    """Node/weight set for integration against dsigma or normalized dV."""

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    seed: int
    sample_count: int

    def __post_init__(self):
        if self.nodes.shape[0] != self.sample_count or self.weights.shape != (self.sample_count,):
            raise PreconditionError("node/weight shapes inconsistent with sample_count")
        if np.any(self.weights < 0):
            raise PreconditionError("quadrature weights must be nonnegative")
        total = float(np.sum(self.weights))
        if abs(total - 1.0) > 1e-12:
            raise PreconditionError(f"weights must sum to 1, got {total!r}")
        norms = np.linalg.norm(self.nodes, axis=1)
        if self.kind in (SPHERE_MONTE_CARLO, SPHERE_TRAPEZOID_2D):
            if np.max(np.abs(norms - 1.0)) > 1e-12:
                raise PreconditionError("sphere nodes must have unit norm")
        elif self.kind == BALL_MONTE_CARLO:
            if np.max(norms) >= 1.0:
                raise PreconditionError("ball nodes must lie strictly inside the unit ball")
        else:
            raise PreconditionError(f"unknown rule kind {self.kind!r}")

    @property
    def n(self) -> int:
        return self.nodes.shape[1]

    def integrate(self, values: np.ndarray) -> float:
        """Weighted sum; numpy's pairwise summation keeps reductions reproducible."""
        return float(np.sum(self.weights * np.asarray(values, dtype=float)))

    def standard_error(self, values: np.ndarray) -> float:
        """Standard error of the integral estimate; 0 for deterministic rules."""
        if self.kind == SPHERE_TRAPEZOID_2D:
            return 0.0
        v = np.asarray(values, dtype=float)
        mean = np.sum(self.weights * v)
        var = np.sum(self.weights**2 * (v - mean) ** 2)
        return float(math.sqrt(max(var, 0.0)))


def sphere_rule(n: int, count: int, seed: int = 0) -> QuadratureRule:
    """Quadrature on the unit sphere of R^n for normalized surface measure.

    n = 2 gets the deterministic equispaced-angle (trapezoid) rule, which is
    spectrally accurate for smooth periodic integrands; n >= 3 gets uniform
    Monte Carlo nodes from normalized standard-Gaussian vectors.
    """
    if n < 2:
        raise PreconditionError("sphere_rule requires n >= 2")
    if count < 1:
        raise PreconditionError("sphere_rule requires count >= 1")
    if n == 2:
        theta = 2.0 * math.pi * np.arange(count) / count
        nodes = np.column_stack([np.cos(theta), np.sin(theta)])
        kind = SPHERE_TRAPEZOID_2D
    else:
        rng = spawn_rng(seed, _KIND_STREAM[SPHERE_MONTE_CARLO], n, count)
        g = rng.standard_normal((count, n))
        norms = np.linalg.norm(g, axis=1)
        while np.any(norms < 1e-12):  # essentially impossible, but stay total
            bad = norms < 1e-12
            g[bad] = rng.standard_normal((int(np.sum(bad)), n))
            norms = np.linalg.norm(g, axis=1)
        nodes = g / norms[:, None]
        kind = SPHERE_MONTE_CARLO
    weights = np.full(count, 1.0 / count)
    return QuadratureRule(kind=kind, nodes=nodes, weights=weights, seed=seed, sample_count=count)


def ball_rule(n: int, count: int, seed: int = 0, radius: float = 1.0) -> QuadratureRule:
    """Uniform nodes in B^n(0, radius) via radial inversion of a sphere sample.

    Balls centered elsewhere are handled by translating the nodes, so only
    radii in (0, 1] are supported here.  The normalized-volume convention
    keeps weights summing to 1, so ``integrate`` returns ball averages.
    """
    if n < 2:
        raise PreconditionError("ball_rule requires n >= 2")
    if count < 1:
        raise PreconditionError("ball_rule requires count >= 1")
    if not 0 < radius <= 1:
        raise PreconditionError("ball_rule requires 0 < radius <= 1")
    rng = spawn_rng(seed, _KIND_STREAM[BALL_MONTE_CARLO], n, count)
    g = rng.standard_normal((count, n))
    norms = np.linalg.norm(g, axis=1)
    while np.any(norms < 1e-12):
        bad = norms < 1e-12
        g[bad] = rng.standard_normal((int(np.sum(bad)), n))
        norms = np.linalg.norm(g, axis=1)
    directions = g / norms[:, None]
    radii = radius * rng.random(count) ** (1.0 / n)
    nodes = directions * radii[:, None]
    weights = np.full(count, 1.0 / count)
    return QuadratureRule(kind=BALL_MONTE_CARLO, nodes=nodes, weights=weights, seed=seed, sample_count=count)


def unit_ball_volume(n: int) -> float:
    """Lebesgue volume of the unit ball of R^n."""
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


def unit_sphere_area(n: int) -> float:
    """Surface area of the unit sphere bounding the unit ball of R^n."""
    return n * unit_ball_volume(n)
