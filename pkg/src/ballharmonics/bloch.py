"""Landau-Bloch radius calculators and their empirical verification.

For a harmonic map of the Hardy class with p-norm ||f||_p, unit Jacobian
and zero value at the origin (n >= 3):

    K(r)   = 2^(1/p) ||f||_p / (r (1-r)^((n-1)/p))
    M(r)   = K(r) ((3+c) n + 2 sqrt(2)),  c = sqrt(2) or sqrt(3)
    phi(r) = 1 / (2 (n K(r))^(2n-2) M(r) B_n),  B_n = (1+sqrt(2))^(n-1) + sqrt(2) - 1

and the image contains a univalent ball of radius max_r phi(r).  The
coefficient c differs between the derivation (sqrt(2)) and the stated
result (sqrt(3)); both variants are computed, 'proof' is the default.

For a harmonic map bounded by M with the same normalization:

    rho0 = 1 / (n^(n-1) M^n ((3+sqrt(2)) n + 2 sqrt(2)) B_n),
    R0   = rho0 / (2 (n M)^(n-1)),

univalent on B(0, rho0) with image covering B(0, R0).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .degree import DegreeConfig, degree
from .errors import DimensionWarning, PreconditionError
from .geometry import Ball, spawn_rng, sphere_rule
from .harmonic import HarmonicMap
from .reports import CheckReport

PROOF_VARIANT = "proof"
STATEMENT_VARIANT = "statement"

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class BlochParams:
    n: int
    p: float
    hardy_norm: float
    coefficient_variant: str = PROOF_VARIANT

    def __post_init__(self):
        if self.n < 3:
            raise PreconditionError("the Hardy-class radius bound needs n >= 3")
        if self.p < 1:
            raise PreconditionError("Hardy exponent must satisfy p >= 1")
        if not (self.hardy_norm > 0 and math.isfinite(self.hardy_norm)):
            raise PreconditionError("hardy_norm must be positive and finite")
        if self.coefficient_variant not in (PROOF_VARIANT, STATEMENT_VARIANT):
            raise PreconditionError("coefficient_variant must be 'proof' or 'statement'")


def _bracket_constant(n: int) -> float:
    return (1.0 + math.sqrt(2.0)) ** (n - 1) + math.sqrt(2.0) - 1.0


def _m_coefficient(n: int, variant: str) -> float:
    c = math.sqrt(2.0) if variant == PROOF_VARIANT else math.sqrt(3.0)
    return (3.0 + c) * n + 2.0 * math.sqrt(2.0)


def bloch_phi(r: float, params: BlochParams) -> tuple[float, float, float]:
    """(K(r), M(r), phi(r)) for a univalent-ball radius candidate at r."""
    if not 0.0 < r < 1.0:
        raise PreconditionError("r must lie in (0, 1)")
    n, p = params.n, params.p
    K = 2.0 ** (1.0 / p) * params.hardy_norm / (r * (1.0 - r) ** ((n - 1) / p))
    M = K * _m_coefficient(n, params.coefficient_variant)
    phi = 1.0 / (2.0 * (n * K) ** (2 * n - 2) * M * _bracket_constant(n))
    return K, M, phi


def bloch_rho(r: float, params: BlochParams) -> float:
    """Inner univalence radius 1 / ((n K)^(n-1) M(r) B_n)."""
    K, M, _ = bloch_phi(r, params)
    return 1.0 / ((params.n * K) ** (params.n - 1) * M * _bracket_constant(params.n))


def maximize_phi(params: BlochParams, grid_points: int = 1024, tol: float = 1e-10) -> tuple[float, float]:
    """Maximize phi over (0, 1): coarse grid scan + golden-section refinement."""

    def phi(r: float) -> float:
        return bloch_phi(r, params)[2]

    grid = (np.arange(grid_points) + 0.5) / grid_points
    values = np.array([phi(r) for r in grid])
    best = int(np.argmax(values))
    step = 1.0 / grid_points
    a = max(grid[best] - step, 1e-12)
    b = min(grid[best] + step, 1.0 - 1e-12)

    h = b - a
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    yc, yd = phi(c), phi(d)
    while h > tol:
        if yc > yd:
            b, d, yd = d, c, yc
            h = _INV_PHI * h
            c = a + _INV_PHI2 * h
            yc = phi(c)
        else:
            a, c, yc = c, d, yd
            h = _INV_PHI * h
            d = a + _INV_PHI * h
            yd = phi(d)
    r_star = 0.5 * (a + b)
    return r_star, phi(r_star)


def rho0_R0(n: int, M: float) -> tuple[float, float]:
    """Univalence radius and covered-ball radius for |f| < M, J_f(0) = 1."""
    if n < 2:
        raise PreconditionError("rho0_R0 needs n >= 2")
    if not (M > 0 and math.isfinite(M)):
        raise PreconditionError("M must be positive and finite")
    if n == 2:
        warnings.warn(
            "the bounded-map radius formulas were derived with n >= 3 machinery; n = 2 values are extrapolated",
            DimensionWarning,
            stacklevel=2,
        )
    rho0 = 1.0 / (n ** (n - 1) * M**n * _m_coefficient(n, PROOF_VARIANT) * _bracket_constant(n))
    R0 = rho0 / (2.0 * (n * M) ** (n - 1))
    return rho0, R0


def _check_normalization(F: HarmonicMap) -> None:
    origin = np.zeros(F.n)
    if float(np.linalg.norm(F.value(origin))) > 1e-10:
        raise PreconditionError("map must satisfy |F(0)| <= 1e-10")
    if abs(F.det_jacobian(origin) - 1.0) > 1e-8:
        raise PreconditionError("map must satisfy |J_F(0) - 1| <= 1e-8")


def verify_univalence(F: HarmonicMap, rho: float, pair_samples: int = 2000, seed: int = 0, margin: float = 1e-12) -> CheckReport:
    """Injectivity probe on B(0, rho) for a normalized map.

    Reports the minimal stretch |F(x)-F(y)|/|x-y| over sampled pairs; a fold
    is also flagged when det J_F changes sign (or vanishes) on the sample,
    which certifies non-injectivity for a C^1 map with J_F(0) = 1.
    """
    _check_normalization(F)
    if rho <= 0:
        raise PreconditionError("rho must be positive")
    rng = spawn_rng(seed, "univalence")
    n = F.n

    def draw(count):
        dirs = rng.standard_normal((count, n))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        return dirs * (rho * rng.random(count) ** (1.0 / n))[:, None]

    X, Y = draw(pair_samples), draw(pair_samples)
    sep = np.linalg.norm(X - Y, axis=1)
    keep = sep > 1e-14 * rho
    X, Y, sep = X[keep], Y[keep], sep[keep]
    ratios = np.linalg.norm(F.evaluate(X) - F.evaluate(Y), axis=1) / sep
    i = int(np.argmin(ratios))
    min_ratio = float(ratios[i])

    dets = np.linalg.det(F.jacobian_batch(np.vstack([X, Y])))
    fold = bool(np.any(dets <= 0.0))

    passed = (min_ratio > margin) and not fold
    notes = f"min pair stretch {min_ratio:.6g}"
    if fold:
        notes += "; Jacobian determinant changes sign inside the ball (fold certified)"
    return CheckReport(
        check_name="verify_univalence",
        empirical_constant=min_ratio,
        worst_witness=[X[i].tolist(), Y[i].tolist()],
        sample_count=int(X.shape[0]),
        passed=passed,
        notes=notes,
        seed=seed,
        details={"fold_detected": fold, "rho": rho},
    )


def verify_covering(
    F: HarmonicMap,
    rho: float,
    R: float,
    direction_count: int = 8,
    radius_fractions=(0.3, 0.6, 0.9),
    config: DegreeConfig | None = None,
    seed: int = 0,
) -> CheckReport:
    """Certify that F(B(0, rho)) covers targets throughout B(0, R) by degree."""
    _check_normalization(F)
    if not (rho > 0 and R > 0):
        raise PreconditionError("rho and R must be positive")
    cfg = config or DegreeConfig(
        grid_k=2,
        random_seeds=64,
        clearance_tol=min(1e-6, 0.05 * R),
        boundary_samples=2048,
        seed=seed,
    )
    omega = Ball(np.zeros(F.n), rho)
    directions = sphere_rule(F.n, direction_count, seed=seed).nodes
    degrees = []
    min_deg = None
    witness = None
    for frac in radius_fractions:
        for theta in directions:
            target = frac * R * theta
            deg = degree(F, omega, target, cfg).degree
            degrees.append(deg)
            if min_deg is None or deg < min_deg:
                min_deg = deg
                witness = target.tolist()
    passed = all(d >= 1 for d in degrees)
    return CheckReport(
        check_name="verify_covering",
        empirical_constant=float(min_deg),
        worst_witness=witness,
        sample_count=len(degrees),
        passed=passed,
        notes=f"targets attained: {sum(d >= 1 for d in degrees)}/{len(degrees)}",
        seed=seed,
        details={"rho": rho, "R": R, "degrees": degrees},
    )
