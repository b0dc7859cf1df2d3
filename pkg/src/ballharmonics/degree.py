"""Brouwer topological degree for differentiable maps on balls.

degree(F, Omega, p) = sum over preimages y of p of sign(det J_F(y)),
computed by multistart damped Newton with deterministic seeding.  Preimage
completeness is heuristic (multistart); it is mitigated by seed-grid
refinement stability checks, and the shipped test set restricts itself to
maps whose degree has an independent oracle.  Boundary clearance is
established by dense sampling of F on the sphere, which bounds but does
not certify p notin F(boundary).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    BoundaryClearanceError,
    NoExistenceCertificateError,
    NonRegularValueError,
    PreconditionError,
    UnstableDegreeError,
)
from .fd import fd_jacobian_batch
from .geometry import Ball, spawn_rng, sphere_rule
from .reports import CheckReport

_MAX_GRID_SEEDS = 50_000


@dataclass(frozen=True)
class DegreeConfig:
    grid_k: int = 4
    random_seeds: int = 1000
    newton_tol: float = 1e-12
    newton_max_iter: int = 50
    dedup_radius_rel: float = 1e-7  # times the domain radius
    regularity_tol: float = 1e-10
    clearance_tol: float = 1e-6
    boundary_samples: int = 10_000
    stability_check: bool = False
    seed: int = 0


@dataclass
class DegreeResult:
    degree: int
    preimages: list
    jacobian_signs: list
    residuals: list
    boundary_clearance: float

    def to_dict(self) -> dict:
        return {
            "degree": int(self.degree),
            "preimages": [list(map(float, x)) for x in self.preimages],
            "jacobian_signs": [int(s) for s in self.jacobian_signs],
            "residuals": [float(r) for r in self.residuals],
            "boundary_clearance": float(self.boundary_clearance),
        }


class CallableMap:
    """Adapter giving a plain callable the evaluate/jacobian protocol."""

    def __init__(self, fn, n: int, fd_step: float = 1e-6):
        self.fn = fn
        self.n = n
        self.fd_step = fd_step

    def evaluate(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.atleast_2d(np.asarray(self.fn(X), dtype=float))

    def jacobian_batch(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        h = self.fd_step * (1.0 + np.linalg.norm(X, axis=1))
        return fd_jacobian_batch(self.evaluate, X, h)


def as_map(F, n: int | None = None):
    if hasattr(F, "evaluate") and hasattr(F, "jacobian_batch"):
        return F
    if n is None:
        raise PreconditionError("plain callables need an explicit dimension")
    return CallableMap(F, n)


def _grid_seeds(omega: Ball, k: int) -> np.ndarray:
    n = omega.n
    while k > 1 and (2 * k + 1) ** n > _MAX_GRID_SEEDS:
        k -= 1
    axis = np.linspace(-1.0, 1.0, 2 * k + 1)
    pts = np.array(list(itertools.product(axis, repeat=n)))
    pts = pts[np.linalg.norm(pts, axis=1) < 0.995]
    return omega.center[None, :] + omega.radius * pts


def _random_seeds(omega: Ball, count: int, seed: int) -> np.ndarray:
    rng = spawn_rng(seed, "degree_seeds")
    dirs = rng.standard_normal((count, omega.n))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    radii = omega.radius * rng.random(count) ** (1.0 / omega.n)
    return omega.center[None, :] + dirs * radii[:, None]


def _newton_roots(F, seeds: np.ndarray, p: np.ndarray, omega: Ball, cfg: DegreeConfig):
    """Damped multistart Newton; returns (roots, residuals) of converged seeds."""
    X = seeds.copy()
    alive = np.ones(X.shape[0], dtype=bool)
    tol = cfg.newton_tol * max(1.0, float(np.linalg.norm(p)))
    res = np.linalg.norm(F.evaluate(X) - p, axis=1)
    converged = res < tol
    for _ in range(cfg.newton_max_iter):
        work = alive & ~converged
        if not np.any(work):
            break
        idx = np.where(work)[0]
        J = F.jacobian_batch(X[idx])
        dets = np.linalg.det(J)
        solvable = np.isfinite(dets) & (np.abs(dets) > 1e-300)
        alive[idx[~solvable]] = False
        idx = idx[solvable]
        if idx.size == 0:
            break
        R = F.evaluate(X[idx]) - p
        steps = np.linalg.solve(J[solvable], R[:, :, None])[:, :, 0]
        base = X[idx]
        base_res = res[idx]
        scale = np.ones(idx.size)
        accepted = np.zeros(idx.size, dtype=bool)
        cand = base.copy()
        for _h in range(9):
            todo = ~accepted
            if not np.any(todo):
                break
            trial = base[todo] - scale[todo, None] * steps[todo]
            trial_res = np.linalg.norm(F.evaluate(trial) - p, axis=1)
            ok = (trial_res < base_res[todo]) | (trial_res < tol)
            sub = np.where(todo)[0]
            cand[sub[ok]] = trial[ok]
            res_upd = res[idx].copy()
            res_upd[sub[ok]] = trial_res[ok]
            res[idx] = res_upd
            accepted[sub[ok]] = True
            scale[sub[~ok]] *= 0.5
        alive[idx[~accepted]] = False  # stagnant seeds
        moved = idx[accepted]
        X[moved] = cand[accepted]
        wander = np.linalg.norm(X[moved] - omega.center, axis=1) > 1.5 * omega.radius
        alive[moved[wander]] = False
        converged = res < tol
    inside = np.linalg.norm(X - omega.center, axis=1) < omega.radius
    mask = converged & inside
    return X[mask], res[mask]


def _dedup(roots: np.ndarray, residuals: np.ndarray, radius: float):
    """Deterministic clustering: lexicographic sweep with a merge radius."""
    if roots.shape[0] == 0:
        return roots, residuals
    order = np.lexsort(roots.T[::-1])
    reps = []
    rep_res = []
    for i in order:
        x = roots[i]
        for j, r in enumerate(reps):
            if np.linalg.norm(x - r) <= radius:
                if residuals[i] < rep_res[j][1]:
                    rep_res[j] = (i, residuals[i])
                break
        else:
            reps.append(x)
            rep_res.append((i, residuals[i]))
    idx = [ij for ij, _ in rep_res]
    return roots[idx], residuals[idx]


def boundary_clearance(F, omega: Ball, p: np.ndarray, cfg: DegreeConfig) -> float:
    rule = sphere_rule(omega.n, cfg.boundary_samples, seed=cfg.seed)
    Xb = omega.center[None, :] + omega.radius * rule.nodes
    return float(np.min(np.linalg.norm(F.evaluate(Xb) - p, axis=1)))


def _degree_once(F, omega: Ball, p: np.ndarray, cfg: DegreeConfig, grid_k: int):
    seeds = np.vstack([_grid_seeds(omega, grid_k), _random_seeds(omega, cfg.random_seeds, cfg.seed)])
    roots, residuals = _newton_roots(F, seeds, p, omega, cfg)
    roots, residuals = _dedup(roots, residuals, cfg.dedup_radius_rel * omega.radius)
    if roots.shape[0] == 0:
        return roots, residuals, np.zeros(0)
    dets = np.linalg.det(F.jacobian_batch(roots))
    return roots, residuals, dets


def degree(F, omega: Ball, p, config: DegreeConfig | None = None, n: int | None = None) -> DegreeResult:
    """Signed preimage count of ``p`` under ``F`` over the ball ``omega``."""
    cfg = config or DegreeConfig()
    p = np.asarray(p, dtype=float)
    F = as_map(F, n or omega.n)
    clearance = boundary_clearance(F, omega, p, cfg)
    if clearance <= cfg.clearance_tol:
        raise BoundaryClearanceError(
            f"target within {clearance:.3g} of the boundary image (tolerance {cfg.clearance_tol:.3g})"
        )
    target = p.copy()
    rng = spawn_rng(cfg.seed, "degree_perturb")
    for _attempt in range(6):
        roots, residuals, dets = _degree_once(F, omega, target, cfg, cfg.grid_k)
        if roots.shape[0] and np.min(np.abs(dets)) <= cfg.regularity_tol:
            step = rng.standard_normal(p.size)
            step *= 10.0 * cfg.regularity_tol / np.linalg.norm(step)
            target = p + step
            continue
        break
    else:
        raise NonRegularValueError("preimage with near-singular Jacobian persists after 5 perturbations")
    signs = np.sign(dets).astype(int)
    deg = int(np.sum(signs))
    if cfg.stability_check:
        roots2, _, dets2 = _degree_once(F, omega, target, cfg, cfg.grid_k + 2)
        if int(np.sum(np.sign(dets2))) != deg or roots2.shape[0] != roots.shape[0]:
            raise UnstableDegreeError("degree changed under seed-grid refinement")
    result = DegreeResult(
        degree=deg,
        preimages=[roots[i] for i in range(roots.shape[0])],
        jacobian_signs=list(signs),
        residuals=list(map(float, residuals)),
        boundary_clearance=clearance,
    )
    assert result.degree == sum(result.jacobian_signs)
    return result


def existence_from_degree(F, omega: Ball, p, config: DegreeConfig | None = None) -> np.ndarray:
    """One verified preimage of p, available whenever the degree is nonzero."""
    res = degree(F, omega, p, config)
    if res.degree == 0:
        raise NoExistenceCertificateError("degree is zero: no existence certificate")
    order = np.argsort(res.residuals)
    best = res.preimages[int(order[0])]
    if res.residuals[int(order[0])] >= 1e-9:
        raise NonRegularValueError("preimage residual above certification tolerance")
    return best


def degree_constancy_probe(F, omega: Ball, path, config: DegreeConfig | None = None) -> CheckReport:
    """Degree along a discrete path inside one component of the complement
    of F(boundary) must be constant."""
    cfg = config or DegreeConfig()
    degs = [degree(F, omega, q, cfg).degree for q in path]
    passed = len(set(degs)) == 1
    return CheckReport(
        check_name="degree_constancy_probe",
        empirical_constant=float(degs[0]),
        worst_witness=[list(map(float, np.asarray(q, dtype=float))) for q in path],
        sample_count=len(degs),
        passed=passed,
        notes=f"degrees along path: {degs}",
        seed=cfg.seed,
        details={"degrees": degs},
    )


def covering_radius(
    F,
    omega: Ball,
    direction_count: int = 16,
    tol: float = 5e-3,
    config: DegreeConfig | None = None,
) -> float:
    """Largest c (within tol) with every target on |p| = c(1 - 1e-3) attained.

    Binary search on c over [0, min |F(boundary)|], certifying each candidate
    with degree >= 1 at direction_count sphere targets.
    """
    cfg = config or DegreeConfig()
    F = as_map(F, omega.n)
    base = F.evaluate(omega.center[None, :])[0]
    if float(np.linalg.norm(base)) > 1e-8 * (1.0 + omega.radius):
        raise PreconditionError("covering_radius requires the normalization F(center) = 0")
    rule = sphere_rule(omega.n, cfg.boundary_samples, seed=cfg.seed)
    Xb = omega.center[None, :] + omega.radius * rule.nodes
    hi = float(np.min(np.linalg.norm(F.evaluate(Xb), axis=1)))
    if hi <= 0.0:
        return 0.0
    directions = sphere_rule(omega.n, direction_count, seed=cfg.seed).nodes

    def attained(c: float) -> bool:
        for theta in directions:
            target = c * (1.0 - 1e-3) * theta
            try:
                if degree(F, omega, target, cfg).degree < 1:
                    return False
            except BoundaryClearanceError:
                return False
        return True

    lo, hi_c = 0.0, hi
    while hi_c - lo > tol:
        mid = 0.5 * (lo + hi_c)
        if attained(mid):
            lo = mid
        else:
            hi_c = mid
    return lo


def refine_config(config: DegreeConfig | None, **overrides) -> DegreeConfig:
    return replace(config or DegreeConfig(), **overrides)
