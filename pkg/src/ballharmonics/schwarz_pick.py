"""Schwarz-Pick growth bounds for bounded harmonic maps and matrices.

Matrix norms: |A| means the operator (spectral) norm throughout.  The
minimal-stretch inequality  min_theta |A theta| >= |det A| / |A|^(n-1)
is a theorem under that choice (the determinant is the product of the
singular values); a Frobenius mode exists for sensitivity comparison only.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import PreconditionError
from .geometry import spawn_rng
from .harmonic import HarmonicMap, HarmonicScalar, random_harmonic_polynomial
from .reports import CheckReport

PROOF_VARIANT = "proof"
STATEMENT_VARIANT = "statement"


def operator_norm(A, mode: str = "operator") -> float:
    A = np.asarray(A, dtype=float)
    if mode == "operator":
        return float(np.linalg.norm(A, 2))
    if mode == "frobenius":
        return float(np.linalg.norm(A))
    raise PreconditionError(f"unknown norm mode {mode!r}")


def min_directional_stretch(A) -> float:
    """min over unit theta of |A theta| = the smallest singular value."""
    A = np.asarray(A, dtype=float)
    return float(np.linalg.svd(A, compute_uv=False)[-1])


def lemA_gap(A, norm_mode: str = "operator") -> tuple[float, float]:
    """(smallest singular value, |det A| / |A|^(n-1)); lhs >= rhs must hold."""
    A = np.asarray(A, dtype=float)
    nrm = operator_norm(A, norm_mode)
    if nrm == 0.0:
        raise PreconditionError("minimal-stretch bound needs a nonzero matrix")
    n = A.shape[0]
    lhs = min_directional_stretch(A)
    rhs = abs(float(np.linalg.det(A))) / nrm ** (n - 1)
    return lhs, rhs


def _growth_factor(x_norm: float, n: int) -> float:
    return (1.0 - x_norm) / (1.0 + x_norm) ** (n - 1)


def schwarz_pick_gap(F: HarmonicMap, x, M: float) -> tuple[float, float]:
    """Center-pinned growth bound for |F| <= M:

        |F(x) - beta(x) F(0)| <= M (1 - beta(x)),
        beta(x) = (1 - |x|) / (1 + |x|)^(n-1).
    """
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    if r >= 1.0:
        raise PreconditionError("schwarz_pick_gap requires |x| < 1")
    beta = _growth_factor(r, F.n)
    lhs = float(np.linalg.norm(F.value(x) - beta * F.value(np.zeros(F.n))))
    rhs = M * (1.0 - beta)
    return lhs, rhs


def derivative_bound_gap(F: HarmonicMap, x, M: float) -> tuple[float, float]:
    """Jacobian-norm bound for |F| <= M:

        |F'(x)| <= M (2|x| + n(1 + |x|)) / (1 - |x|^2).
    """
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    if r >= 1.0:
        raise PreconditionError("derivative_bound_gap requires |x| < 1")
    lhs = operator_norm(F.jacobian(x))
    rhs = M * (2.0 * r + F.n * (1.0 + r)) / (1.0 - r * r)
    return lhs, rhs


class MatrixHarmonicMap:
    """Matrix-valued harmonic map: an n x n grid of harmonic scalars."""

    def __init__(self, entries):
        entries = [list(row) for row in entries]
        self.size = len(entries)
        if any(len(row) != self.size for row in entries):
            raise PreconditionError("matrix map must be square")
        self.n = entries[0][0].n
        if any(e.n != self.n for row in entries for e in row):
            raise PreconditionError("all entries must share the same dimension")
        self.entries = entries

    def value(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.array([[e(x) for e in row] for row in self.entries])

    def value_batch(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.empty((X.shape[0], self.size, self.size))
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                out[:, i, j] = e.evaluate(X)
        return out


def random_matrix_harmonic_map(n: int, degree: int, rng: np.random.Generator, size: int | None = None) -> MatrixHarmonicMap:
    """Entries are random harmonic polynomials with zero constant term."""
    size = size or n
    entries = [
        [HarmonicScalar.from_polynomial(random_harmonic_polynomial(n, degree, rng, zero_constant=True)) for _ in range(size)]
        for _ in range(size)
    ]
    return MatrixHarmonicMap(entries)


def matrix_growth_bound(x_norm: float, r: float, n: int, variant: str) -> float:
    """The bracketed factor 1 - r^e1 (r - |x|) / (r + |x|)^e2.

    The statement exponents are (2n-2, 2n-1); the derivation supports
    (n-2, n-1), which is the stronger (smaller) bound and the one the
    invariant suite asserts.
    """
    if variant == STATEMENT_VARIANT:
        e1, e2 = 2 * n - 2, 2 * n - 1
    elif variant == PROOF_VARIANT:
        e1, e2 = n - 2, n - 1
    else:
        raise PreconditionError(f"unknown variant {variant!r}")
    return 1.0 - r**e1 * (r - x_norm) / (r + x_norm) ** e2


def matrix_schwarz_pick_gap(A: MatrixHarmonicMap, M: float, r: float, x, variant: str = PROOF_VARIANT) -> tuple[float, float]:
    """Growth bound for a matrix map with A(0) = 0 and |A| <= M on B(0, r)."""
    x = np.asarray(x, dtype=float)
    if float(np.linalg.norm(x)) >= r:
        raise PreconditionError("matrix_schwarz_pick_gap requires |x| < r")
    if operator_norm(A.value(np.zeros(A.n))) > 1e-10:
        raise PreconditionError("matrix map must vanish at the origin")
    lhs = operator_norm(A.value(x))
    rhs = M * matrix_growth_bound(float(np.linalg.norm(x)), r, A.n, variant)
    return lhs, rhs


def schwarz_suite_report(
    n: int,
    map_count: int,
    points_per_map: int,
    degree: int = 4,
    seed: int = 0,
    check: str = "scalar",
    tol: float = 1e-9,
) -> CheckReport:
    """Sample (map, point) pairs and count violations of one bound family.

    ``check``: 'scalar' (center-pinned), 'derivative' (Jacobian norm), or
    'matrix' (matrix growth; asserts the derivable exponents and also
    evaluates the statement exponents, reporting any gap as a finding).
    Bound constants M come from dense-sample estimates (1e5 points).
    """
    from .harmonic import random_harmonic_map, sup_norm_estimate

    rng = spawn_rng(seed, "schwarz_suite", check)
    violations = 0
    findings = 0
    worst = -math.inf
    witness = None
    total = 0
    for idx in range(map_count):
        if check == "matrix":
            A = random_matrix_harmonic_map(n, degree, rng)
            r_ball = 1.0
            X = sample_in_ball(n, points_per_map, rng, radius=0.999 * r_ball)
            vals = A.value_batch(X)
            norms = np.linalg.svd(vals, compute_uv=False)[:, 0]
            M = float(np.max(np.linalg.svd(A.value_batch(sample_in_ball(n, 4096, rng, radius=r_ball * 0.9999)), compute_uv=False)[:, 0])) * (1.0 + 1e-6)
            M = max(M, float(np.max(norms)) * (1.0 + 1e-6))
            radii = np.linalg.norm(X, axis=1)
            for i in range(X.shape[0]):
                rhs = M * matrix_growth_bound(float(radii[i]), r_ball, n, PROOF_VARIANT)
                gap = float(norms[i]) - rhs
                if gap > tol * max(1.0, M):
                    violations += 1
                rhs_stmt = M * matrix_growth_bound(float(radii[i]), r_ball, n, STATEMENT_VARIANT)
                if float(norms[i]) - rhs_stmt > tol * max(1.0, M):
                    findings += 1
                if gap > worst:
                    worst = gap
                    witness = {"map_index": idx, "x": X[i].tolist()}
            total += X.shape[0]
            continue
        F = random_harmonic_map(n, degree, rng)
        M = sup_norm_estimate(F, seed=seed + idx)
        X = sample_in_ball(n, points_per_map, rng, radius=0.999)
        for x in X:
            if check == "scalar":
                lhs, rhs = schwarz_pick_gap(F, x, M)
            elif check == "derivative":
                lhs, rhs = derivative_bound_gap(F, x, M)
            else:
                raise PreconditionError(f"unknown check {check!r}")
            gap = lhs - rhs
            if gap > tol * max(1.0, M):
                violations += 1
            if gap > worst:
                worst = gap
                witness = {"map_index": idx, "x": list(map(float, x))}
        total += X.shape[0]
    notes = f"{violations} violations over {total} samples"
    if check == "matrix":
        notes += f"; statement-exponent findings: {findings}"
    return CheckReport(
        check_name=f"schwarz_pick[{check}]",
        empirical_constant=float(worst),
        worst_witness=witness,
        sample_count=total,
        passed=violations == 0,
        notes=notes,
        seed=seed,
        details={"violations": violations, "statement_findings": findings if check == "matrix" else None},
    )


def sample_in_ball(n: int, count: int, rng: np.random.Generator, radius: float = 1.0) -> np.ndarray:
    dirs = rng.standard_normal((count, n))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    return dirs * (radius * rng.random(count) ** (1.0 / n))[:, None]
