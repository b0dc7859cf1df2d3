"""Harmonic functions and maps on the unit ball.

Two interchangeable representations sit behind one interface: exact
harmonic polynomials (for inequality fuzzing) and Poisson-integral
extensions of boundary data (exercising the kernel formulas directly).

The kernel on B^n(x, r) is normalized so that it integrates to 1 against
the normalized surface measure in every dimension:

    P_r(y, zeta) = r^(n-2) * (r^2 - |y-x|^2) / |y - x - r*zeta|^n .
"""
from __future__ import annotations

import json
import warnings

import numpy as np

from .errors import DomainError, NearBoundaryWarning, PreconditionError
from .geometry import QuadratureRule, spawn_rng, sphere_rule
from .polynomials import Polynomial, harmonic_basis, linear_poly

NEAR_BOUNDARY_EPS = 1e-3

POLYNOMIAL = "polynomial"
POISSON_EXTENSION = "poisson_extension"

_PT_CHUNK = 64


def _check_sphere_point(zeta: np.ndarray) -> None:
    if abs(float(np.linalg.norm(zeta)) - 1.0) > 1e-12:
        raise PreconditionError("zeta must lie on the unit sphere (|zeta| = 1 within 1e-12)")


def poisson_kernel(x, zeta) -> float:
    """Unit-ball kernel (1 - |x|^2) / |x - zeta|^n for |x| < 1, |zeta| = 1."""
    x = np.asarray(x, dtype=float)
    zeta = np.asarray(zeta, dtype=float)
    n = x.size
    r = float(np.linalg.norm(x))
    if r >= 1.0:
        raise DomainError("poisson_kernel requires |x| < 1")
    _check_sphere_point(zeta)
    return float((1.0 - r * r) / np.linalg.norm(x - zeta) ** n)


def _kernel_values(X: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    """Kernel matrix P(x_i, zeta_j), shapes (N, n), (Q, n) -> (N, Q)."""
    d = X[:, None, :] - nodes[None, :, :]
    dist = np.linalg.norm(d, axis=2)
    one_minus = 1.0 - np.sum(X * X, axis=1)
    return one_minus[:, None] / dist ** X.shape[1]


def scaled_poisson_kernel(y, x_center, r: float, zeta) -> float:
    """Kernel of B^n(x_center, r), normalized to integrate to 1 over dsigma."""
    y = np.asarray(y, dtype=float)
    c = np.asarray(x_center, dtype=float)
    zeta = np.asarray(zeta, dtype=float)
    n = y.size
    u = (y - c) / r
    if np.linalg.norm(u) >= 1.0:
        raise DomainError("y must lie inside B(x_center, r)")
    _check_sphere_point(zeta)
    return float(r ** (n - 2) * (r * r - np.sum((y - c) ** 2)) / np.linalg.norm(y - c - r * zeta) ** n)


def poisson_kernel_gradient(y, x_center, r: float, zeta) -> np.ndarray:
    """Analytic y-gradient of the scaled kernel on B^n(x_center, r)."""
    y = np.asarray(y, dtype=float)
    c = np.asarray(x_center, dtype=float)
    zeta = np.asarray(zeta, dtype=float)
    n = y.size
    u = (y - c) / r
    if np.linalg.norm(u) >= 1.0:
        raise DomainError("y must lie inside B(x_center, r)")
    _check_sphere_point(zeta)
    w = u - zeta
    dist = float(np.linalg.norm(w))
    u2 = float(np.sum(u * u))
    return (-2.0 * u / dist**n - n * (1.0 - u2) * w / dist ** (n + 2)) / r


def _kernel_gradient_rows(x: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    """Unit-ball kernel gradients grad_x P(x, zeta_j), shape (Q, n)."""
    n = x.size
    w = x[None, :] - nodes
    dist = np.linalg.norm(w, axis=1)
    one_minus = 1.0 - float(np.sum(x * x))
    return -2.0 * x[None, :] / dist[:, None] ** n - n * one_minus * w / dist[:, None] ** (n + 2)


def poisson_extend(boundary, x, rule: QuadratureRule, eps_kernel: float = NEAR_BOUNDARY_EPS) -> float:
    """Poisson integral of boundary data at x, by the rule's quadrature."""
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    if r >= 1.0:
        raise DomainError("poisson_extend requires |x| < 1")
    if r >= 1.0 - eps_kernel:
        warnings.warn("evaluation within eps_kernel of the sphere; kernel quadrature error grows", NearBoundaryWarning, stacklevel=2)
    kernel = _kernel_values(x[None, :], rule.nodes)[0]
    g = np.asarray(boundary(rule.nodes), dtype=float)
    return float(np.sum(rule.weights * kernel * g))


class HarmonicScalar:
    """Scalar harmonic function on B^n, polynomial- or extension-backed."""

    def __init__(self, n: int, kind: str, poly: Polynomial | None = None, boundary=None, rule: QuadratureRule | None = None):
        self.n = n
        self.kind = kind
        self.poly = poly
        self.rule = rule
        self._grad_polys = None
        if kind == POLYNOMIAL:
            if poly is None or poly.n != n:
                raise PreconditionError("polynomial representation requires a Polynomial of matching dimension")
            if not poly.laplacian().is_zero(tol=1e-9 * (1.0 + max(map(abs, poly.terms.values()), default=0.0))):
                raise PreconditionError("polynomial is not harmonic at coefficient level")
        elif kind == POISSON_EXTENSION:
            if boundary is None or rule is None or rule.n != n:
                raise PreconditionError("extension representation requires boundary data and a sphere rule")
            self._boundary_values = np.asarray(boundary(rule.nodes), dtype=float)
            if self._boundary_values.shape != (rule.sample_count,):
                raise PreconditionError("boundary function must map (Q, n) nodes to (Q,) values")
        else:
            raise PreconditionError(f"unknown representation {kind!r}")

    @classmethod
    def from_polynomial(cls, poly: Polynomial) -> "HarmonicScalar":
        return cls(poly.n, POLYNOMIAL, poly=poly)

    @classmethod
    def from_boundary(cls, boundary, rule: QuadratureRule) -> "HarmonicScalar":
        return cls(rule.n, POISSON_EXTENSION, boundary=boundary, rule=rule)

    def _warn_or_raise_near_boundary(self, radii: np.ndarray) -> None:
        top = float(np.max(radii)) if radii.size else 0.0
        if top >= 1.0:
            raise DomainError("extension representation is only evaluable for |x| < 1")
        if top >= 1.0 - NEAR_BOUNDARY_EPS:
            warnings.warn("evaluation within eps_kernel of the sphere; kernel quadrature error grows", NearBoundaryWarning, stacklevel=3)

    def evaluate(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if self.kind == POLYNOMIAL:
            return self.poly.evaluate(X)
        self._warn_or_raise_near_boundary(np.linalg.norm(X, axis=1))
        out = np.empty(X.shape[0])
        wg = self.rule.weights * self._boundary_values
        for start in range(0, X.shape[0], _PT_CHUNK):
            sl = slice(start, min(start + _PT_CHUNK, X.shape[0]))
            out[sl] = _kernel_values(X[sl], self.rule.nodes) @ wg
        return out

    def __call__(self, x) -> float:
        return float(self.evaluate(np.asarray(x, dtype=float)[None, :])[0])

    def gradient_batch(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if self.kind == POLYNOMIAL:
            if self._grad_polys is None:
                self._grad_polys = self.poly.gradient_polys()
            return np.column_stack([g.evaluate(X) for g in self._grad_polys])
        self._warn_or_raise_near_boundary(np.linalg.norm(X, axis=1))
        wg = self.rule.weights * self._boundary_values
        out = np.empty_like(X)
        for i, x in enumerate(X):
            out[i] = wg @ _kernel_gradient_rows(x, self.rule.nodes)
        return out

    def gradient(self, x) -> np.ndarray:
        return self.gradient_batch(np.asarray(x, dtype=float)[None, :])[0]


def gradient(f: HarmonicScalar, x) -> np.ndarray:
    """Gradient of a harmonic function at a point."""
    return f.gradient(x)


def harmonic_polynomial_basis(n: int, degree: int) -> list[HarmonicScalar]:
    """Exact homogeneous harmonic polynomials of each degree <= degree."""
    return [HarmonicScalar.from_polynomial(p) for p in harmonic_basis(n, degree)]


class HarmonicMap:
    """Vector-valued harmonic map: a tuple of HarmonicScalar components."""

    def __init__(self, components):
        components = tuple(components)
        if not components:
            raise PreconditionError("harmonic map needs at least one component")
        n = components[0].n
        if any(c.n != n for c in components):
            raise PreconditionError("all components must share the same dimension")
        self.components = components
        self.n = n
        self.m = len(components)

    @classmethod
    def from_polynomials(cls, polys) -> "HarmonicMap":
        return cls([HarmonicScalar.from_polynomial(p) for p in polys])

    def evaluate(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.column_stack([c.evaluate(X) for c in self.components])

    def value(self, x) -> np.ndarray:
        return self.evaluate(np.asarray(x, dtype=float)[None, :])[0]

    def __call__(self, x) -> np.ndarray:
        return self.value(x)

    def jacobian(self, x) -> np.ndarray:
        """Matrix of first partials, rows are component gradients."""
        return np.vstack([c.gradient(x) for c in self.components])

    def jacobian_batch(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        rows = [c.gradient_batch(X) for c in self.components]
        return np.stack(rows, axis=1)

    def det_jacobian(self, x) -> float:
        return float(np.linalg.det(self.jacobian(x)))

    @property
    def is_polynomial(self) -> bool:
        return all(c.kind == POLYNOMIAL for c in self.components)

    def to_json_dict(self) -> dict:
        if not self.is_polynomial:
            raise PreconditionError("only polynomial-backed maps are serializable")
        comps = []
        for c in self.components:
            comps.append({",".join(map(str, e)): v for e, v in c.poly.terms.items()})
        degree = max(c.poly.degree for c in self.components)
        return {"n": self.n, "degree": degree, "components": comps}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, doc: dict) -> "HarmonicMap":
        n = int(doc["n"])
        polys = []
        for comp in doc["components"]:
            terms = {tuple(int(t) for t in key.split(",")): float(v) for key, v in comp.items()}
            polys.append(Polynomial(n, terms))
        return cls.from_polynomials(polys)

    @classmethod
    def from_json(cls, text: str) -> "HarmonicMap":
        return cls.from_json_dict(json.loads(text))


def jacobian(F: HarmonicMap, x) -> np.ndarray:
    return F.jacobian(x)


def det_jacobian(F: HarmonicMap, x) -> float:
    return F.det_jacobian(x)


def hardy_norm(F: HarmonicMap, p: float, r_grid=None, rule: QuadratureRule | None = None) -> float:
    """sup over a radius grid of the integral p-means of |F(r zeta)|.

    The p-means are non-decreasing in r for harmonic maps, so the largest
    grid radius dominates; the max is reported as the sup estimate.
    """
    if p < 1:
        raise PreconditionError("hardy_norm requires p >= 1")
    if r_grid is None:
        r_grid = np.array([0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99])
    r_grid = np.asarray(r_grid, dtype=float)
    if np.any(r_grid <= 0) or np.any(r_grid >= 1):
        raise PreconditionError("radius grid must lie in (0, 1)")
    if rule is None:
        rule = sphere_rule(F.n, 1 << 14, seed=0)
    best = 0.0
    for r in r_grid:
        vals = np.linalg.norm(F.evaluate(r * rule.nodes), axis=1)
        mp = float(np.sum(rule.weights * vals**p)) ** (1.0 / p)
        best = max(best, mp)
    return best


def mean_value_gap(f: HarmonicScalar, a, r: float, rule: QuadratureRule) -> tuple[float, float]:
    """(|f(a) - sphere average over B(a, r)|, quadrature standard error)."""
    a = np.asarray(a, dtype=float)
    vals = f.evaluate(a[None, :] + r * rule.nodes)
    avg = float(np.sum(rule.weights * vals))
    return abs(f(a) - avg), rule.standard_error(vals)


# ---------------------------------------------------------------------------
# Generators and stock maps
# ---------------------------------------------------------------------------


def random_harmonic_polynomial(n: int, degree: int, rng: np.random.Generator, zero_constant: bool = False) -> Polynomial:
    """Random combination of the harmonic basis, coefficients uniform [-1, 1]."""
    basis = harmonic_basis(n, degree)
    if zero_constant:
        basis = [b for b in basis if b.degree > 0]
    while True:
        coeffs = rng.uniform(-1.0, 1.0, size=len(basis))
        if np.max(np.abs(coeffs)) >= 1e-6:  # reject null functions
            break
    poly = Polynomial(n, {})
    for c, b in zip(coeffs, basis):
        poly = poly + b * float(c)
    return poly


def random_harmonic_scalar(n: int, degree: int, rng: np.random.Generator, zero_constant: bool = False) -> HarmonicScalar:
    return HarmonicScalar.from_polynomial(random_harmonic_polynomial(n, degree, rng, zero_constant))


def normalize_harmonic_map(G: HarmonicMap, min_det: float = 1e-8) -> HarmonicMap:
    """Affine correction F = J_G(0)^(-1) (G - G(0)): F(0)=0 and F'(0)=I."""
    if G.m != G.n:
        raise PreconditionError("normalization requires a square map")
    J0 = G.jacobian(np.zeros(G.n))
    if abs(np.linalg.det(J0)) < min_det:
        raise PreconditionError("Jacobian at 0 is numerically singular; sample rejected")
    A = np.linalg.inv(J0)
    G0 = G.value(np.zeros(G.n))
    polys = []
    for i in range(G.n):
        p = Polynomial(G.n, {})
        for j in range(G.n):
            if A[i, j] != 0.0:
                p = p + (G.components[j].poly.shift_constant(-float(G0[j]))) * float(A[i, j])
        polys.append(p)
    return HarmonicMap.from_polynomials(polys)


def random_harmonic_map(n: int, degree: int, rng: np.random.Generator, normalize: bool = False, max_tries: int = 64) -> HarmonicMap:
    """Random polynomial harmonic map; optionally normalized to F(0)=0, J_F(0)=1."""
    for _ in range(max_tries):
        polys = [random_harmonic_polynomial(n, degree, rng) for _ in range(n)]
        G = HarmonicMap.from_polynomials(polys)
        if not normalize:
            return G
        try:
            return normalize_harmonic_map(G)
        except PreconditionError:
            continue
    raise PreconditionError("could not draw a non-degenerate harmonic map")


def sup_norm_estimate(F: HarmonicMap, sample_count: int = 100_000, seed: int = 0) -> float:
    """Dense-sample estimate of sup |F| over the closed ball, times (1 + 1e-6).

    |F| is subharmonic, so the boundary sample carries the maximum; an
    interior sample is included as a safety net for near-boundary peaks.
    """
    from .geometry import ball_rule

    half = sample_count // 2
    sphere = sphere_rule(F.n, half, seed=seed)
    ball = ball_rule(F.n, sample_count - half, seed=seed + 1)
    vals_sphere = np.linalg.norm(F.evaluate(sphere.nodes), axis=1) if F.is_polynomial else np.array([0.0])
    radius_cap = 1.0 if F.is_polynomial else 1.0 - NEAR_BOUNDARY_EPS
    vals_ball = np.linalg.norm(F.evaluate(radius_cap * ball.nodes), axis=1)
    return float(max(np.max(vals_sphere), np.max(vals_ball))) * (1.0 + 1e-6)


def identity_map(n: int) -> HarmonicMap:
    return linear_map(np.eye(n))


def linear_map(A) -> HarmonicMap:
    A = np.asarray(A, dtype=float)
    return HarmonicMap.from_polynomials([linear_poly(A[i]) for i in range(A.shape[0])])


def scaled_axes_map(n: int, k: float) -> HarmonicMap:
    """The map (k x_1, x_2 / k, x_3, ..., x_n): unit Jacobian, unbounded family."""
    diag = np.ones(n)
    diag[0] = k
    diag[1] = 1.0 / k
    return linear_map(np.diag(diag))


def complex_power_map(m: int) -> HarmonicMap:
    """Real/imaginary parts of z^m on the plane as a harmonic map of R^2."""
    if m < 1:
        raise PreconditionError("complex power needs m >= 1")
    from math import comb

    re_terms = {}
    im_terms = {}
    for j in range(m + 1):
        c = comb(m, j)
        # i^j cycles 1, i, -1, -i
        if j % 4 == 0:
            re_terms[(m - j, j)] = float(c)
        elif j % 4 == 1:
            im_terms[(m - j, j)] = float(c)
        elif j % 4 == 2:
            re_terms[(m - j, j)] = -float(c)
        else:
            im_terms[(m - j, j)] = -float(c)
    return HarmonicMap.from_polynomials([Polynomial(2, re_terms), Polynomial(2, im_terms)])
