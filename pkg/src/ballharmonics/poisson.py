"""Desk-scale solutions of the Poisson equation on the unit ball.

Three routes, used to cross-check each other:

  * manufactured: start from a polynomial map u, emit (source, boundary)
    exactly (coefficient-level Laplacian), keep u as the oracle;
  * radial_ode: for radial sources, integrate u'' + (n-1) u'/t = f(t) with
    u'(0) = 0, u(1) = 0 by nested Gauss-Legendre quadrature;
  * newtonian_mc: Monte Carlo Newtonian potential plus a harmonic
    correction fitted on the boundary.

The MC potential splits the fundamental solution at radius ``delta`` into
a C^1-mollified global kernel (fixed samples; its distributional Laplacian
is the normalized indicator of the delta-ball) and a compactly supported
singular remainder integrated in a frame moving with the evaluation point
(radially importance-sampled).  The split keeps the estimator smooth in x
with a structurally correct Laplacian, so finite differences of the
solution reproduce the source instead of noise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NearBoundaryWarning, PreconditionError
from .fd import fd_jacobian
from .geometry import Ball, ball_rule, spawn_rng, sphere_rule, unit_ball_volume, unit_sphere_area
from .harmonic import HarmonicMap
from .polynomials import Polynomial, harmonic_basis
from .reports import CheckReport

MANUFACTURED = "manufactured"
RADIAL_ODE = "radial_ode"
NEWTONIAN_MC = "newtonian_mc"


@dataclass
class PoissonProblem:
    """Source/boundary data for Delta u = f on the unit ball."""

    n: int
    source: object  # callable (N, n) -> (N, m)
    boundary: object  # callable (N, n) sphere nodes -> (N, m)
    holder_alpha: float
    holder_seminorm_estimate: float
    m: int | None = None
    label: str = ""

    def __post_init__(self):
        if not 0 < self.holder_alpha <= 1:
            raise PreconditionError("holder_alpha must lie in (0, 1]")
        if self.m is None:
            self.m = self.n

    def source_values(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.asarray(self.source(X), dtype=float)
        if out.ndim == 1:
            out = out[:, None]
        return out

    def boundary_values(self, nodes) -> np.ndarray:
        out = np.asarray(self.boundary(nodes), dtype=float)
        if out.ndim == 1:
            out = out[:, None]
        return out


@dataclass
class PoissonSolution:
    """Evaluable solution with an a-posteriori Laplacian residual estimate."""

    evaluator: object  # callable (N, n) -> (N, m)
    method: str
    residual_estimate: float
    n: int
    m: int
    details: dict = field(default_factory=dict)

    def evaluate(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.asarray(self.evaluator(X), dtype=float)
        if out.ndim == 1:
            out = out[:, None]
        return out

    def value(self, x) -> np.ndarray:
        return self.evaluate(np.asarray(x, dtype=float)[None, :])[0]


def estimate_holder_seminorm(fn, n: int, alpha: float, pair_count: int = 100_000, seed: int = 0, radius: float = 1.0) -> float:
    """Sampled-pair estimate of sup |f(x)-f(y)| / |x-y|^alpha over the ball."""
    rng = spawn_rng(seed, "holder")
    dirs = rng.standard_normal((2 * pair_count, n))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    pts = dirs * (radius * rng.random(2 * pair_count) ** (1.0 / n))[:, None]
    X, Y = pts[:pair_count], pts[pair_count:]
    scales = np.exp(rng.uniform(math.log(1e-4), math.log(1.0), size=pair_count // 4))
    ndirs = rng.standard_normal((pair_count // 4, n))
    ndirs /= np.linalg.norm(ndirs, axis=1)[:, None]
    near = X[: pair_count // 4] + scales[:, None] * ndirs
    inside = np.linalg.norm(near, axis=1) < radius
    Y = Y.copy()
    Y[: pair_count // 4][inside] = near[inside]
    sep = np.linalg.norm(X - Y, axis=1)
    keep = sep > 1e-12
    fx = np.atleast_2d(np.asarray(fn(X[keep]), dtype=float))
    fy = np.atleast_2d(np.asarray(fn(Y[keep]), dtype=float))
    if fx.ndim == 1:
        fx, fy = fx[:, None], fy[:, None]
    num = np.linalg.norm(fx - fy, axis=1) if fx.ndim == 2 and fx.shape[1] > 1 else np.abs(fx - fy).ravel()
    return float(np.max(num / sep[keep] ** alpha))


def polynomial_map_callable(polys):
    polys = list(polys)

    def fn(X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.column_stack([p.evaluate(X) for p in polys])

    return fn


def manufactured_solution(u_polys, holder_alpha: float = 0.5, seed: int = 0, label: str = "") -> tuple[PoissonProblem, PoissonSolution]:
    """Exact problem/solution pair from a polynomial map u.

    The source is the coefficient-level Laplacian of u; the boundary data is
    u itself restricted to the sphere.
    """
    u_polys = list(u_polys)
    n = u_polys[0].n
    if any(p.n != n for p in u_polys):
        raise PreconditionError("all components must share one dimension")
    f_polys = [p.laplacian() for p in u_polys]
    source = polynomial_map_callable(f_polys)
    boundary = polynomial_map_callable(u_polys)
    seminorm = estimate_holder_seminorm(source, n, holder_alpha, pair_count=20_000, seed=seed)
    problem = PoissonProblem(
        n=n,
        source=source,
        boundary=boundary,
        holder_alpha=holder_alpha,
        holder_seminorm_estimate=seminorm,
        m=len(u_polys),
        label=label or "manufactured",
    )
    solution = PoissonSolution(
        evaluator=polynomial_map_callable(u_polys),
        method=MANUFACTURED,
        residual_estimate=0.0,
        n=n,
        m=len(u_polys),
        details={"u_polys": [dict(p.terms) for p in u_polys]},
    )
    return problem, solution


# ---------------------------------------------------------------------------
# Radial route
# ---------------------------------------------------------------------------


def solve_radial(f_radial, n: int, node_count: int = 64) -> PoissonSolution:
    """Solve u'' + (n-1) u'/t = f(t), u'(0) = 0, u(1) = 0 by quadrature.

    u(rho) = -int_rho^1 s^(1-n) I(s) ds with I(s) = int_0^s t^(n-1) f(t) dt;
    both integrals use ``node_count``-point Gauss-Legendre, so the result is
    accurate to near machine precision for smooth sources.  The returned
    solution replicates the scalar profile across all n components.
    """
    x_gl, w_gl = np.polynomial.legendre.leggauss(node_count)

    def inner(S: np.ndarray) -> np.ndarray:
        # I(s) for an array of s: nodes t = s (x+1)/2
        T = 0.5 * S[..., None] * (x_gl + 1.0)
        vals = np.asarray(f_radial(T.ravel()), dtype=float).reshape(T.shape)
        return 0.5 * S * np.sum(w_gl * T ** (n - 1) * vals, axis=-1)

    def profile(rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=float)
        S = 0.5 * (1.0 + rho)[..., None] + 0.5 * (1.0 - rho)[..., None] * x_gl
        G = inner(S) / S ** (n - 1)
        return -0.5 * (1.0 - rho) * np.sum(w_gl * G, axis=-1)

    def evaluator(X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        u = profile(np.linalg.norm(X, axis=1))
        return np.repeat(u[:, None], n, axis=1)

    # ODE residual at interior probes via 5-point finite differences
    probes = np.linspace(0.15, 0.85, 8)
    h = 5e-3
    stencil = probes[:, None] + h * np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
    U = profile(stencil.ravel()).reshape(stencil.shape)
    d1 = (U[:, 0] - 8 * U[:, 1] + 8 * U[:, 3] - U[:, 4]) / (12 * h)
    d2 = (-U[:, 0] + 16 * U[:, 1] - 30 * U[:, 2] + 16 * U[:, 3] - U[:, 4]) / (12 * h * h)
    fvals = np.asarray(f_radial(probes), dtype=float)
    residual = float(np.max(np.abs(d2 + (n - 1) * d1 / probes - fvals)))
    return PoissonSolution(evaluator=evaluator, method=RADIAL_ODE, residual_estimate=residual, n=n, m=n)


# ---------------------------------------------------------------------------
# Newtonian-potential route
# ---------------------------------------------------------------------------


def _fundamental_solution(r: np.ndarray, n: int) -> np.ndarray:
    if n == 2:
        return np.log(r) / (2.0 * math.pi)
    sigma = unit_sphere_area(n)
    return -(r ** (2.0 - n)) / ((n - 2.0) * sigma)


def _mollifier_coeffs(delta: float, n: int) -> tuple[float, float]:
    """(a, b) with Phi_tilde = a + b r^2 inside the delta-ball; C^1 match."""
    sigma = unit_sphere_area(n)
    b = delta ** (-n) / (2.0 * sigma)
    a = float(_fundamental_solution(np.array([delta]), n)[0]) - b * delta * delta
    return a, b


def solve_newtonian(
    problem: PoissonProblem,
    mc_count: int = 1 << 21,
    seed: int = 0,
    delta: float = 0.3,
    local_count: int = 1 << 15,
    fit_degree: int = 10,
    fit_nodes: int = 1024,
    boundary_mc: int = 1 << 18,
    residual_probes: int = 6,
) -> PoissonSolution:
    """Newtonian potential of the source plus a harmonic boundary correction."""
    n, m = problem.n, problem.m
    if n < 2:
        raise PreconditionError("solver needs n >= 2")
    vol = unit_ball_volume(n)
    sigma = unit_sphere_area(n)
    a_c, b_c = _mollifier_coeffs(delta, n)

    Y = ball_rule(n, mc_count, seed=seed).nodes
    FY = problem.source_values(Y)
    f_inf = float(np.max(np.linalg.norm(FY, axis=1)))

    rng = spawn_rng(seed, "newtonian_local")
    r_loc = delta * np.sqrt(rng.random(local_count))
    th = rng.standard_normal((local_count, n))
    th /= np.linalg.norm(th, axis=1)[:, None]
    Z = th * r_loc[:, None]
    psi = _fundamental_solution(r_loc, n) - (a_c + b_c * r_loc**2)
    w_loc = psi * sigma * r_loc ** (n - 1) * (delta * delta / (2.0 * r_loc)) / local_count

    delta_sq = delta * delta

    def phi_tilde_sq(r2: np.ndarray) -> np.ndarray:
        """Mollified kernel as a function of squared distance (avoids sqrt).

        The smooth branch is written over the whole array with in-place ops
        (near entries are few and get overwritten), keeping this hot path
        allocation-light.
        """
        if n == 2:
            out = np.log(r2)
            out *= 1.0 / (4.0 * math.pi)
        elif n == 3:
            out = np.sqrt(r2)
            np.reciprocal(out, out=out)
            out *= -1.0 / sigma
        elif n == 4:
            out = np.reciprocal(r2)
            out *= -1.0 / (2.0 * sigma)
        else:
            out = r2 ** (0.5 * (2.0 - n))
            out *= -1.0 / ((n - 2.0) * sigma)
        near = r2 < delta_sq
        if near.any():
            out[near] = a_c + b_c * r2[near]
        return out

    def smooth_part(X: np.ndarray, sample_cap: int | None = None) -> np.ndarray:
        """T1: global mollified-kernel convolution with fixed samples."""
        Ysub = Y if sample_cap is None else Y[:sample_cap]
        Fsub = FY if sample_cap is None else FY[:sample_cap]
        acc = np.zeros((X.shape[0], m))
        Xsq = np.einsum("ij,ij->i", X, X)
        chunk = max(1024, (1 << 24) // max(X.shape[0], 1))
        for start in range(0, Ysub.shape[0], chunk):
            yc = Ysub[start : start + chunk]
            fc = Fsub[start : start + chunk]
            d2 = X @ yc.T
            d2 *= -2.0
            d2 += Xsq[:, None]
            d2 += np.einsum("ij,ij->i", yc, yc)[None, :]
            np.maximum(d2, 1e-300, out=d2)
            acc += phi_tilde_sq(d2) @ fc
        return vol * acc / Ysub.shape[0]

    def local_part(X: np.ndarray) -> np.ndarray:
        """T2: singular remainder, moving frame, zero outside the unit ball."""
        acc = np.zeros((X.shape[0], m))
        chunk = max(1, (1 << 21) // local_count)
        for start in range(0, X.shape[0], chunk):
            xc = X[start : start + chunk]
            pts = (xc[:, None, :] + Z[None, :, :]).reshape(-1, n)
            inside = np.einsum("ij,ij->i", pts, pts) < 1.0
            vals = np.zeros((pts.shape[0], m))
            if np.any(inside):
                vals[inside] = problem.source_values(pts[inside])
            vals = vals.reshape(xc.shape[0], local_count, m)
            acc[start : start + chunk] = np.einsum("j,pjm->pm", w_loc, vals)
        return acc

    fit_rule = sphere_rule(n, fit_nodes, seed=seed + 1)
    g_fit = problem.boundary_values(fit_rule.nodes)
    t_fit = smooth_part(fit_rule.nodes, sample_cap=min(boundary_mc, mc_count)) + local_part(fit_rule.nodes)
    h_data = g_fit - t_fit
    basis = harmonic_basis(n, fit_degree)
    design = np.column_stack([p.evaluate(fit_rule.nodes) for p in basis])
    coeffs, *_ = np.linalg.lstsq(design, h_data, rcond=None)
    fit_residual = float(np.max(np.abs(design @ coeffs - h_data)))

    def harmonic_part(X: np.ndarray) -> np.ndarray:
        return np.column_stack([p.evaluate(X) for p in basis]) @ coeffs

    def evaluator(X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if np.max(np.linalg.norm(X, axis=1)) > 0.9:
            import warnings

            warnings.warn("newtonian_mc accuracy degrades for |x| > 0.9", NearBoundaryWarning, stacklevel=2)
        return smooth_part(X) + local_part(X) + harmonic_part(X)

    # FD-Laplacian residual at interior probes, h sized against MC smoothness
    probe_rng = spawn_rng(seed, "newtonian_probes")
    dirs = probe_rng.standard_normal((residual_probes, n))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    probes = dirs * (0.6 * probe_rng.random(residual_probes) ** (1.0 / n))[:, None]
    h = 0.02
    stencil = [probes]
    for i in range(n):
        e = np.zeros(n)
        e[i] = h
        stencil.extend([probes + e, probes - e])
    allpts = np.vstack(stencil)
    vals = smooth_part(allpts) + local_part(allpts) + harmonic_part(allpts)
    vals = vals.reshape(2 * n + 1, residual_probes, m)
    lap = (np.sum(vals[1:], axis=0) - 2.0 * n * vals[0]) / (h * h)
    resid = np.linalg.norm(lap - problem.source_values(probes), axis=1)
    residual = float(np.max(resid) / (1.0 + f_inf))

    return PoissonSolution(
        evaluator=evaluator,
        method=NEWTONIAN_MC,
        residual_estimate=residual,
        n=n,
        m=m,
        details={"delta": delta, "mc_count": mc_count, "fit_degree": fit_degree, "boundary_fit_residual": fit_residual, "source_sup_estimate": f_inf},
    )


# ---------------------------------------------------------------------------
# Membership and covering experiments
# ---------------------------------------------------------------------------


def pe_membership(
    u: PoissonSolution,
    M: float,
    sample_count: int = 1 << 16,
    seed: int = 0,
    problem: PoissonProblem | None = None,
) -> CheckReport:
    """Verify |u| <= M on a dense sample, plus the normalization residuals.

    Normalization: |u(0)| < 1e-9 and |J_u(0) - 1| < 1e-6 (finite-difference
    Jacobian).  When the generating problem is supplied, its Holder estimate
    is re-run and compared against the stored seminorm within 1e-6 slack.
    """
    rule = ball_rule(u.n, sample_count, seed=seed)
    radius_cap = 0.999 if u.method != NEWTONIAN_MC else 0.9
    vals = np.linalg.norm(u.evaluate(radius_cap * rule.nodes), axis=1)
    sup = float(np.max(vals))
    bound_margin = M - sup

    u0 = float(np.linalg.norm(u.value(np.zeros(u.n))))
    J0 = fd_jacobian(u.evaluate, np.zeros(u.n), h=1e-4)
    det_res = abs(float(np.linalg.det(J0)) - 1.0)
    norm_ok = u0 < 1e-9 and det_res < 1e-6

    holder_ok = True
    holder_note = ""
    if problem is not None:
        fresh = estimate_holder_seminorm(problem.source_values, problem.n, problem.holder_alpha, pair_count=20_000, seed=seed + 1)
        holder_ok = fresh <= problem.holder_seminorm_estimate * (1.0 + 1e-6) or fresh <= problem.holder_seminorm_estimate + 1e-12
        holder_note = f"; holder seminorm {fresh:.6g} vs stored {problem.holder_seminorm_estimate:.6g}"

    passed = bound_margin >= 0 and norm_ok and holder_ok
    return CheckReport(
        check_name="pe_membership",
        empirical_constant=sup,
        worst_witness=rule.nodes[int(np.argmax(vals))].tolist(),
        sample_count=sample_count,
        passed=passed,
        notes=f"sup|u|={sup:.6g} vs M={M:g}; |u(0)|={u0:.2e}; |J_u(0)-1|={det_res:.2e}" + holder_note,
        seed=seed,
        details={"bound_margin": bound_margin, "center_residual": u0, "jacobian_residual": det_res},
    )


def covering_statistics(
    family,
    direction_count: int = 16,
    tol: float = 5e-3,
    config=None,
    labels=None,
) -> CheckReport:
    """Covering radii across a family; the minimum is the empirical witness
    for a family-wide covered-ball radius.  Never a certified constant: the
    existence argument behind it is non-constructive, so this reports an
    observed lower envelope only.
    """
    from .degree import CallableMap, covering_radius

    radii = []
    for member in family:
        if isinstance(member, PoissonSolution):
            target = CallableMap(member.evaluate, member.n)
            n = member.n
        elif isinstance(member, HarmonicMap):
            target = member
            n = member.n
        else:
            target = member
            n = member.n
        radii.append(covering_radius(target, Ball.unit(n), direction_count=direction_count, tol=tol, config=config))
    i_min = int(np.argmin(radii))
    labels = list(labels) if labels else [f"member_{i}" for i in range(len(radii))]
    return CheckReport(
        check_name="covering_statistics",
        empirical_constant=float(radii[i_min]),
        worst_witness=labels[i_min],
        sample_count=len(radii),
        passed=bool(radii[i_min] > 0),
        notes="empirical covered-radius witness over the family; not a certified constant",
        details={"radii": {lab: float(r) for lab, r in zip(labels, radii)}},
    )


def uk_map(n: int, k: float) -> HarmonicMap:
    """The unbounded family (k x_1, x_2 / k, x_3, ...): unit Jacobian maps
    whose covered radius collapses like 1/k."""
    from .harmonic import scaled_axes_map

    return scaled_axes_map(n, k)
