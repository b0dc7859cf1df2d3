"""Empirical-constant checks for Lipschitz-type criteria on the unit ball.

Every check reports the smallest constant making its inequality hold over
the drawn sample, plus the witness attaining it.  Equivalence probes pair
two such constants and compare their ratio against a budget derived from
the explicit constants of the corresponding sufficiency/necessity
arguments (168n, pi*sqrt(n), sqrt(n)*H_n, (n+1)*sqrt(n)/2), with a default
slack factor of 2: the statements are falsifiable at desk scale without
asserting sharpness.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, PreconditionError
from .geometry import QuadratureRule, ball_rule, spawn_rng, sphere_rule
from .harmonic import HarmonicScalar
from .majorants import Majorant
from .reports import CheckReport

MAX_SAMPLE_RADIUS = 0.95
PAIR_SAMPLE_RADIUS = 0.99
SHELL_LOW = 0.9
MIN_PAIR_SEPARATION = 1e-10


def harmonic_number(n: int) -> float:
    return float(sum(1.0 / j for j in range(1, n + 1)))


def default_equivalence_budget(n: int, slack: float = 2.0) -> float:
    """Budget for the gradient/Lipschitz constant ratio: slack * 168 n."""
    return slack * 168.0 * n


def sample_interior(n: int, count: int, rng: np.random.Generator, rmax: float = MAX_SAMPLE_RADIUS, bias: float = 0.3) -> np.ndarray:
    """Interior sample: uniform in the rmax-ball plus a boundary-biased shell.

    Weighted quotients are extremized near the boundary, so a ``bias``
    fraction of points gets radii uniform in [SHELL_LOW * rmax / 0.95, rmax].
    """
    n_shell = int(count * bias)
    n_unif = count - n_shell
    dirs = rng.standard_normal((count, n))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    radii = np.empty(count)
    radii[:n_unif] = rmax * rng.random(n_unif) ** (1.0 / n)
    shell_lo = min(SHELL_LOW, 0.9 * rmax)
    radii[n_unif:] = rng.uniform(shell_lo, rmax, size=n_shell)
    return dirs * radii[:, None]


def sample_pairs(n: int, count: int, rng: np.random.Generator, rmax: float = MAX_SAMPLE_RADIUS, near_fraction: float = 0.25):
    """Point pairs in the rmax-ball: independent pairs plus short offsets."""
    x = sample_interior(n, count, rng, rmax=rmax)
    y = sample_interior(n, count, rng, rmax=rmax)
    n_near = int(count * near_fraction)
    if n_near:
        scales = np.exp(rng.uniform(math.log(1e-4), math.log(0.5), size=n_near))
        dirs = rng.standard_normal((n_near, n))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        y_near = x[:n_near] + scales[:, None] * dirs
        inside = np.linalg.norm(y_near, axis=1) <= rmax
        y[:n_near][inside] = y_near[inside]
    sep = np.linalg.norm(x - y, axis=1)
    keep = sep > MIN_PAIR_SEPARATION
    return x[keep], y[keep]


def _report(name, constant, witness, count, passed, seed, notes="", details=None):
    return CheckReport(
        check_name=name,
        empirical_constant=float(constant),
        worst_witness=witness,
        sample_count=int(count),
        passed=bool(passed),
        notes=notes,
        seed=seed,
        details=details or {},
    )


def gradient_weight_constant(f: HarmonicScalar, m: Majorant, X: np.ndarray) -> tuple[float, np.ndarray]:
    """max over rows of |grad f| * d / w(d) with d the boundary distance."""
    d = 1.0 - np.linalg.norm(X, axis=1)
    g = np.linalg.norm(f.gradient_batch(X), axis=1)
    vals = g * d / np.asarray(m(d), dtype=float)
    i = int(np.argmax(vals))
    return float(vals[i]), X[i]


def hl_gradient_constant(f: HarmonicScalar, m: Majorant, samples: int = 4096, seed: int = 0) -> CheckReport:
    """Smallest C with |grad f(x)| <= C w(d(x))/d(x) over the sample."""
    rng = spawn_rng(seed, "hl_gradient")
    X = sample_interior(f.n, samples, rng)
    c, witness = gradient_weight_constant(f, m, X)
    return _report("hl_gradient_constant", c, witness.tolist(), X.shape[0], np.isfinite(c), seed)


def lipschitz_quotient_constant(f: HarmonicScalar, m: Majorant, X: np.ndarray, Y: np.ndarray) -> tuple[float, tuple]:
    fx = f.evaluate(X)
    fy = f.evaluate(Y)
    sep = np.linalg.norm(X - Y, axis=1)
    vals = np.abs(fx - fy) / np.asarray(m(sep), dtype=float)
    i = int(np.argmax(vals))
    return float(vals[i]), (X[i], Y[i])


def hl_lipschitz_constant(f: HarmonicScalar, m: Majorant, pair_samples: int = 20000, seed: int = 0) -> CheckReport:
    """Smallest C with |f(x) - f(y)| <= C w(|x - y|) over sampled pairs."""
    rng = spawn_rng(seed, "hl_lipschitz")
    X, Y = sample_pairs(f.n, pair_samples, rng)
    c, (wx, wy) = lipschitz_quotient_constant(f, m, X, Y)
    return _report("hl_lipschitz_constant", c, [wx.tolist(), wy.tolist()], X.shape[0], np.isfinite(c), seed)


def hl_equivalence_probe(
    family,
    m: Majorant,
    samples: int = 4096,
    pair_samples: int = 20000,
    seed: int = 0,
    budget: float | None = None,
) -> CheckReport:
    """Two-sided gradient/Lipschitz constant ratios across a function family."""
    family = list(family)
    if not family:
        raise PreconditionError("family must be non-empty")
    n = family[0].n
    if budget is None:
        budget = default_equivalence_budget(n)
    rng = spawn_rng(seed, "hl_equivalence")
    worst = 0.0
    witness = None
    ratios = []
    for idx, f in enumerate(family):
        X = sample_interior(n, samples, rng)
        PX, PY = sample_pairs(n, pair_samples, rng)
        c_grad, _ = gradient_weight_constant(f, m, X)
        c_lip, _ = lipschitz_quotient_constant(f, m, PX, PY)
        if max(c_grad, c_lip) < 1e-14:
            raise PreconditionError("family contains a numerically null function")
        r1 = c_grad / c_lip
        r2 = c_lip / c_grad
        ratios.append({"index": idx, "C_grad": c_grad, "C_lip": c_lip, "grad_over_lip": r1, "lip_over_grad": r2})
        for label, r in (("grad_over_lip", r1), ("lip_over_grad", r2)):
            if r > worst:
                worst = r
                witness = {"function_index": idx, "direction": label, "C_grad": c_grad, "C_lip": c_lip}
    return _report(
        "hl_equivalence_probe",
        worst,
        witness,
        len(family) * (samples + pair_samples),
        worst <= budget,
        seed,
        notes=f"budget {budget:g} (two-sided)",
        details={"budget": budget, "ratios": ratios},
    )


def weighted_lipschitz_quotient(
    f: HarmonicScalar,
    m: Majorant,
    pair_samples: int = 20000,
    point_samples: int = 4096,
    seed: int = 0,
    budget: float | None = None,
) -> CheckReport:
    """Boundary-weighted difference quotient vs the weighted gradient bound.

    C_b = max |f(x)-f(y)| / (|x-y| w(1/sqrt(d(x) d(y)))) over pairs and
    C_a = max |grad f(x)| / w(1/d(x)) over points; the report carries the
    ratio C_b / C_a, budgeted by slack * pi * sqrt(n).
    """
    n = f.n
    if budget is None:
        budget = 2.0 * math.pi * math.sqrt(n)
    rng = spawn_rng(seed, "weighted_quotient")
    X, Y = sample_pairs(n, pair_samples, rng, rmax=PAIR_SAMPLE_RADIUS)
    dx = 1.0 - np.linalg.norm(X, axis=1)
    dy = 1.0 - np.linalg.norm(Y, axis=1)
    sep = np.linalg.norm(X - Y, axis=1)
    quot = np.abs(f.evaluate(X) - f.evaluate(Y)) / (sep * np.asarray(m(1.0 / np.sqrt(dx * dy)), dtype=float))
    ib = int(np.argmax(quot))
    c_b = float(quot[ib])

    P = sample_interior(n, point_samples, rng, rmax=PAIR_SAMPLE_RADIUS)
    dp = 1.0 - np.linalg.norm(P, axis=1)
    grad = np.linalg.norm(f.gradient_batch(P), axis=1)
    vals = grad / np.asarray(m(1.0 / dp), dtype=float)
    c_a = float(np.max(vals))

    degenerate = max(c_a, c_b) < 1e-14
    ratio = 0.0 if degenerate else (math.inf if c_a == 0 else c_b / c_a)
    return _report(
        "weighted_lipschitz_quotient",
        c_b,
        [X[ib].tolist(), Y[ib].tolist()],
        X.shape[0] + P.shape[0],
        degenerate or ratio <= budget,
        seed,
        notes=f"C_b={c_b:.6g}, C_a={c_a:.6g}, ratio budget {budget:g}",
        details={"C_b": c_b, "C_a": c_a, "ratio_b_over_a": ratio, "budget": budget},
    )


def mean_oscillation(f: HarmonicScalar, x, r: float, rule: QuadratureRule) -> float:
    """Normalized mean of |f - f(x)| over B(x, r) via a unit-ball rule."""
    x = np.asarray(x, dtype=float)
    d = 1.0 - float(np.linalg.norm(x))
    if not 0.0 < r <= d + 1e-12:
        raise DomainError("mean_oscillation requires 0 < r <= d(x)")
    vals = np.abs(f.evaluate(x[None, :] + r * rule.nodes) - f(x))
    return float(np.sum(rule.weights * vals))


def equivalence_abc_probe(
    f: HarmonicScalar,
    m: Majorant,
    point_samples: int = 2048,
    pair_samples: int = 20000,
    oscillation_points: int = 96,
    radius_fractions=(1.0, 0.5, 0.25, 0.1, 0.03),
    ball_nodes: int = 2048,
    seed: int = 0,
    slack: float = 2.0,
) -> CheckReport:
    """Three-way comparison of the weighted criteria (gradient / quotient /
    mean oscillation) with budgets from the explicit chain constants."""
    n = f.n
    budgets = {
        "b_over_a": slack * math.pi * math.sqrt(n),
        "c_over_a": slack * math.sqrt(n) * harmonic_number(n),
        "a_over_c": slack * (n + 1) * math.sqrt(n) / 2.0,
    }
    rng = spawn_rng(seed, "abc_probe")

    P = sample_interior(n, point_samples, rng)
    dp = 1.0 - np.linalg.norm(P, axis=1)
    grads = np.linalg.norm(f.gradient_batch(P), axis=1)
    c_a = float(np.max(grads / np.asarray(m(1.0 / dp), dtype=float)))

    X, Y = sample_pairs(n, pair_samples, rng, rmax=PAIR_SAMPLE_RADIUS)
    dx = 1.0 - np.linalg.norm(X, axis=1)
    dy = 1.0 - np.linalg.norm(Y, axis=1)
    sep = np.linalg.norm(X - Y, axis=1)
    c_b = float(np.max(np.abs(f.evaluate(X) - f.evaluate(Y)) / (sep * np.asarray(m(1.0 / np.sqrt(dx * dy)), dtype=float))))

    rule = ball_rule(n, ball_nodes, seed=seed)
    centers = sample_interior(n, oscillation_points, rng)
    c_c = 0.0
    witness_c = None
    for x in centers:
        d = 1.0 - float(np.linalg.norm(x))
        fx = f(x)
        for frac in radius_fractions:
            r = frac * d
            pts = x[None, :] + r * rule.nodes
            osc = float(np.sum(rule.weights * np.abs(f.evaluate(pts) - fx)))
            val = osc / (r * float(m(np.array([1.0 / r]))[0]))
            if val > c_c:
                c_c = val
                witness_c = {"x": x.tolist(), "r": r}

    consts = {"C_a": c_a, "C_b": c_b, "C_c": c_c}
    if max(consts.values()) < 1e-14:
        return _report("equivalence_abc_probe", 0.0, None, point_samples + X.shape[0], True, seed, notes="degenerate (constant function): vacuous pass", details={"constants": consts, "budgets": budgets})
    ratios = {
        "b_over_a": c_b / c_a if c_a > 0 else math.inf,
        "c_over_a": c_c / c_a if c_a > 0 else math.inf,
        "a_over_c": c_a / c_c if c_c > 0 else math.inf,
    }
    passed = all(ratios[k] <= budgets[k] for k in budgets)
    worst_key = max(budgets, key=lambda k: ratios[k] / budgets[k])
    return _report(
        "equivalence_abc_probe",
        ratios[worst_key],
        {"ratio": worst_key, "oscillation_witness": witness_c},
        point_samples + X.shape[0] + oscillation_points * len(radius_fractions) * ball_nodes,
        passed,
        seed,
        notes=f"worst ratio {worst_key}={ratios[worst_key]:.4g} vs budget {budgets[worst_key]:.4g}",
        details={"constants": consts, "ratios": ratios, "budgets": budgets},
    )


def gradient_bound_lemma(f: HarmonicScalar, a, r: float, rule: QuadratureRule) -> CheckReport:
    """Gradient-vs-sphere-oscillation bound:

        |grad f(a)| <= (n sqrt(n) / r) * mean over the sphere of
                       |f(a + r zeta) - f(a)| .

    Passes iff lhs <= rhs + 3 sigma-hat, sigma-hat the quadrature standard
    error (0 for the deterministic planar rule; floor 1e-9).
    """
    a = np.asarray(a, dtype=float)
    n = a.size
    if float(np.linalg.norm(a)) + r > 1.0 + 1e-12:
        raise DomainError("ball B(a, r) must be contained in the closed unit ball")
    vals = np.abs(f.evaluate(a[None, :] + r * rule.nodes) - f(a))
    factor = n * math.sqrt(n) / r
    rhs = factor * float(np.sum(rule.weights * vals))
    sigma = factor * rule.standard_error(vals)
    lhs = float(np.linalg.norm(f.gradient(a)))
    passed = lhs <= rhs + 3.0 * sigma + 1e-9
    return _report(
        "gradient_bound_lemma",
        lhs / rhs if rhs > 0 else 0.0,
        {"a": a.tolist(), "r": r},
        rule.sample_count,
        passed,
        rule.seed,
        notes=f"lhs={lhs:.6g}, rhs={rhs:.6g}, 3sigma={3*sigma:.3g}",
        details={"lhs": lhs, "rhs": rhs, "sigma": sigma},
    )
