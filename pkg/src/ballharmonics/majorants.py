"""Majorant weight functions and numerical tests of their regularity.

A majorant is an increasing function w on [0, inf) with w(0) = 0 whose
quotient w(t)/t is non-increasing.  A majorant is regular when both

    (i)  int_0^d  w(t)/t   dt <= C * w(d)      for 0 < d < d0,
    (ii) d * int_d^inf w(t)/t^2 dt <= C * w(d) for 0 < d < d0,

hold with a uniform constant.  Both tests here are grid/quadrature based:
the conditions are integral and monotonicity statements, so sampling is the
only generic check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EvaluationError, PreconditionError
from .reports import CheckReport


@dataclass(frozen=True)
class Majorant:
    """Weight function w with label and family parameters."""

    fn: object
    label: str
    params: dict = field(default_factory=dict)
    expected_regular: bool | None = None

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.asarray(self.fn(t), dtype=float)
        if not np.all(np.isfinite(out)):
            bad = t[~np.isfinite(out)] if out.shape == t.shape else t
            raise EvaluationError(f"majorant {self.label!r} non-finite", argument=bad)
        return out if out.shape else float(out)


def power_majorant(alpha: float) -> Majorant:
    """w(t) = t^alpha with 0 < alpha <= 1; regular iff alpha < 1."""
    if not 0 < alpha <= 1:
        raise PreconditionError("power majorant needs alpha in (0, 1]")
    return Majorant(
        fn=lambda t, a=alpha: np.power(t, a),
        label=f"power:{alpha:g}",
        params={"alpha": alpha},
        expected_regular=alpha < 1,
    )


def linear_majorant() -> Majorant:
    """w(t) = t; satisfies condition (i) with C = 1 but fails (ii)."""
    return Majorant(fn=lambda t: np.asarray(t, dtype=float), label="linear", expected_regular=False)


def log_majorant() -> Majorant:
    """w(t) = t * log(e + 1/t); a genuine majorant that fails condition (ii)."""

    def f(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        pos = t > 0
        out[pos] = t[pos] * np.log(math.e + 1.0 / t[pos])
        return out

    return Majorant(fn=f, label="log", expected_regular=False)


def inverse_log_majorant() -> Majorant:
    """w(t) = 1/log(e/t) for t <= 1, capped at 1 beyond; fails condition (i)."""

    def f(t):
        t = np.asarray(t, dtype=float)
        out = np.ones_like(t)
        small = (t > 0) & (t < 1)
        out[small] = 1.0 / (1.0 - np.log(t[small]))
        out[t <= 0] = 0.0
        return out

    return Majorant(fn=f, label="invlog", expected_regular=False)


def get_majorant(name: str) -> Majorant:
    """Resolve a registry name: 'power:alpha', 'linear', 'log', 'invlog'."""
    if name.startswith("power:"):
        return power_majorant(float(name.split(":", 1)[1]))
    builtin = {"linear": linear_majorant, "log": log_majorant, "invlog": inverse_log_majorant}
    if name in builtin:
        return builtin[name]()
    raise PreconditionError(f"unknown majorant {name!r}; use power:alpha, linear, log, invlog")


def default_grid(lo: float = 1e-8, hi: float = 1e4, per_decade: int = 64) -> np.ndarray:
    decades = math.log10(hi) - math.log10(lo)
    return np.logspace(math.log10(lo), math.log10(hi), int(round(per_decade * decades)) + 1)


def check_majorant(m: Majorant, grid=None, lambdas=(1.0, 2.0, 4.0, 10.0, 100.0), seed: int | None = None) -> CheckReport:
    """Verify the majorant axioms on a grid.

    Checks w(0) = 0, positivity, monotonicity of w, monotonicity of w(t)/t,
    and the scaling consequence w(lambda*t) <= lambda*w(t) for lambda >= 1.
    The report's empirical_constant is the worst violation margin (0 = clean
    pass); tolerance is 1e-9 relative to the grid's largest value.
    """
    if grid is None:
        grid = default_grid()
    grid = np.asarray(grid, dtype=float)
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise PreconditionError("grid must be positive and strictly increasing")

    w = np.asarray(m(grid), dtype=float)
    scale = float(np.max(np.abs(w))) or 1.0
    tol = 1e-9 * scale
    violations = []

    w0 = float(m(np.array([0.0]))[0])
    if abs(w0) > tol:
        violations.append(("w(0) != 0", abs(w0), 0.0))
    nonpos = np.where(w <= 0)[0]
    if nonpos.size:
        i = int(nonpos[0])
        violations.append(("w not positive", abs(w[i]) + tol, float(grid[i])))
    dec = np.diff(w)
    if dec.size and float(np.min(dec)) < -tol:
        i = int(np.argmin(dec))
        violations.append(("w not non-decreasing", float(-np.min(dec)), float(grid[i])))
    q = w / grid
    inc = np.diff(q)
    if inc.size and float(np.max(inc)) > 1e-9 * float(np.max(np.abs(q))):
        i = int(np.argmax(inc))
        violations.append(("w(t)/t not non-increasing", float(np.max(inc)), float(grid[i])))
    for lam in lambdas:
        if lam < 1:
            raise PreconditionError("scaling check needs lambda >= 1")
        gap = np.asarray(m(lam * grid), dtype=float) - lam * w
        worst = float(np.max(gap))
        if worst > tol * lam:
            i = int(np.argmax(gap))
            violations.append((f"w({lam:g}t) > {lam:g}w(t)", worst, float(grid[i])))

    worst_margin = max((v[1] for v in violations), default=0.0)
    witness = max(violations, key=lambda v: v[1]) if violations else None
    return CheckReport(
        check_name=f"majorant_axioms[{m.label}]",
        empirical_constant=worst_margin,
        worst_witness=list(witness) if witness else None,
        sample_count=int(grid.size),
        passed=not violations,
        notes="; ".join(v[0] for v in violations) if violations else "all axioms hold on grid",
        seed=seed,
    )


def _decade_integral(g, lo: float, hi: float, max_panels: int) -> float:
    """Adaptive Simpson on [lo, hi] after log substitution; g takes s = log t."""
    panels = 32
    prev = None
    while True:
        s = np.linspace(lo, hi, 2 * panels + 1)
        v = g(s)
        h = (hi - lo) / (2 * panels)
        val = float(h / 3.0 * (v[0] + v[-1] + 4.0 * np.sum(v[1:-1:2]) + 2.0 * np.sum(v[2:-2:2])))
        if prev is not None and abs(val - prev) <= 1e-11 * (abs(val) + 1e-300):
            return val
        if panels >= max_panels:
            return val
        prev = val
        panels *= 2


def _scan_decades(g, s_start: float, direction: int, max_panels: int, max_decades: int = 300):
    """Accumulate ∫ g ds decade by decade; detect convergence or divergence.

    Returns (total, diverged).  Convergence is declared when the latest
    decade falls below 1e-14 of the running total, or when the decade
    contributions decay geometrically (stable decade-to-decade ratio q < 1)
    and the geometric tail estimate is negligible.  Harmonic-type decay,
    where the ratio keeps drifting toward 1, is classified divergent.
    """
    ln10 = math.log(10.0)
    total = 0.0
    contribs = []

    def mean_ratio(upto: int) -> float:
        return (abs(contribs[upto]) / (abs(contribs[upto - 30]) + 1e-300)) ** (1.0 / 30.0)

    for k in range(max_decades):
        a = s_start + direction * k * ln10
        b = s_start + direction * (k + 1) * ln10
        lo, hi = (a, b) if direction > 0 else (b, a)
        c = _decade_integral(g, lo, hi, max_panels)
        total += c
        contribs.append(c)
        if abs(c) <= 1e-14 * (abs(total) + 1e-300):
            return total, False
        if k >= 30:
            q = mean_ratio(-1)
            if q < 0.999:
                tail = abs(contribs[-1]) * q / (1.0 - q)
                if tail <= 1e-10 * (abs(total) + 1e-300):
                    return total + math.copysign(tail, c), False
    q_recent = mean_ratio(-1)
    q_old = mean_ratio(len(contribs) // 2)
    if q_recent < 0.9995 and q_recent - q_old <= 1e-4:
        tail = abs(contribs[-1]) * q_recent / (1.0 - q_recent)
        return total + math.copysign(tail, contribs[-1]), False
    return total, True


def check_regular(m: Majorant, delta0: float = 1.0, quad_count: int = 1024, delta_points: int = 12, seed: int | None = None) -> CheckReport:
    """Estimate the best constants in the two regularity conditions.

    For log-spaced deltas below ``delta0`` the two improper integrals are
    evaluated by per-decade adaptive Simpson quadrature in log coordinates
    (relative tolerance ~1e-11 per decade, tails truncated once they drop
    below 1e-14 of the total).  Divergence of either integral is reported as
    a failed condition, not an exception.
    """
    if delta0 <= 0:
        raise PreconditionError("delta0 must be positive")
    deltas = np.logspace(math.log10(delta0) - 6.0, math.log10(delta0), delta_points)
    per_delta = []
    c1_max = 0.0
    c2_max = 0.0
    diverged1 = False
    diverged2 = False
    for d in deltas:
        wd = float(m(np.array([d]))[0])
        s0 = math.log(d)
        # condition (i): int_0^d w(t)/t dt = int_{-inf}^{log d} w(e^s) ds
        g1 = lambda s: np.asarray(m(np.exp(s)), dtype=float)
        i1, div1 = _scan_decades(g1, s0, direction=-1, max_panels=quad_count)
        # condition (ii): d * int_d^inf w(t)/t^2 dt = d * int_{log d}^inf w(e^s) e^{-s} ds
        g2 = lambda s: np.asarray(m(np.exp(s)), dtype=float) * np.exp(-s)
        i2, div2 = _scan_decades(g2, s0, direction=+1, max_panels=quad_count)
        i2 *= d
        c1 = math.inf if div1 else i1 / wd
        c2 = math.inf if div2 else i2 / wd
        diverged1 |= div1
        diverged2 |= div2
        c1_max = max(c1_max, c1)
        c2_max = max(c2_max, c2)
        per_delta.append({"delta": float(d), "C1": c1, "C2": c2})

    passed = not (diverged1 or diverged2)
    worst = max(per_delta, key=lambda rec: max(rec["C1"], rec["C2"]))
    notes = []
    if diverged1:
        notes.append("small-t integral diverges: condition (i) fails")
    if diverged2:
        notes.append("tail integral diverges: condition (ii) fails")
    if passed:
        notes.append(f"best uniform constants C1={c1_max:.6g}, C2={c2_max:.6g}")
    return CheckReport(
        check_name=f"majorant_regular[{m.label}]",
        empirical_constant=max(c1_max, c2_max),
        worst_witness=worst,
        sample_count=int(delta_points),
        passed=passed,
        notes="; ".join(notes),
        seed=seed,
        details={"per_delta": per_delta, "C1": c1_max, "C2": c2_max},
    )
