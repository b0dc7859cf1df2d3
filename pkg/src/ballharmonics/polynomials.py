"""Multi-index polynomials on R^n and exact harmonic-polynomial bases.

Harmonic basis elements are obtained from the exact rational null space of
the coefficient-level Laplacian, scaled to integer coefficients, so the
identity "Laplacian of p = 0" holds exactly in float arithmetic as well.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from .errors import PreconditionError

_CHUNK = 1 << 16


def monomial_exponents(n: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent multi-indices of total degree ``degree`` in n variables."""
    out = []
    for combo in itertools.combinations_with_replacement(range(n), degree):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


class Polynomial:
    """Real polynomial stored as {multi-index exponent tuple: coefficient}."""

    __slots__ = ("n", "terms", "_expo", "_coef")

    def __init__(self, n: int, terms: dict):
        if n < 1:
            raise PreconditionError("polynomial dimension must be >= 1")
        clean = {}
        for e, c in terms.items():
            e = tuple(int(k) for k in e)
            if len(e) != n or any(k < 0 for k in e):
                raise PreconditionError(f"bad exponent tuple {e!r} for dimension {n}")
            c = float(c)
            if c != 0.0:
                clean[e] = clean.get(e, 0.0) + c
        self.n = n
        self.terms = {e: c for e, c in sorted(clean.items()) if c != 0.0}
        if self.terms:
            self._expo = np.array(sorted(self.terms), dtype=np.int64)
            self._coef = np.array([self.terms[tuple(e)] for e in self._expo.tolist()])
        else:
            self._expo = np.zeros((0, n), dtype=np.int64)
            self._coef = np.zeros(0)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self.terms.values())

    def evaluate(self, X) -> np.ndarray:
        """Evaluate at a batch of points, shape (N, n) -> (N,)."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.n:
            raise PreconditionError(f"points have dimension {X.shape[1]}, expected {self.n}")
        N = X.shape[0]
        out = np.zeros(N)
        if not self.terms:
            return out
        max_exp = self._expo.max(axis=0)
        for start in range(0, N, _CHUNK):
            sl = slice(start, min(start + _CHUNK, N))
            Xc = X[sl]
            powers = [None] * self.n
            for i in range(self.n):
                if max_exp[i] > 0:
                    p = np.ones((max_exp[i] + 1, Xc.shape[0]))
                    for k in range(1, max_exp[i] + 1):
                        p[k] = p[k - 1] * Xc[:, i]
                    powers[i] = p
            acc = np.zeros(Xc.shape[0])
            for e, c in zip(self._expo.tolist(), self._coef):
                term = np.full(Xc.shape[0], c)
                for i, k in enumerate(e):
                    if k:
                        term = term * powers[i][k]
                acc += term
            out[sl] = acc
        return out

    def __call__(self, x) -> float:
        return float(self.evaluate(np.asarray(x, dtype=float)[None, :])[0])

    def derivative(self, i: int) -> "Polynomial":
        if not 0 <= i < self.n:
            raise PreconditionError("derivative index out of range")
        terms = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                e2 = list(e)
                e2[i] -= 1
                terms[tuple(e2)] = terms.get(tuple(e2), 0.0) + c * e[i]
        return Polynomial(self.n, terms)

    def gradient_polys(self) -> tuple["Polynomial", ...]:
        return tuple(self.derivative(i) for i in range(self.n))

    def laplacian(self) -> "Polynomial":
        terms = {}
        for e, c in self.terms.items():
            for i, k in enumerate(e):
                if k >= 2:
                    e2 = list(e)
                    e2[i] -= 2
                    terms[tuple(e2)] = terms.get(tuple(e2), 0.0) + c * k * (k - 1)
        return Polynomial(self.n, terms)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.n != other.n:
            raise PreconditionError("dimension mismatch")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0.0) + c
        return Polynomial(self.n, terms)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other * (-1.0)

    def __mul__(self, scalar: float) -> "Polynomial":
        return Polynomial(self.n, {e: c * scalar for e, c in self.terms.items()})

    __rmul__ = __mul__

    def shift_constant(self, delta: float) -> "Polynomial":
        terms = dict(self.terms)
        zero = (0,) * self.n
        terms[zero] = terms.get(zero, 0.0) + delta
        return Polynomial(self.n, terms)

    def __repr__(self) -> str:
        return f"Polynomial(n={self.n}, terms={self.terms})"


def constant_poly(n: int, value: float = 1.0) -> Polynomial:
    return Polynomial(n, {(0,) * n: value})


def coordinate_poly(n: int, i: int) -> Polynomial:
    e = [0] * n
    e[i] = 1
    return Polynomial(n, {tuple(e): 1.0})


def linear_poly(coeffs, constant: float = 0.0) -> Polynomial:
    coeffs = np.asarray(coeffs, dtype=float)
    n = coeffs.size
    terms = {}
    for i, c in enumerate(coeffs):
        if c != 0.0:
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = float(c)
    if constant != 0.0:
        terms[(0,) * n] = float(constant)
    return Polynomial(n, terms)


def _rational_nullspace(rows: list[list[int]], ncols: int) -> list[list[Fraction]]:
    """Null space of an integer matrix over Q by fraction-exact RREF."""
    mat = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        pv = mat[r][c]
        mat[r] = [v / pv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -mat[row_idx][free]
        basis.append(v)
    return basis


def _integerize(vec: list[Fraction]) -> list[int]:
    denom = 1
    for f in vec:
        denom = lcm(denom, f.denominator)
    ints = [int(f * denom) for f in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return ints


@lru_cache(maxsize=None)
def _homogeneous_harmonics(n: int, degree: int) -> tuple[Polynomial, ...]:
    if degree == 0:
        return (constant_poly(n),)
    if degree == 1:
        return tuple(coordinate_poly(n, i) for i in range(n))
    cols = monomial_exponents(n, degree)
    rows_idx = {e: i for i, e in enumerate(monomial_exponents(n, degree - 2))}
    rows = [[0] * len(cols) for _ in rows_idx]
    for j, e in enumerate(cols):
        for i, k in enumerate(e):
            if k >= 2:
                e2 = list(e)
                e2[i] -= 2
                rows[rows_idx[tuple(e2)]][j] += k * (k - 1)
    basis_vecs = _rational_nullspace(rows, len(cols))
    polys = []
    for vec in basis_vecs:
        ints = _integerize(vec)
        polys.append(Polynomial(n, {cols[j]: float(v) for j, v in enumerate(ints) if v}))
    return tuple(polys)


def harmonic_basis(n: int, degree: int) -> list[Polynomial]:
    """Spanning sets of homogeneous harmonic polynomials of degree <= degree.

    Every element annihilates the coefficient-level Laplacian exactly: the
    coefficients are integers from an exact rational null-space computation,
    so the cancellation survives float arithmetic.
    """
    if n < 2:
        raise PreconditionError("harmonic basis needs n >= 2")
    if degree < 0:
        raise PreconditionError("degree must be >= 0")
    out = []
    for d in range(degree + 1):
        out.extend(_homogeneous_harmonics(n, d))
    return out


def harmonic_space_dimension(n: int, degree: int) -> int:
    """Dimension of homogeneous harmonics of exact degree ``degree``."""

    def hom(d: int) -> int:
        if d < 0:
            return 0
        from math import comb

        return comb(d + n - 1, n - 1)

    return hom(degree) - hom(degree - 2)
