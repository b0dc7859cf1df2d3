import numpy as np
import pytest

from ballharmonics.fd import fd_laplacian
from ballharmonics.geometry import spawn_rng
from ballharmonics.polynomials import (
    Polynomial,
    constant_poly,
    coordinate_poly,
    harmonic_basis,
    harmonic_space_dimension,
    linear_poly,
    monomial_exponents,
)


class TestPolynomial:
    def test_evaluate_and_call(self):
        p = Polynomial(2, {(2, 0): 1.0, (0, 2): -1.0})
        assert p([0.5, 0.2]) == pytest.approx(0.21)
        X = np.array([[1.0, 0.0], [0.3, 0.4]])
        assert np.allclose(p.evaluate(X), [1.0, 0.09 - 0.16])

    def test_derivative(self):
        p = Polynomial(2, {(2, 0): 1.0, (0, 2): -1.0})
        assert p.derivative(0).terms == {(1, 0): 2.0}
        assert p.derivative(1).terms == {(0, 1): -2.0}

    def test_laplacian_of_square_norm(self):
        n = 3
        p = Polynomial(n, {tuple(2 * int(i == j) for j in range(n)): 1.0 for i in range(n)})
        assert p.laplacian().terms == {(0, 0, 0): 6.0}

    def test_algebra(self):
        p = coordinate_poly(2, 0) * 3.0 + constant_poly(2, 1.0)
        assert p([2.0, 5.0]) == pytest.approx(7.0)
        q = p - p
        assert q.is_zero()

    def test_linear_poly(self):
        p = linear_poly([1.0, -2.0], constant=0.5)
        assert p([3.0, 1.0]) == pytest.approx(1.5)


class TestMonomials:
    def test_counts(self):
        from math import comb

        for n, d in [(2, 3), (3, 4), (4, 2)]:
            assert len(monomial_exponents(n, d)) == comb(n + d - 1, n - 1)


class TestHarmonicBasis:
    def test_classical_planar_basis(self):
        basis = harmonic_basis(2, 2)
        assert len(basis) == 5  # 1, x, y, and two degree-2 elements
        degree2 = [p for p in basis if p.degree == 2]
        assert len(degree2) == 2
        # the degree-2 space is spanned by x^2 - y^2 and xy
        X = spawn_rng(0, "span").uniform(-1, 1, size=(6, 2))
        target = X[:, 0] ** 2 - X[:, 1] ** 2
        A = np.column_stack([p.evaluate(X) for p in degree2])
        coeffs, res, *_ = np.linalg.lstsq(A, target, rcond=None)
        assert np.allclose(A @ coeffs, target, atol=1e-10)

    def test_dimensions_match_spherical_harmonics(self):
        # homogeneous harmonics of degree l in R^3 have dimension 2l + 1
        for ell in range(6):
            assert harmonic_space_dimension(3, ell) == 2 * ell + 1
        basis = harmonic_basis(3, 2)
        assert sum(1 for p in basis if p.degree == 2) == 5

    def test_coefficient_level_harmonicity_exact(self):
        for n in (2, 3, 4):
            for p in harmonic_basis(n, 5 if n < 4 else 4):
                assert p.laplacian().terms == {}

    def test_fd_laplacian_oracle(self):
        rng = spawn_rng(1, "fd_laplacian")
        for n in (2, 3):
            basis = harmonic_basis(n, 4)
            pts = rng.uniform(-0.5, 0.5, size=(10, n))
            for p in basis:
                for x in pts:
                    assert abs(fd_laplacian(p.evaluate, x)) < 1e-6

    def test_basis_sizes(self):
        from math import comb

        for n in (2, 3, 4):
            for d in (0, 1, 2, 3, 4):
                expected = comb(d + n - 1, n - 1) - (comb(d - 2 + n - 1, n - 1) if d >= 2 else 0)
                got = sum(1 for p in harmonic_basis(n, d) if p.degree == d)
                assert got == expected
