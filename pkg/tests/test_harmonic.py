import json
import warnings

import numpy as np
import pytest

from ballharmonics.errors import DomainError, NearBoundaryWarning, PreconditionError
from ballharmonics.fd import fd_gradient, fd_laplacian
from ballharmonics.geometry import ball_rule, spawn_rng, sphere_rule
from ballharmonics.harmonic import (
    HarmonicMap,
    HarmonicScalar,
    complex_power_map,
    gradient,
    hardy_norm,
    harmonic_polynomial_basis,
    identity_map,
    mean_value_gap,
    normalize_harmonic_map,
    poisson_extend,
    poisson_kernel,
    poisson_kernel_gradient,
    random_harmonic_map,
    random_harmonic_scalar,
    scaled_axes_map,
    scaled_poisson_kernel,
    sup_norm_estimate,
)
from ballharmonics.polynomials import Polynomial, coordinate_poly, linear_poly


class TestPoissonKernel:
    def test_kernel_at_center(self):
        assert poisson_kernel([0.0, 0.0, 0.0], [0.0, 0.0, 1.0]) == pytest.approx(1.0)

    def test_direct_evaluation_n3(self):
        # (1 - 1/4) / (1/2)^3 = 6
        assert poisson_kernel([0.5, 0.0, 0.0], [1.0, 0.0, 0.0]) == pytest.approx(6.0)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            poisson_kernel([1.0, 0.0], [1.0, 0.0])

    def test_off_sphere_zeta_rejected(self):
        with pytest.raises(PreconditionError):
            poisson_kernel([0.2, 0.0], [0.5, 0.0])

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_normalization(self, n):
        rule = sphere_rule(n, 1 << 14, seed=n)
        rng = spawn_rng(10, "kernel_norm", n)
        for _ in range(5):
            x = rng.standard_normal(n)
            x *= 0.9 * rng.random() ** (1.0 / n) / np.linalg.norm(x)
            vals = (1.0 - np.sum(x * x)) / np.linalg.norm(x[None, :] - rule.nodes, axis=1) ** n
            est = rule.integrate(vals)
            tol = max(3.0 * rule.standard_error(vals), 1e-10)
            assert abs(est - 1.0) < tol


class TestScaledKernelGradient:
    def test_matches_finite_differences(self):
        rng = spawn_rng(3, "kernel_grad")
        for n in (2, 3):
            center = 0.2 * rng.standard_normal(n)
            r = 0.5
            zeta = rng.standard_normal(n)
            zeta /= np.linalg.norm(zeta)
            y = center + 0.2 * r * rng.standard_normal(n) / np.sqrt(n)
            got = poisson_kernel_gradient(y, center, r, zeta)

            def k(P):
                return np.array([scaled_poisson_kernel(row, center, r, zeta) for row in np.atleast_2d(P)])

            want = fd_gradient(k, y, h=1e-5)
            assert np.max(np.abs(got - want)) < 1e-8

    def test_hand_expanded_planar_case(self):
        # unit disk, y = (0.3, 0), zeta = (0, 1):
        #   d1 = (-2*0.3*1.09 - 0.91*2*0.3) / 1.09^2,  d2 = 0.91*2 / 1.09^2
        got = poisson_kernel_gradient([0.3, 0.0], [0.0, 0.0], 1.0, [0.0, 1.0])
        want = np.array([-1.2, 1.82]) / 1.09**2
        assert np.allclose(got, want, atol=1e-14)

    def test_component_bound_84_over_r(self):
        # planar kernel derivative bound on the half-radius ball
        rng = spawn_rng(4, "kernel_bound")
        r = 0.37
        center = np.array([0.1, -0.2])
        worst = 0.0
        for _ in range(200):
            u = rng.standard_normal(2)
            u *= 0.499 * rng.random() / np.linalg.norm(u)
            y = center + r * u
            theta = rng.uniform(0.0, 2 * np.pi)
            g = poisson_kernel_gradient(y, center, r, [np.cos(theta), np.sin(theta)])
            worst = max(worst, float(np.max(np.abs(g))))
        assert worst <= 84.0 / r

    def test_outside_ball_rejected(self):
        with pytest.raises(DomainError):
            poisson_kernel_gradient([0.9, 0.0], [0.0, 0.0], 0.5, [1.0, 0.0])


class TestPoissonExtend:
    def test_constant_boundary(self):
        rule = sphere_rule(3, 4096, seed=1)
        got = poisson_extend(lambda nodes: np.full(nodes.shape[0], 2.5), [0.3, 0.1, -0.2], rule)
        vals = 2.5 * (1.0 - 0.14) / np.linalg.norm(np.array([0.3, 0.1, -0.2]) - rule.nodes, axis=1) ** 3
        assert got == pytest.approx(rule.integrate(vals))
        assert abs(got - 2.5) < 3 * rule.standard_error(vals) + 1e-10

    def test_coordinate_boundary_reproduces_x1(self):
        rule = sphere_rule(2, 2048)
        for x in ([0.4, 0.1], [0.0, 0.0], [-0.3, 0.5]):
            got = poisson_extend(lambda nodes: nodes[:, 0], x, rule)
            assert got == pytest.approx(x[0], abs=1e-12)

    def test_product_boundary_n3(self):
        rule = sphere_rule(3, 1 << 15, seed=2)
        x = np.array([0.3, 0.4, -0.1])
        got = poisson_extend(lambda nodes: nodes[:, 0] * nodes[:, 1], x, rule)
        assert abs(got - x[0] * x[1]) < 0.02

    def test_near_boundary_warning(self):
        rule = sphere_rule(2, 128)
        with pytest.warns(NearBoundaryWarning):
            poisson_extend(lambda nodes: nodes[:, 0], [0.9995, 0.0], rule)

    def test_at_or_outside_sphere_rejected(self):
        rule = sphere_rule(2, 128)
        with pytest.raises(DomainError):
            poisson_extend(lambda nodes: nodes[:, 0], [1.0, 0.0], rule)


class TestHarmonicScalar:
    def test_polynomial_must_be_harmonic(self):
        with pytest.raises(PreconditionError):
            HarmonicScalar.from_polynomial(Polynomial(2, {(2, 0): 1.0}))

    def test_extension_center_value_is_boundary_mean(self):
        rule = sphere_rule(3, 2048, seed=3)
        g = lambda nodes: nodes[:, 0] ** 2 + 0.5
        f = HarmonicScalar.from_boundary(g, rule)
        assert f(np.zeros(3)) == pytest.approx(rule.integrate(g(rule.nodes)), abs=1e-14)

    def test_basis_elements_are_harmonic(self):
        rng = spawn_rng(5, "basis_fd")
        for f in harmonic_polynomial_basis(3, 3):
            x = 0.4 * rng.standard_normal(3) / np.sqrt(3)
            assert abs(fd_laplacian(f.evaluate, x)) < 1e-6

    def test_basis_count_n3_degree2(self):
        basis = harmonic_polynomial_basis(3, 2)
        assert sum(1 for f in basis if f.poly.degree == 2) == 5


class TestGradient:
    def test_linear(self):
        a = np.array([2.0, -1.0, 0.5])
        f = HarmonicScalar.from_polynomial(linear_poly(a))
        assert np.allclose(gradient(f, [0.1, 0.2, 0.3]), a)

    def test_saddle(self):
        f = HarmonicScalar.from_polynomial(Polynomial(2, {(2, 0): 1.0, (0, 2): -1.0}))
        assert np.allclose(gradient(f, [0.2, 0.3]), [0.4, -0.6])

    def test_extension_gradient_vs_fd(self):
        rule = sphere_rule(2, 1024)
        f = HarmonicScalar.from_boundary(lambda nodes: nodes[:, 0], rule)
        x = np.array([0.3, 0.0])
        assert np.allclose(f.gradient(x), [1.0, 0.0], atol=1e-10)
        want = fd_gradient(f.evaluate, x, h=1e-5)
        assert np.max(np.abs(f.gradient(x) - want)) < 1e-6

    def test_analytic_vs_fd_on_random_functions(self):
        rng = spawn_rng(6, "grad_fd")
        for n in (2, 3):
            f = random_harmonic_scalar(n, 4, rng)
            for _ in range(20):
                x = rng.standard_normal(n)
                x *= 0.8 * rng.random() ** (1.0 / n) / np.linalg.norm(x)
                got = f.gradient(x)
                want = fd_gradient(f.evaluate, x, h=1e-5)
                denom = max(1.0, float(np.linalg.norm(want)))
                assert np.linalg.norm(got - want) / denom < 1e-6


class TestJacobian:
    def test_identity(self):
        F = identity_map(3)
        assert np.allclose(F.jacobian([0.1, 0.2, 0.3]), np.eye(3))
        assert F.det_jacobian([0.1, 0.2, 0.3]) == pytest.approx(1.0)

    def test_complex_square_jacobian(self):
        # det J = 4 (x1^2 + x2^2); equals 1 at (0.5, 0)
        F = complex_power_map(2)
        assert F.det_jacobian([0.5, 0.0]) == pytest.approx(1.0)
        assert F.det_jacobian([0.3, 0.4]) == pytest.approx(4 * 0.25)

    def test_scaled_axes_unit_jacobian_everywhere(self):
        F = scaled_axes_map(2, 4.0)
        rng = spawn_rng(7, "uk_jac")
        for _ in range(10):
            x = rng.uniform(-0.7, 0.7, size=2)
            assert F.det_jacobian(x) == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.norm(F.value(np.zeros(2))) == 0.0


class TestHardyNorm:
    def test_constant_map(self):
        F = HarmonicMap.from_polynomials([Polynomial(2, {(0, 0): 3.0}), Polynomial(2, {(0, 0): -4.0})])
        assert hardy_norm(F, p=2) == pytest.approx(5.0, rel=1e-12)

    def test_identity_map_sup_is_largest_radius(self):
        grid = np.array([0.1, 0.5, 0.9])
        assert hardy_norm(identity_map(3), p=1.5, r_grid=grid) == pytest.approx(0.9, rel=1e-6)

    def test_square_map_radial_means(self):
        # |F(r zeta)| = r^2 exactly on the circle
        F = complex_power_map(2)
        grid = np.array([0.3, 0.7, 0.99])
        assert hardy_norm(F, p=3, r_grid=grid) == pytest.approx(0.99**2, rel=1e-10)

    def test_p_below_one_rejected(self):
        with pytest.raises(PreconditionError):
            hardy_norm(identity_map(2), p=0.5)


class TestMeanValueAndMaxPrinciple:
    def test_mean_value_trapezoid_n2(self):
        rng = spawn_rng(8, "mv2")
        rule = sphere_rule(2, 4096)
        for _ in range(10):
            f = random_harmonic_scalar(2, 4, rng)
            a = rng.uniform(-0.4, 0.4, size=2)
            r = rng.uniform(0.05, 1.0 - float(np.linalg.norm(a)) - 1e-6)
            gap, _ = mean_value_gap(f, a, r, rule)
            assert gap < 1e-10

    def test_mean_value_mc_n3(self):
        rng = spawn_rng(9, "mv3")
        rule = sphere_rule(3, 1 << 13, seed=13)
        for _ in range(10):
            f = random_harmonic_scalar(3, 4, rng)
            a = rng.uniform(-0.4, 0.4, size=3)
            r = rng.uniform(0.05, 1.0 - float(np.linalg.norm(a)) - 1e-6)
            gap, se = mean_value_gap(f, a, r, rule)
            assert gap < max(3 * se, 1e-12)

    def test_max_principle_sampled(self):
        rng = spawn_rng(10, "maxp")
        interior = ball_rule(2, 4096, seed=14)
        boundary = sphere_rule(2, 4096)
        for _ in range(5):
            f = random_harmonic_scalar(2, 4, rng)
            inner = np.max(np.abs(f.evaluate(interior.nodes)))
            outer = np.max(np.abs(f.evaluate(boundary.nodes)))
            assert inner <= outer + 1e-9


class TestMapsAndSerialization:
    def test_json_roundtrip(self):
        rng = spawn_rng(11, "json")
        F = random_harmonic_map(3, 3, rng)
        doc = json.loads(F.to_json())
        G = HarmonicMap.from_json_dict(doc)
        X = rng.uniform(-0.5, 0.5, size=(20, 3))
        assert np.array_equal(F.evaluate(X), G.evaluate(X))
        assert doc["n"] == 3 and len(doc["components"]) == 3

    def test_normalization(self):
        rng = spawn_rng(12, "norm")
        F = random_harmonic_map(2, 4, rng, normalize=True)
        assert np.linalg.norm(F.value(np.zeros(2))) < 1e-12
        assert abs(F.det_jacobian(np.zeros(2)) - 1.0) < 1e-10

    def test_sup_norm_estimate_identity(self):
        M = sup_norm_estimate(identity_map(2), sample_count=20_000, seed=3)
        assert 0.999 <= M <= 1.001

    def test_component_dimension_mismatch_rejected(self):
        with pytest.raises(PreconditionError):
            HarmonicMap([HarmonicScalar.from_polynomial(coordinate_poly(2, 0)), HarmonicScalar.from_polynomial(coordinate_poly(3, 0))])
