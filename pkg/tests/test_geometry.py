import numpy as np
import pytest

from ballharmonics.errors import DomainError, PreconditionError
from ballharmonics.geometry import (
    Ball,
    QuadratureRule,
    ball_rule,
    distance_to_boundary,
    spawn_rng,
    sphere_rule,
)


class TestDistanceToBoundary:
    def test_center_of_unit_ball(self):
        assert distance_to_boundary(np.zeros(3), Ball.unit(3)) == 1.0

    def test_radial_point(self):
        assert distance_to_boundary([0.3, 0.0, 0.0], Ball.unit(3)) == pytest.approx(0.7)

    def test_hand_arithmetic(self):
        # 1 - sqrt(0.09 + 0.16) = 0.5
        assert distance_to_boundary([0.3, 0.4], Ball.unit(2)) == pytest.approx(0.5, abs=1e-15)

    def test_outside_raises(self):
        with pytest.raises(DomainError):
            distance_to_boundary([1.5, 0.0], Ball.unit(2))

    def test_boundary_point_is_zero(self):
        assert distance_to_boundary([1.0, 0.0], Ball.unit(2)) == 0.0


class TestSphereRule:
    def test_equispaced_angles_n2(self):
        rule = sphere_rule(2, 4)
        want = np.array([[1, 0], [0, 1], [-1, 0], [0, -1]], dtype=float)
        assert np.allclose(rule.nodes, want, atol=1e-15)

    def test_weights_sum_to_one(self):
        for n, count in [(2, 128), (3, 1000), (5, 333)]:
            rule = sphere_rule(n, count, seed=1)
            assert abs(rule.weights.sum() - 1.0) < 1e-12
            assert rule.integrate(np.ones(count)) == pytest.approx(1.0, abs=1e-12)

    def test_nodes_on_sphere(self):
        rule = sphere_rule(4, 5000, seed=2)
        assert np.max(np.abs(np.linalg.norm(rule.nodes, axis=1) - 1.0)) < 1e-12

    def test_second_moment_symmetry_n3(self):
        # sum_i int zeta_i^2 dsigma = 1, so each coordinate contributes 1/3
        rule = sphere_rule(3, 1 << 14, seed=3)
        vals = rule.nodes[:, 0] ** 2
        est = rule.integrate(vals)
        se = rule.standard_error(vals)
        assert abs(est - 1.0 / 3.0) < 3 * se

    def test_first_moments_centered(self):
        rule = sphere_rule(3, 10_000, seed=4)
        for i in range(3):
            vals = rule.nodes[:, i]
            assert abs(rule.integrate(vals)) < 3 * rule.standard_error(vals)

    def test_trapezoid_cos_squared_exact(self):
        for count in (4, 16, 101):
            rule = sphere_rule(2, count)
            est = rule.integrate(rule.nodes[:, 0] ** 2)
            assert abs(est - 0.5) < 1e-12

    def test_determinism_bit_identical(self):
        a = sphere_rule(3, 4096, seed=99)
        b = sphere_rule(3, 4096, seed=99)
        assert a.nodes.tobytes() == b.nodes.tobytes()
        assert a.weights.tobytes() == b.weights.tobytes()
        c = sphere_rule(3, 4096, seed=100)
        assert a.nodes.tobytes() != c.nodes.tobytes()

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            sphere_rule(1, 10)
        with pytest.raises(PreconditionError):
            sphere_rule(3, 0)


class TestBallRule:
    def test_average_of_one(self):
        rule = ball_rule(3, 500, seed=5)
        assert rule.integrate(np.ones(500)) == pytest.approx(1.0, abs=1e-12)

    def test_mean_square_radius_n2(self):
        # int_0^1 r^2 * 2r dr = 1/2
        rule = ball_rule(2, 1 << 16, seed=6)
        vals = np.sum(rule.nodes**2, axis=1)
        est = rule.integrate(vals)
        assert abs(est - 0.5) < 3 * rule.standard_error(vals)

    def test_odd_moment_vanishes(self):
        rule = ball_rule(3, 1 << 16, seed=7)
        vals = rule.nodes[:, 0]
        assert abs(rule.integrate(vals)) < 3 * rule.standard_error(vals)

    def test_nodes_strictly_inside(self):
        rule = ball_rule(2, 10_000, seed=8)
        assert np.max(np.linalg.norm(rule.nodes, axis=1)) < 1.0

    def test_radius_scaling(self):
        rule = ball_rule(3, 1000, seed=9, radius=0.5)
        assert np.max(np.linalg.norm(rule.nodes, axis=1)) < 0.5

    def test_determinism(self):
        a = ball_rule(3, 2048, seed=11)
        b = ball_rule(3, 2048, seed=11)
        assert a.nodes.tobytes() == b.nodes.tobytes()

    def test_radius_above_one_rejected(self):
        with pytest.raises(PreconditionError):
            ball_rule(2, 10, radius=1.5)


class TestQuadratureRuleInvariants:
    def test_bad_weight_sum_rejected(self):
        nodes = sphere_rule(2, 8).nodes
        with pytest.raises(PreconditionError):
            QuadratureRule(kind="sphere_trapezoid_2d", nodes=nodes, weights=np.full(8, 0.25), seed=0, sample_count=8)

    def test_negative_weights_rejected(self):
        nodes = sphere_rule(2, 2).nodes
        with pytest.raises(PreconditionError):
            QuadratureRule(kind="sphere_trapezoid_2d", nodes=nodes, weights=np.array([1.5, -0.5]), seed=0, sample_count=2)

    def test_off_sphere_nodes_rejected(self):
        with pytest.raises(PreconditionError):
            QuadratureRule(
                kind="sphere_monte_carlo",
                nodes=np.array([[0.5, 0.0], [0.0, 1.0]]),
                weights=np.full(2, 0.5),
                seed=0,
                sample_count=2,
            )


def test_spawn_rng_streams_independent_and_stable():
    a1 = spawn_rng(7, "alpha").standard_normal(4)
    a2 = spawn_rng(7, "alpha").standard_normal(4)
    b = spawn_rng(7, "beta").standard_normal(4)
    assert np.array_equal(a1, a2)
    assert not np.array_equal(a1, b)
