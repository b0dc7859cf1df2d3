import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballharmonics.errors import EvaluationError, PreconditionError
from ballharmonics.majorants import (
    Majorant,
    check_majorant,
    check_regular,
    get_majorant,
    inverse_log_majorant,
    linear_majorant,
    log_majorant,
    power_majorant,
)


class TestCheckMajorant:
    def test_linear_all_margins_zero(self):
        rep = check_majorant(linear_majorant())
        assert rep.passed
        assert rep.empirical_constant == 0.0

    def test_sqrt_hand_case(self):
        # w(4) = 2 <= 4 * w(1) = 4
        m = power_majorant(0.5)
        assert float(m(np.array([4.0]))[0]) == pytest.approx(2.0)
        assert check_majorant(m, grid=np.array([0.25, 1.0, 4.0])).passed

    def test_square_fails(self):
        m = Majorant(fn=lambda t: np.asarray(t, dtype=float) ** 2, label="square")
        rep = check_majorant(m, grid=np.array([0.5, 1.0, 2.0]))
        assert not rep.passed
        assert "non-increasing" in rep.notes or "w(" in rep.notes

    @settings(max_examples=25, deadline=None)
    @given(alpha=st.floats(min_value=0.05, max_value=1.0))
    def test_power_family_passes_for_all_alpha(self, alpha):
        assert check_majorant(power_majorant(alpha)).passed

    @given(c=st.floats(min_value=1e-3, max_value=1e3))
    @settings(max_examples=20, deadline=None)
    def test_scaling_preserves_verdict(self, c):
        base = power_majorant(0.5)
        scaled = Majorant(fn=lambda t: c * np.power(t, 0.5), label="scaled")
        assert check_majorant(scaled).passed == check_majorant(base).passed
        bad = Majorant(fn=lambda t: c * np.asarray(t, dtype=float) ** 2, label="scaled-square")
        assert not check_majorant(bad).passed

    def test_non_finite_evaluation_raises(self):
        m = Majorant(fn=lambda t: np.where(np.asarray(t) > 1.0, np.nan, np.asarray(t, dtype=float)), label="nanny")
        with pytest.raises(EvaluationError):
            check_majorant(m)

    def test_bad_grid_rejected(self):
        with pytest.raises(PreconditionError):
            check_majorant(linear_majorant(), grid=np.array([1.0, 0.5]))


class TestCheckRegular:
    def test_power_half_closed_form(self):
        # int_0^d t^(a-1) dt = d^a / a and d int_d^inf t^(a-2) dt = d^a / (1-a)
        rep = check_regular(power_majorant(0.5))
        assert rep.passed
        assert rep.details["C1"] == pytest.approx(2.0, rel=1e-6)
        assert rep.details["C2"] == pytest.approx(2.0, rel=1e-6)

    def test_power_alpha_constants(self):
        for alpha in (0.3, 0.7):
            rep = check_regular(power_majorant(alpha))
            assert rep.passed
            assert rep.details["C1"] == pytest.approx(1.0 / alpha, rel=1e-6)
            assert rep.details["C2"] == pytest.approx(1.0 / (1.0 - alpha), rel=1e-6)

    def test_linear_first_condition_holds_second_diverges(self):
        rep = check_regular(linear_majorant())
        assert not rep.passed
        assert "condition (ii)" in rep.notes
        finite_c1 = [r["C1"] for r in rep.details["per_delta"]]
        assert all(math.isfinite(c) for c in finite_c1)
        assert max(finite_c1) == pytest.approx(1.0, rel=1e-6)

    def test_inverse_log_first_condition_diverges(self):
        rep = check_regular(inverse_log_majorant())
        assert not rep.passed
        assert "condition (i)" in rep.notes

    def test_log_majorant_fails_tail(self):
        rep = check_regular(log_majorant())
        assert not rep.passed
        assert "condition (ii)" in rep.notes

    def test_delta0_must_be_positive(self):
        with pytest.raises(PreconditionError):
            check_regular(power_majorant(0.5), delta0=0.0)

    def test_regular_tagged_builtins_pass(self):
        for name in ("power:0.3", "power:0.5", "power:0.9"):
            m = get_majorant(name)
            if m.expected_regular:
                assert check_regular(m).passed


class TestRegistry:
    def test_names_resolve(self):
        for name in ("power:0.5", "linear", "log", "invlog"):
            m = get_majorant(name)
            assert check_majorant(m).passed

    def test_unknown_name(self):
        with pytest.raises(PreconditionError):
            get_majorant("cubic")

    def test_power_alpha_out_of_range(self):
        with pytest.raises(PreconditionError):
            get_majorant("power:1.5")
