import math
from fractions import Fraction

import pytest

from radonpoly.gfun import default_evaluator
from radonpoly.volumes import (
    VkRequest,
    balanced_probe,
    check_gauss_bonnet,
    check_symmetry,
    radon_probability,
    v0_exact,
    vk,
    vk_value,
)
from radonpoly.volumes import _vk_general, _vk_kmax


class TestExactV0:
    def test_values(self):
        assert v0_exact(2, 2) == Fraction(1, 6)
        assert v0_exact(1, 1) == Fraction(1, 2)
        assert v0_exact(3, 6) == Fraction(1, 84)

    def test_symmetric(self):
        assert v0_exact(4, 7) == v0_exact(7, 4)

    def test_invalid(self):
        with pytest.raises(ValueError):
            v0_exact(0, 3)


class TestM1Engine:
    def test_small_cells(self):
        assert vk_value(1, 2, 1) == pytest.approx(0.5, abs=1e-11)
        assert vk_value(1, 2, 2) == pytest.approx(1.0 / 6, abs=1e-11)

    def test_v3_of_1_5_closed_form(self):
        expected = (5.0 / 8 - 15.0 / (4 * math.pi) * math.asin(1.0 / 3)) * (
            0.5 + math.asin(1.0 / 5) / math.pi
        )
        assert expected == pytest.approx(0.1237, rel=5e-4)
        assert vk_value(1, 5, 3) == pytest.approx(expected, abs=1e-9)


class TestM2Engine:
    def test_exact_third(self):
        assert vk_value(2, 4, 2) == pytest.approx(1.0 / 3, abs=1e-9)

    def test_closed_arcsine_cells(self):
        # closed forms for n = 2: v_1 = 1/2 - arcsin(1/3)/pi, v_3 = arcsin(1/3)/pi
        a3 = math.asin(1.0 / 3)
        assert vk_value(2, 2, 1) == pytest.approx(0.5 - a3 / math.pi, abs=1e-10)
        assert vk_value(2, 2, 3) == pytest.approx(a3 / math.pi, abs=1e-10)

    def test_second_side_smaller_than_two(self):
        # the closed form degenerates gracefully at n = 1
        assert vk_value(2, 1, 2) == pytest.approx(1.0 / 6, abs=1e-10)


class TestM3Engine:
    def test_closed_arcsine_cell(self):
        a4 = math.asin(1.0 / 4)
        assert vk_value(3, 3, 2) == pytest.approx(3.0 / 8 - 3 * a4 / (4 * math.pi), abs=1e-10)

    def test_numeric_cells(self):
        assert vk_value(3, 3, 3) == pytest.approx(0.2864, rel=5e-4)
        assert vk_value(3, 3, 5) == pytest.approx(0.02653, rel=5e-4)


class TestKmaxEngine:
    def test_numeric_cell(self):
        assert vk_value(4, 4, 7, method="kmax") == pytest.approx(0.006586, rel=5e-4)

    def test_agrees_with_general(self):
        ev = default_evaluator
        for m, n in [(2, 2), (3, 4), (4, 4), (5, 6)]:
            k = m + n - 1
            assert _vk_kmax(m, n, 1e-10, ev) == pytest.approx(
                _vk_general(m, n, k, 1e-10, ev), abs=1e-9
            )

    def test_alternating_binomial_identity(self):
        # sum_i (-1)^i C(m,i) g_{n+i}(-1/(m+n)) is symmetric in (m, n)
        ev = default_evaluator
        for m, n in [(2, 5), (3, 4), (4, 6)]:
            lhs = math.fsum(
                (-1) ** i * math.comb(m, i) * ev.g(n + i, -1.0 / (m + n), 1e-12)
                for i in range(m)
            )
            rhs = math.fsum(
                (-1) ** i * math.comb(n, i) * ev.g(m + i, -1.0 / (m + n), 1e-12)
                for i in range(n)
            )
            assert lhs == pytest.approx(rhs, abs=1e-11)


class TestGeneralEngine:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_matches_closed_engines(self, m):
        ev = default_evaluator
        for n in range(m, 8):
            for k in range(1, m + n):
                closed = vk_value(m, n, k, method=f"m{m}")
                general = _vk_general(m, n, k, 1e-9, ev)
                assert closed == pytest.approx(general, abs=1e-7), (m, n, k)

    def test_zero_above_dimension_in_recursion(self):
        # recursion internally treats v_k(t, n') = 0 for k >= t + n'
        assert _vk_general(2, 2, 3, 1e-9, default_evaluator) == pytest.approx(
            0.1082, rel=5e-4
        )


class TestRequestValidation:
    def test_method_shape(self):
        with pytest.raises(ValueError, match="min"):
            VkRequest(2, 4, 1, method="m1")
        with pytest.raises(ValueError, match="kmax"):
            VkRequest(2, 4, 2, method="kmax")

    def test_k_range(self):
        with pytest.raises(ValueError):
            VkRequest(2, 2, 4)
        with pytest.raises(ValueError):
            VkRequest(2, 2, -1)

    def test_k_zero_routes_exact(self):
        assert vk(VkRequest(3, 5, 0, method="general")) == float(v0_exact(3, 5))

    def test_symmetry_normalization_in_auto(self):
        assert vk_value(5, 2, 3) == vk_value(2, 5, 3)


class TestRadonProbability:
    def test_d1_law(self):
        for m, n in [(2, 2), (1, 5), (3, 4), (5, 6), (2, 10)]:
            expected = 1.0 - 2.0 / math.comb(m + n, m)
            assert radon_probability(1, m, n) == pytest.approx(expected, abs=1e-9)

    def test_d2_unbalanced(self):
        assert radon_probability(2, 1, 3) == pytest.approx(0.08774, rel=5e-4)

    def test_trivial_zero(self):
        assert radon_probability(5, 2, 3) == 0.0

    def test_row_within_unit_interval(self):
        for d in range(0, 4):
            for m in range(1, 5):
                for n in range(m, 5):
                    p = radon_probability(d, m, n)
                    assert -1e-12 <= p <= 1.0 + 1e-12


class TestIdentities:
    def test_gauss_bonnet_trivial(self):
        rep = check_gauss_bonnet(1, 1)
        assert rep.even_sum == pytest.approx(0.5, abs=1e-15)
        assert rep.odd_sum == pytest.approx(0.5, abs=1e-15)

    def test_gauss_bonnet_spec_cells(self):
        assert max(check_gauss_bonnet(2, 3).residuals) < 1e-8
        assert max(check_gauss_bonnet(3, 6).residuals) < 1e-7

    def test_symmetry_reports(self):
        assert check_symmetry(1, 2).ok
        assert check_symmetry(2, 3).ok
        assert check_symmetry(4, 5).ok
        assert check_symmetry(3, 3).max_diff == 0.0

    def test_nonnegative_volumes(self):
        for m in range(1, 5):
            for n in range(m, 6):
                for k in range(m + n):
                    assert vk_value(m, n, k) >= -1e-9


def test_balanced_probe_reports_monotone_case():
    probe = balanced_probe(6, 2)
    assert len(probe.probabilities) == 3
    assert probe.monotone  # observed ordering on this grid point; not asserted as a theorem
    d = probe.to_dict()
    assert set(d) == {"N", "d", "p_by_min_side", "monotone"}
