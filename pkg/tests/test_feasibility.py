from fractions import Fraction

import pytest

from radonpoly.feasibility import phase1_feasibility


def test_feasible_segment_midpoint():
    # is 1.5 a convex combination of {1, 2}?  beta_1 + 2 beta_2 = 1.5, sum = 1
    res = phase1_feasibility([[1, 1], [1, 2]], [1, 1.5])
    assert res.feasible
    assert res.objective <= 1e-12
    b1, b2 = res.x
    assert b1 + b2 == pytest.approx(1.0)
    assert b1 + 2 * b2 == pytest.approx(1.5)


def test_infeasible_outside_hull():
    # 3 is not a convex combination of {1, 2}
    res = phase1_feasibility([[1, 1], [1, 2]], [1, 3])
    assert not res.feasible
    assert res.objective > 0.5


def test_exact_mode_boundary_point():
    # x = 2 lies exactly on the boundary of conv{1, 2}; exact arithmetic says yes
    res = phase1_feasibility(
        [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(2)]],
        [Fraction(1), Fraction(2)],
        exact=True,
    )
    assert res.feasible and res.exact
    assert res.x == (Fraction(0), Fraction(1))


def test_exact_mode_near_miss_is_infeasible():
    eps = Fraction(1, 10**12)
    res = phase1_feasibility(
        [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(2)]],
        [Fraction(1), Fraction(2) + eps],
        exact=True,
    )
    assert not res.feasible
    assert res.objective > 0


def test_negative_rhs_normalization():
    res = phase1_feasibility([[1, -1]], [-0.25])
    assert res.feasible
    x1, x2 = res.x
    assert x1 - x2 == pytest.approx(-0.25)


def test_ragged_input_rejected():
    with pytest.raises(ValueError):
        phase1_feasibility([[1, 2], [1]], [1, 1])
