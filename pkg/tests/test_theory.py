import math

import numpy as np
import pytest

from tightnorm.theory import (
    Branch,
    Instance,
    OptimizationMode,
    branch_spread,
    branch_spread_log,
    branch_two_point,
    check_inequality,
    critical_dimension,
    d_star_shannon,
    extremal_vector,
    m_theory,
    mode_for,
    renyi_min,
    shannon_min,
)


def test_branch_two_point_closed_form():
    assert branch_two_point(2.0) == 0.5
    assert branch_two_point(0.5) == math.sqrt(2.0)
    assert branch_two_point(1.0) == 1.0


def test_branch_spread_closed_form():
    d, a = 10, 1.5
    expected = d ** (-a) * ((d - 1) ** a + (d - 1) ** (1 - a))
    assert branch_spread(d, a) == pytest.approx(expected, rel=1e-15)
    assert branch_spread_log(d, a) == pytest.approx(math.log(expected), rel=1e-15)


def test_branches_agree_at_d2():
    # the spread value continued to d = 2 collapses onto the two-point value
    for a in (0.7, 1.3, 2.0, 5.0):
        assert branch_spread_log(2.0, a) == pytest.approx(
            math.log(branch_two_point(a)), abs=1e-14
        )


def test_critical_dimension_values():
    assert critical_dimension(2.0) == pytest.approx(3.0, abs=1e-9)
    assert critical_dimension(1.000001) == pytest.approx(6.47, abs=5e-3)
    assert critical_dimension(0.999999) == pytest.approx(6.47, abs=5e-3)
    assert math.isinf(critical_dimension(0.5))
    assert math.isinf(critical_dimension(0.3))


def test_critical_dimension_is_a_root():
    for a in (0.55, 0.8, 1.2, 2.0, 4.0):
        dc = critical_dimension(a)
        gap = branch_spread_log(dc, a) - math.log(branch_two_point(a))
        assert abs(gap) < 1e-9


def test_critical_dimension_decreasing_past_one():
    alphas = np.linspace(1.01, 8.0, 40)
    vals = [critical_dimension(float(a)) for a in alphas]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_d_star_shannon_bracket():
    ds = d_star_shannon()
    assert 6.46 < ds < 6.48
    assert math.log(ds / 2.0) == pytest.approx((ds - 2.0) / ds * math.log(ds - 1.0), abs=1e-12)


def test_m_theory_branch_selection():
    assert m_theory(3, 2.0).branch is Branch.TIE
    assert m_theory(4, 2.0).branch is Branch.SPREAD
    assert m_theory(6, 1.01).branch is Branch.TWO_POINT  # d_crit(1.01) ~ 6.46
    assert m_theory(7, 1.01).branch is Branch.SPREAD
    assert m_theory(6, 1.1).branch is Branch.SPREAD  # d_crit(1.1) ~ 5.5
    assert m_theory(200, 0.55).branch is Branch.TWO_POINT  # d_crit(0.55) ~ 2e4
    assert m_theory(50, 0.3).branch is Branch.TWO_POINT


def test_m_theory_picks_the_extremal_branch():
    # max of the two branch values for alpha > 1, min for alpha < 1
    for d in (3, 5, 7, 12, 100):
        for a in (0.55, 0.7, 0.95, 1.01, 1.5, 2.0, 4.0):
            tv = m_theory(d, a)
            two, spread = branch_two_point(a), branch_spread(d, a)
            want = max(two, spread) if a > 1 else min(two, spread)
            assert tv.value == pytest.approx(want, rel=1e-12)


def test_renyi_min_two_point_is_log2():
    assert renyi_min(3, 1.5) == math.log(2.0)  # d_crit(1.5) ~ 3.7, two-point
    assert renyi_min(4, 0.7) == math.log(2.0)


def test_renyi_min_spread_branch():
    d, a = 5, 1.5
    expected = branch_spread_log(d, a) / (1.0 - a)
    assert renyi_min(d, a) == pytest.approx(expected, rel=1e-14)


def test_shannon_min_piecewise():
    assert shannon_min(3) == math.log(2.0)
    assert shannon_min(6) == math.log(2.0)
    assert shannon_min(7) == pytest.approx(math.log(7) - (5 / 7) * math.log(6), rel=1e-14)


def test_extremal_vector_feasible_and_attains():
    for d in (3, 7, 20):
        for a in (0.7, 1.5, 2.0):
            x = extremal_vector(d, a)
            assert x.size == d
            assert abs(x.sum()) < 1e-12
            assert np.linalg.norm(x) == pytest.approx(1.0, abs=1e-12)
            val = float(np.sum(np.abs(x) ** (2 * a)))
            assert val == pytest.approx(m_theory(d, a).value, rel=1e-12)


def test_check_inequality_on_extremizers():
    for d in (3, 8):
        for a in (0.7, 1.5, 2.0):
            ratio, ok = check_inequality(extremal_vector(d, a), a)
            assert ok
            assert ratio == pytest.approx(m_theory(d, a).value ** (1 / (2 * a)), rel=1e-12)


def test_check_inequality_rejects_bad_input():
    with pytest.raises(ValueError):
        check_inequality([1.0, 2.0, 3.0], 2.0)  # off the hyperplane
    with pytest.raises(ValueError):
        check_inequality([0.0, 0.0, 0.0], 2.0)  # zero vector
    with pytest.raises(ValueError):
        check_inequality(np.zeros((2, 2)), 2.0)  # not 1-d


def test_mode_for():
    assert mode_for(1.5) is OptimizationMode.MAXIMIZE
    assert mode_for(0.5) is OptimizationMode.MINIMIZE
    with pytest.raises(ValueError):
        mode_for(1.0)


def test_instance_validation():
    inst = Instance(5, 2.0)
    assert inst.mode is OptimizationMode.MAXIMIZE
    with pytest.raises(ValueError):
        Instance(2, 2.0)
    with pytest.raises(ValueError):
        Instance(5, -1.0)


def test_domain_validation():
    with pytest.raises(ValueError):
        branch_two_point(0.0)
    with pytest.raises(ValueError):
        branch_spread(2, 1.5)
    with pytest.raises(ValueError):
        m_theory(5, 1.0)
