import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anchorpack.closed_forms import (
    KNOWN_MINIMA,
    area_213,
    bound_213,
    bound_231,
    bound_231_n4,
    bound_cliff,
    bound_decreasing,
    bound_increasing,
    bound_increasing_start,
    bound_sparse,
    bound_sparse_limit,
    bound_start1,
    decreasing_value,
    kn_table,
    mountain_end_bound,
    stationary_points_213,
    threshold_prelayer,
    threshold_prelayer_limit,
    tight_config_for,
    two_dot_area,
)
from anchorpack.geometry import Configuration, Point
from anchorpack.permutations import Permutation, classify, permutation_of
from anchorpack.solver import max_area, solve_max

PRINTED_KN = [1.0000, 0.7500, 0.6667, 0.6250, 0.5833, 0.5615, 0.5374, 0.5211, 0.5080, 0.4934]


def test_start1_examples():
    r = bound_start1(1)
    assert r.bound == F(3, 4) and r.tight_points == (Point(F(1, 2), F(1, 2)),)
    r = bound_start1(F(1, 2))
    assert r.bound == F(1, 2) and r.tight_points == (Point(0, 0),)
    assert bound_start1(F(3, 4)).bound == F(2, 3)
    assert bound_start1(F(1, 3)).bound == F(1, 3)


def test_start1_tight_configuration_attains_bound():
    inner = bound_decreasing(3).tight_config
    r = bound_start1(bound_decreasing(3).bound, inner=inner)
    assert permutation_of(r.tight_config) == Permutation((1, 3, 2))
    assert solve_max(r.tight_config).area == r.bound


@pytest.mark.parametrize("n", range(2, 8))
def test_increasing_start_reduces_to_increasing(n):
    assert bound_increasing_start(n - 1, 1).bound == F(1, 2) + F(1, 2 * n)
    assert bound_increasing(n).bound == F(1, 2) + F(1, 2 * n)


def test_increasing_start_examples():
    assert bound_increasing_start(3, 1).bound == F(5, 8)
    for m in range(1, 6):
        assert bound_increasing_start(m, F(1, 2)).bound == F(1, 2)
    for m in range(1, 5):
        for n2 in range(1, 5):
            assert bound_increasing_start(m, F(1, 2) + F(1, 2 * n2)).bound == F(1, 2) + F(1, 2 * (m + n2))


def test_increasing_start_small_k_uses_collapsing_family():
    r = bound_increasing_start(3, F(2, 5), delta=F(1, 100))
    assert r.bound == F(2, 5)
    assert r.tight_points == tuple(Point(F(i, 100), F(i, 100)) for i in (1, 2, 3))
    with pytest.raises(ValueError):
        bound_increasing_start(0, 1)


def test_decreasing_examples():
    r = bound_decreasing(3)
    assert r.bound == F(19, 27)
    assert r.tight_config.coords() == [(F(4, 9), F(2, 3)), (F(2, 3), F(4, 9))]
    assert bound_decreasing(4).bound == F(175, 256)
    assert bound_decreasing(1).bound == 1


@pytest.mark.parametrize("n", range(2, 12))
def test_decreasing_points_on_hyperbola(n):
    r = bound_decreasing(n)
    assert all(p.x * p.y == (1 - F(1, n)) ** n for p in r.tight_points)


def test_decreasing_beats_increasing():
    for n in range(1, 51):
        assert bound_decreasing(n).bound >= bound_increasing(n).bound
        assert decreasing_value(n) >= F(1, 2) + F(1, 2 * n)


def test_cliff_examples():
    assert bound_cliff(4, 1).bound == F(49, 76)
    for n in range(2, 7):
        assert bound_cliff(n, n - 1).bound == F(1, 2) + F(1, 2 * n)
    k = 1 - F(2, 3) ** 3
    assert k == F(19, 27)
    assert bound_cliff(5, 2).bound == (6 * k - 2) / (8 * k - 2)
    r = bound_cliff(5, 2)
    assert permutation_of(r.tight_config) == Permutation((1, 2, 4, 3))
    with pytest.raises(ValueError):
        bound_cliff(4, 0)


def test_231_examples():
    assert bound_231(F(3, 4)).bound == F(2, 3)
    assert bound_231(F(1, 2)).bound == F(1, 2)
    assert bound_231(F(1, 3)).bound == F(1, 4)
    with pytest.raises(ValueError):
        bound_231(0)


def test_231_branches_meet_smoothly():
    h = 1e-7
    left = (bound_231(0.75).bound - bound_231(0.75 - h).bound) / h
    # the square-root term vanishes like (k - 3/4)^(3/2), so the one-sided
    # quotient on the right converges only like sqrt(h)
    h = 1e-10
    right = (bound_231(0.75 + h).bound - bound_231(0.75).bound) / h
    assert left == pytest.approx(4 / 9, abs=1e-5)
    assert right == pytest.approx(4 / 9, abs=1e-5)
    assert float(bound_231(0.75 + 1e-12).bound) == pytest.approx(2 / 3, abs=1e-9)


def test_231_n4_configuration():
    r = bound_231_n4()
    c = r.tight_config
    assert permutation_of(c) == Permutation((2, 3, 1))
    assert c.coords() == [(F(1, 3), F(1, 3)), (F(2, 3), F(2, 3)), (1, F(1, 6))]
    assert solve_max(c).area == F(2, 3)
    # the last point may slide along the right edge below P_1
    for y in (F(1, 100), F(1, 10), F(1, 3)):
        if y == F(1, 3):
            continue
        assert max_area(bound_231_n4(y_last=y).tight_config) == F(2, 3)
    with pytest.raises(ValueError):
        bound_231_n4(y_last=F(1, 2))


def test_213_examples():
    r = bound_213()
    assert float(r.bound) == pytest.approx((837 - 11 * math.sqrt(33)) / 1152, abs=1e-15)
    assert float(r.bound) == pytest.approx(0.67171, abs=5e-6)
    (x1a, x2a, rejected), (x1, x2, best) = stationary_points_213()
    assert rejected == pytest.approx(0.78142, abs=5e-6)
    assert best == pytest.approx(float(r.bound), abs=1e-12)
    x = (9 + math.sqrt(33)) / 24
    assert (19 + 3 * math.sqrt(33)) / 96 == pytest.approx(x * x, abs=1e-12)
    assert area_213(x1, x2) == pytest.approx(best, abs=1e-15)


def test_213_tight_configuration():
    c = bound_213().tight_config
    assert permutation_of(c) == Permutation((2, 1, 3))
    assert float(max_area(c)) == pytest.approx(float(bound_213().bound), abs=1e-9)


def test_sparse_examples():
    assert bound_sparse_limit(F(2, 3)).bound == pytest.approx(2 / 3 * (1 - math.exp(-1.5)), abs=1e-12)
    assert bound_sparse_limit(F(2, 3)).bound == pytest.approx(0.5179, abs=5e-5)
    for n in range(2, 9):
        assert bound_sparse(1, n - 1).bound == bound_decreasing(n).bound
    assert bound_sparse(F(3, 4), 1).bound == F(2, 3)
    # k(l+1) < 1 clamps to k
    assert bound_sparse(F(1, 4), 2).bound == F(1, 4)
    with pytest.raises(ValueError):
        bound_sparse(1, 0)


@pytest.mark.parametrize("k, l", [(F(3, 4), 1), (F(2, 3), 3), (1, 4), (F(9, 10), 2)])
def test_sparse_tight_points_form_a_staircase(k, l):
    pts = bound_sparse(k, l).tight_points
    assert len(pts) == l
    assert all(0 < p.x <= 1 and 0 < p.y <= 1 for p in pts)
    assert all(a.x < b.x and a.y > b.y for a, b in zip(pts, pts[1:]))


def test_kn_table_matches_printed_values():
    got = [float(v) for _, v in kn_table(10)]
    assert got == pytest.approx(PRINTED_KN, abs=5e-5)
    assert [n for n, _ in kn_table(3)] == [1, 2, 3]
    assert kn_table(1) == [(1, 1.0)]


def test_kn_table_monotone_and_exact_mode():
    vals = [v for _, v in kn_table(20)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    exact = kn_table(6, exact=True)
    assert exact[3][1] == F(5, 8)
    assert [float(v) for _, v in exact] == pytest.approx(vals[:6], abs=1e-12)


def test_kn_recursion_alone():
    bare = kn_table(10, known=None)
    assert float(bare[3][1]) == pytest.approx(0.6214, abs=5e-5)
    assert KNOWN_MINIMA[4] == F(5, 8)


def test_threshold_examples():
    assert threshold_prelayer_limit() == pytest.approx(0.21306, abs=5e-6)
    assert threshold_prelayer(1) == 0
    assert threshold_prelayer(2) == F(1, 8)
    assert threshold_prelayer(200) == pytest.approx(threshold_prelayer_limit(), abs=1e-3)


def test_mountain_end_bound():
    assert mountain_end_bound(3, F(1, 2)) == F(1, 2)
    # with k from an n'-point mountain the bound is the (m + n')-point increasing value
    assert mountain_end_bound(2, F(1, 2) + F(1, 6)) == F(1, 2) + F(1, 10)


def test_two_dot_examples():
    assert two_dot_area(F(1, 2), F(1, 2)) == F(3, 4)
    assert two_dot_area(F(3, 10), F(2, 5)) == F(41, 50)
    assert two_dot_area(0, 0) == 1


@settings(max_examples=100, deadline=None)
@given(st.fractions(F(1, 50), 1, max_denominator=50), st.fractions(F(1, 50), 1, max_denominator=50))
def test_two_dot_matches_solver(x, y):
    assert solve_max(Configuration.from_coords([(x, y)])).area == two_dot_area(x, y)


def _rational_tight_configs(n_max=5):
    out = []
    for n in range(1, n_max + 1):
        out.append(("increasing", n, bound_increasing(n)))
        out.append(("decreasing", n, bound_decreasing(n)))
        for m in range(1, n):
            out.append(("cliff", (n, m), bound_cliff(n, m)))
    out.append(("231", 4, bound_231_n4()))
    return out


@pytest.mark.parametrize("name, params, res", _rational_tight_configs(),
                         ids=lambda v: str(v) if not hasattr(v, "bound") else "")
def test_tight_configs_attain_their_bounds(name, params, res):
    c = res.tight_config
    assert c.exact
    assert solve_max(c).area == res.bound
    r = classify(permutation_of(c))
    if name == "increasing":
        assert r.increasing
    elif name == "decreasing":
        assert r.decreasing
    elif name == "cliff":
        assert r.cliff == params[1] or (params[1] == params[0] - 1 and r.increasing)


def _perturbations(c: Configuration, step):
    pts = c.coords()
    for i in range(len(pts)):
        for axis in (0, 1):
            for s in (step, -step):
                moved = [list(p) for p in pts]
                moved[i][axis] += s
                try:
                    d = Configuration.from_coords([tuple(p) for p in moved])
                except ValueError:
                    continue
                if permutation_of(d) == permutation_of(c):
                    yield d


@pytest.mark.parametrize("perm", [(), (1,), (1, 2), (2, 1), (1, 2, 3), (3, 2, 1), (1, 3, 2),
                                  (2, 1, 3), (2, 3, 1), (3, 1, 2)])
def test_tight_configs_are_local_minima(perm):
    c = tight_config_for(perm)
    step = F(1, 100) if c.exact else 0.01
    base = max_area(c)
    for d in _perturbations(c, step):
        assert max_area(d) >= base - (0 if c.exact else 1e-12)
