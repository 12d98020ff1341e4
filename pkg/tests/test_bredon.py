import pytest

from oracles import gm_closed_form

from cyclehom.bredon import (UNDETERMINED, ZERO, Bidegree, BredonMonomial, c_power_range, cp_dim,
                             generators, gm_over_r_table, multiply_partial, point_dim, row_generators)


def test_point_dim_examples():
    assert point_dim((0, 0)) == 1
    assert point_dim((1, 0)) == 0
    assert point_dim(Bidegree(-2, -4)) == 1
    assert point_dim((-1, -2)) == 0
    assert point_dim((2, 5)) == 1


def test_cp_dim_examples():
    assert cp_dim((0, 0)) == 1
    assert cp_dim((4, 0)) == 1
    assert cp_dim((7, 0)) == 2


def test_cp_dim_brute_force_sum():
    # summing far past the documented bound adds nothing
    for p in range(-12, 25):
        for q in range(-12, 25):
            brute = sum(point_dim((p - 2 * j, q - j)) for j in range(0, 80))
            assert cp_dim((p, q)) == brute
            assert all(not point_dim((p - 2 * j, q - j)) for j in range(max(c_power_range((p, q)), default=-1) + 1, 80))


def test_row_generators_examples():
    assert row_generators(1) == []
    assert [m.format() for m in row_generators(4)] == ["x_(0,-2)·c^2"]
    assert [m.format() for m in row_generators(6)] == ["x_(0,-3)·c^3", "x_(-2,-4)·c^4"]


def test_row_generators_odd_pattern():
    for k in range(2, 10):
        expected = [f"x_({-1 - 2 * i},{-(k + 1) - i})·c^{k + 1 + i}" for i in range(k - 1)]
        assert [m.format() for m in row_generators(2 * k + 1)] == expected


def test_generators_of_bidegree():
    assert [m.format() for m in generators((6, 0))] == ["x_(0,-3)·c^3", "x_(-2,-4)·c^4"]
    assert all(m.bidegree == Bidegree(3, 7) for m in generators((3, 7)))


def test_monomial_validation():
    with pytest.raises(ValueError):
        BredonMonomial((1, 0), 0)
    with pytest.raises(ValueError):
        BredonMonomial((0, 0), -1)
    assert BredonMonomial((0, -2), 2).bidegree == Bidegree(4, 0)


def test_multiply_partial_examples():
    unit = BredonMonomial((0, 0), 2)
    assert multiply_partial(unit, BredonMonomial((0, 0), 3)) == BredonMonomial((0, 0), 5)
    assert multiply_partial(BredonMonomial((1, 2), 0), BredonMonomial((-2, -4), 0)) is ZERO
    assert multiply_partial(BredonMonomial((-2, -4), 0), BredonMonomial((1, 2), 1)) is ZERO
    assert multiply_partial(BredonMonomial((-1, -3), 1), BredonMonomial((-2, -4), 0)) is UNDETERMINED
    assert multiply_partial(BredonMonomial((1, 1), 0), BredonMonomial((1, 2), 0)) is UNDETERMINED
    # the unit rule takes precedence over the cross-cone rule
    assert multiply_partial(BredonMonomial((0, 0), 0), BredonMonomial((-2, -4), 1)) == BredonMonomial((-2, -4), 1)


def test_gm_table():
    assert gm_over_r_table(5) == [1, 0, 0, 0, 1, 1]
    assert gm_over_r_table(9)[8] == 3 and gm_over_r_table(9)[9] == 3
    assert gm_over_r_table(60) == [gm_closed_form(s) for s in range(61)]


def test_negative_p_vanishes_in_nonnegative_weight():
    assert all(cp_dim((p, q)) == 0 for p in range(-20, 0) for q in range(0, 20))
    # in negative weight the negative cone contributes
    assert cp_dim((-2, -4)) == 1
