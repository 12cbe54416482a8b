from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anosov_forge.lp import Unbounded, maximize

F = Fraction


def test_simple_box():
    # max x + y subject to x <= 1, y <= 2, -x <= 0, -y <= 0
    val, z = maximize(
        [F(1), F(1)],
        [[F(1), F(0)], [F(0), F(1)], [F(-1), F(0)], [F(0), F(-1)]],
        [F(1), F(2), F(0), F(0)],
    )
    assert val == 3
    assert z == [F(1), F(2)]


def test_free_variables():
    # max -x with x >= -5 (i.e. -x <= 5): optimum at x = -5
    val, z = maximize([F(-1)], [[F(-1)]], [F(5)])
    assert val == 5
    assert z == [F(-5)]


def test_infeasible():
    # x <= -1 and -x <= 0 is empty
    assert maximize([F(1)], [[F(1)], [F(-1)]], [F(-1), F(0)]) is None


def test_unbounded():
    with pytest.raises(Unbounded):
        maximize([F(1)], [[F(-1)]], [F(0)])


def test_degenerate_tie():
    # max x + y on the triangle x,y >= 0, x + y <= 1: value 1
    val, _ = maximize(
        [F(1), F(1)],
        [[F(1), F(1)], [F(-1), F(0)], [F(0), F(-1)]],
        [F(1), F(0), F(0)],
    )
    assert val == 1


def test_negative_rhs_phase1():
    # x >= 3 (as -x <= -3), x <= 10: max x = 10
    val, z = maximize([F(1)], [[F(-1)], [F(1)]], [F(-3), F(10)])
    assert val == 10 and z == [F(10)]


@given(
    st.lists(st.integers(-5, 5), min_size=2, max_size=2),
    st.integers(1, 10),
)
@settings(max_examples=50, deadline=None)
def test_box_optimum_is_corner(c, r):
    # max c.x over the box |x_i| <= r: optimum is sum |c_i| * r
    a = [[F(1), F(0)], [F(-1), F(0)], [F(0), F(1)], [F(0), F(-1)]]
    b = [F(r)] * 4
    val, z = maximize([F(ci) for ci in c], a, b)
    assert val == sum(abs(ci) for ci in c) * r
    # returned point satisfies all constraints
    for row, bound in zip(a, b):
        assert sum(ri * zi for ri, zi in zip(row, z)) <= bound
