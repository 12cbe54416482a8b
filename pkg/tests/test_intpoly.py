from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from anosov_forge.intpoly import (
    IntPolynomial,
    cauchy_root_bound,
    factor_rational,
    inverse_poly,
    isolate_real_roots,
    pair_product_poly,
    power_poly,
    squarefree_part,
    sturm_count,
)

X2_MINUS_2 = IntPolynomial((-2, 0, 1))
FIB = IntPolynomial((-1, -1, 1))  # x^2 - x - 1


def test_eval_and_degree():
    p = IntPolynomial((1, -3, 0, 2))  # 2x^3 - 3x + 1
    assert p.degree == 3
    assert p(Fraction(1, 2)) == Fraction(-1, 4)
    assert p(1) == 0


def test_squarefree_part_splits_multiplicity():
    p = X2_MINUS_2 * X2_MINUS_2 * FIB
    sf = squarefree_part(p)
    # squarefree part has each root once: degree 4
    assert sf.degree == 4
    assert squarefree_part(sf).degree == 4


def test_factor_rational_multiplicities():
    p = FIB * FIB * IntPolynomial((-1, 1))
    factors = dict(factor_rational(p))
    assert factors[FIB.primitive()] == 2
    assert sum(f.degree * m for f, m in factors.items()) == p.degree


def test_sturm_count_sqrt2():
    # x^2 - 2 has one root in (1, 2) and one in (-2, -1)
    assert sturm_count(X2_MINUS_2, Fraction(1), Fraction(2)) == 1
    assert sturm_count(X2_MINUS_2, Fraction(-2), Fraction(-1)) == 1
    assert sturm_count(X2_MINUS_2, Fraction(-1), Fraction(1)) == 0


def test_isolate_real_roots_cubic():
    # x^3 - 3x + 1 has three real roots near -1.88, 0.347, 1.53
    p = IntPolynomial((1, -3, 0, 1))
    roots = isolate_real_roots(p)
    assert len(roots) == 3
    targets = [-1.879385, 0.347296, 1.532089]
    intervals = sorted(roots)
    for (lo, hi), t in zip(intervals, targets):
        assert float(lo) <= t <= float(hi)
        assert sturm_count(p, lo, hi) == 1


def test_pair_product_poly_contains_products():
    # roots of x^2-2 are +-sqrt2; pairwise products are +-2 and -2, 2
    q = pair_product_poly(X2_MINUS_2)
    assert q(2) == 0
    assert q(-2) == 0


def test_power_poly_squares_roots():
    q = power_poly(X2_MINUS_2, 2)
    # sqrt2^2 = 2 must be a root
    assert q(2) == 0


def test_inverse_poly_golden_ratio():
    q = inverse_poly(FIB)
    # 1/phi = phi - 1 satisfies x^2 + x - 1
    assert q(Fraction(-1)) != 0
    phi_inv_poly = IntPolynomial((-1, 1, 1))
    assert q.primitive() in (phi_inv_poly, -phi_inv_poly)


def test_cauchy_bound_is_a_bound():
    p = IntPolynomial((1, -3, 0, 1))
    b = cauchy_root_bound(p)
    assert sturm_count(p, -b, b) == 3


@given(
    st.lists(st.integers(-9, 9), min_size=1, max_size=5),
    st.lists(st.integers(-9, 9), min_size=1, max_size=5),
)
@settings(max_examples=50, deadline=None)
def test_mul_degree_additivity(a, b):
    p, q = IntPolynomial(tuple(a)), IntPolynomial(tuple(b))
    if p.is_zero or q.is_zero:
        assert (p * q).is_zero
    else:
        assert (p * q).degree == p.degree + q.degree


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=6))
@settings(max_examples=50, deadline=None)
def test_real_root_isolations_disjoint_and_contain_roots(coeffs):
    p = IntPolynomial(tuple(coeffs))
    assume(not p.is_zero and p.degree > 0)
    p = squarefree_part(p)
    intervals = isolate_real_roots(p)
    for i, (lo, hi) in enumerate(intervals):
        assert sturm_count(p, lo, hi) == 1
        for lo2, hi2 in intervals[i + 1 :]:
            assert hi <= lo2 or hi2 <= lo
