from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anosov_forge import linalg
from anosov_forge.actions import (
    RationalSubspace,
    invariant_complement,
    is_anosov_matrix,
    is_semisimple,
    is_totally_reducible,
    joint_primary_components,
    minimal_polynomial,
    product_matrix,
    rational_primary_decomposition,
    semisimple_part,
    validate,
)
from anosov_forge.errors import NonCommuting, NotUnimodular, ShapeMismatch

CAT = [[2, 1], [1, 1]]
JORDAN = [[1, 1], [0, 1]]


def test_validate_rejects_noncommuting():
    with pytest.raises(NonCommuting):
        validate([[[1, 1], [0, 1]], [[1, 0], [1, 1]]])


def test_validate_rejects_nonunimodular():
    with pytest.raises(NotUnimodular):
        validate([[[2, 0], [0, 1]]])


def test_validate_rejects_ragged():
    with pytest.raises(ShapeMismatch):
        validate([[[1, 0], [0]]])


def test_semisimple_cat_not_jordan():
    assert is_semisimple(validate([CAT]))
    assert not is_semisimple(validate([JORDAN]))


def test_minimal_polynomial_jordan():
    # (x-1)^2 for the Jordan block, x-1 for the identity
    m = minimal_polynomial(linalg.to_mat(JORDAN))
    assert m.degree == 2
    assert minimal_polynomial(linalg.identity(3)).degree == 1


def test_primary_decomposition_block_diag():
    m = [[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
    parts, semisimple_sub = rational_primary_decomposition(linalg.to_mat(m))
    dims = sorted(sub.dimension for _, _, sub in parts)
    assert dims == [2, 2]
    # only the cat-map block is semisimple
    assert semisimple_sub.dimension == 3  # cat block + one eigenvector of Jordan


def test_semisimple_part_annihilates_nilpotent():
    s = semisimple_part(linalg.to_mat(JORDAN))
    assert s == linalg.identity(2)
    c = linalg.to_mat(CAT)
    assert semisimple_part(c) == c


def test_joint_primary_components_span(cartan_action):
    comps = joint_primary_components(cartan_action)
    assert sum(len(c["basis"]) for c in comps) == cartan_action.dim


def test_totally_reducible_matches_semisimple(cartan_action):
    ok, witness = is_totally_reducible(cartan_action)
    assert ok and witness is not None
    bad = validate([[[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 2, 1], [0, 0, 1, 1]]])
    ok2, witness2 = is_totally_reducible(bad)
    assert not ok2 and witness2 is None


def test_invariant_complement_exists_for_semisimple():
    g = linalg.to_mat(CAT)
    # the expanding eigendirection is irrational, so take the invariant
    # subspace {0}; complement is everything
    sub = RationalSubspace(basis=())
    comp = invariant_complement([g], sub)
    assert comp is not None and comp.dimension == 2


def test_invariant_complement_fails_for_jordan():
    g = linalg.to_mat(JORDAN)
    sub = RationalSubspace(basis=((Fraction(1), Fraction(0)),))
    assert invariant_complement([g], sub) is None


def test_invariant_complement_splits_block_diag():
    m = linalg.to_mat(
        [[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    )
    sub = RationalSubspace(
        basis=(
            (Fraction(1), Fraction(0), Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(1), Fraction(0), Fraction(0)),
        )
    )
    comp = invariant_complement([m], sub)
    assert comp is not None and comp.dimension == 2


def test_is_anosov_matrix():
    assert is_anosov_matrix(CAT)
    assert not is_anosov_matrix([[0, -1], [1, 0]])  # rotation, eigenvalues +-i
    assert not is_anosov_matrix(JORDAN)


def test_anosov_iff_inverse_anosov():
    m = linalg.to_mat(CAT)
    assert is_anosov_matrix(m) == is_anosov_matrix(linalg.inverse(m))


def test_product_matrix_exponents(cartan_action):
    a1, a2 = cartan_action.generator_mats()
    prod = product_matrix(cartan_action, (2, -1))
    expected = linalg.mat_mul(linalg.mat_pow(a1, 2), linalg.inverse(a2))
    assert prod == expected


@st.composite
def unimodular_2x2(draw):
    # random product of elementary shears: always unimodular and integral
    m = linalg.identity(2)
    for _ in range(draw(st.integers(1, 5))):
        t = draw(st.integers(-3, 3))
        e = [[1, t], [0, 1]] if draw(st.booleans()) else [[1, 0], [t, 1]]
        m = linalg.mat_mul(m, linalg.to_mat(e))
    return m


@given(unimodular_2x2())
@settings(max_examples=40, deadline=None)
def test_primary_decomposition_dimensions_sum(m):
    parts, _ = rational_primary_decomposition(m)
    assert sum(f.degree * mult for f, mult, _ in parts) == 2
    assert sum(sub.dimension for _, _, sub in parts) == 2


@given(unimodular_2x2())
@settings(max_examples=40, deadline=None)
def test_anosov_invariant_under_inversion(m):
    assert is_anosov_matrix(m) == is_anosov_matrix(linalg.inverse(m))
