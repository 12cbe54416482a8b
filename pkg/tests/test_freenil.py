import math
from fractions import Fraction

import mpmath
import pytest

from anosov_forge import linalg
from anosov_forge.actions import validate
from anosov_forge.config import DEFAULT_CONFIG
from anosov_forge.errors import SizeCap
from anosov_forge.freenil import (
    free_nilpotent_lift,
    hall_basis,
    lift_is_anosov,
    structure_constants,
    witt_dimension,
)

CFG = DEFAULT_CONFIG


def lyndon_count(d: int, m: int) -> int:
    """Independent oracle: count Lyndon words of length m over d letters."""

    def words(prefix, length):
        if length == 0:
            yield prefix
            return
        for c in range(d):
            yield from words(prefix + (c,), length - 1)

    def is_lyndon(w):
        return all(w < w[i:] + w[:i] for i in range(1, len(w)))

    return sum(1 for w in words((), m) if is_lyndon(w))


def test_witt_matches_lyndon_oracle():
    for d in range(1, 5):
        for m in range(1, 5):
            assert witt_dimension(d, m) == lyndon_count(d, m)


def test_hall_basis_dimensions():
    assert hall_basis(2, 1, CFG).degree_dimensions() == (2,)
    assert hall_basis(2, 2, CFG).degree_dimensions() == (2, 1)
    assert hall_basis(2, 3, CFG).degree_dimensions() == (2, 1, 2)
    assert hall_basis(3, 2, CFG).degree_dimensions() == (3, 3)
    assert hall_basis(2, 5, CFG).degree_dimensions() == (2, 1, 2, 3, 6)


def test_hall_basis_size_cap():
    import dataclasses

    small = dataclasses.replace(CFG, size_cap=10)
    with pytest.raises(SizeCap):
        hall_basis(4, 4, small)


def test_structure_constants_antisymmetric_domain():
    basis = hall_basis(2, 3, CFG)
    sc = structure_constants(basis)
    for a, b, c, val in sc:
        assert a < b
        assert val != 0
        # grading: deg(c) = deg(a) + deg(b)
        assert basis.words[c][0] == basis.words[a][0] + basis.words[b][0]


def test_lift_blocks_are_unimodular(fibonacci_action):
    lift = free_nilpotent_lift(fibonacci_action, 3, CFG)
    for g in range(lift.rank):
        for deg in range(1, 4):
            block = lift.graded_matrices[g][deg - 1]
            assert linalg.det(linalg.to_mat(block)) in (1, -1)


def test_lift_functoriality(fibonacci_action):
    # the lift of A^2 in each degree equals the square of the lift of A
    a = fibonacci_action.generators[0]
    a2 = linalg.mat_mul(linalg.to_mat(a), linalg.to_mat(a))
    pair = validate([[list(r) for r in a], [[int(v) for v in r] for r in a2]])
    lift = free_nilpotent_lift(pair, 3, CFG)
    for deg in range(1, 4):
        b0 = linalg.to_mat(lift.graded_matrices[0][deg - 1])
        b1 = linalg.to_mat(lift.graded_matrices[1][deg - 1])
        assert linalg.mat_mul(b0, b0) == b1


def test_lift_blocks_commute(cartan_action):
    lift = free_nilpotent_lift(cartan_action, 2, CFG)
    for deg in range(1, 3):
        b0 = linalg.to_mat(lift.graded_matrices[0][deg - 1])
        b1 = linalg.to_mat(lift.graded_matrices[1][deg - 1])
        assert linalg.mat_mul(b0, b1) == linalg.mat_mul(b1, b0)


def test_lift_to_graded_validates(fibonacci_action):
    g = free_nilpotent_lift(fibonacci_action, 2, CFG).to_graded()
    assert g.dim == 3
    assert g.grading == (2, 1)


def numeric_anosov_oracle(lift, b, digits=50) -> bool:
    """Check no eigenvalue of the lifted product has |.| within 10^-10 of 1,
    using high-precision floating point on each graded block."""
    with mpmath.workdps(digits):
        for deg in range(1, lift.step + 1):
            blocks = [
                linalg.mat_pow(linalg.to_mat(lift.graded_matrices[g][deg - 1]), bi)
                if bi
                else linalg.identity(len(lift.graded_matrices[g][deg - 1]))
                for g, bi in enumerate(b)
            ]
            prod = blocks[0]
            for blk in blocks[1:]:
                prod = linalg.mat_mul(prod, blk)
            m = mpmath.matrix([[mpmath.mpf(int(x)) for x in row] for row in prod])
            eigs, _ = mpmath.eig(m)
            for ev in eigs:
                if abs(abs(ev) - 1) < mpmath.mpf(10) ** (-10):
                    return False
    return True


def test_cat_lift_not_anosov_at_step2(fibonacci_action):
    # degree-2 block of a 2x2 lift is det = +-1, killing hyperbolicity
    lift = free_nilpotent_lift(fibonacci_action, 2, CFG)
    assert not lift_is_anosov(lift, (1,))
    assert not numeric_anosov_oracle(lift, (1,))


def test_cartan_lift_anosov_matches_oracle(cartan_action):
    lift = free_nilpotent_lift(cartan_action, 2, CFG)
    for b in [(1, 0), (0, 1), (1, 1), (2, -1), (-1, 3)]:
        assert lift_is_anosov(lift, b) == numeric_anosov_oracle(lift, b)


def test_lift_full_matrix_unimodular_and_block_triangular(cartan_action):
    lift = free_nilpotent_lift(cartan_action, 2, CFG)
    m = lift.full_matrix(0)
    assert linalg.det(linalg.to_mat(m)) in (1, -1)
    d1 = cartan_action.dim
    # degree-1 rows have no degree-2 coupling: the full matrix is block
    # diagonal for graded automorphisms
    for i in range(d1):
        assert all(m[i][j] == 0 for j in range(d1, len(m)))
