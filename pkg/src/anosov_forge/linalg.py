"""Exact linear algebra over Q (lists of lists of Fraction)."""

from __future__ import annotations

import math
from fractions import Fraction

import sympy

from .intpoly import IntPolynomial

Mat = list[list[Fraction]]
Vec = list[Fraction]


def to_mat(rows) -> Mat:
    return [[Fraction(v) for v in row] for row in rows]


def identity(n: int) -> Mat:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int) -> Mat:
    return [[Fraction(0)] * m for _ in range(n)]


def mat_mul(a: Mat, b: Mat) -> Mat:
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        for t in range(k):
            v = ai[t]
            if v:
                bt = b[t]
                oi = out[i]
                for j in range(m):
                    oi[j] += v * bt[j]
    return out


def mat_vec(a: Mat, v: Vec) -> Vec:
    return [sum(r[j] * v[j] for j in range(len(v))) for r in a]


def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Mat, c: Fraction) -> Mat:
    return [[c * x for x in row] for row in a]


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)]


def mat_eq(a: Mat, b: Mat) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_mat(a: Mat) -> bool:
    return all(x == 0 for row in a for x in row)


def det(a: Mat) -> Fraction:
    n = len(a)
    m = [row[:] for row in a]
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        result *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return result


def rref(a: Mat) -> tuple[Mat, list[int]]:
    m = [row[:] for row in a]
    rows, cols = len(m), len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [v - f * w for v, w in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Mat) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a: Mat) -> list[Vec]:
    """Basis of the right kernel, deterministic free-variable order."""
    if not a:
        return []
    red, pivots = rref(a)
    cols = len(a[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(a: Mat, b: Vec) -> Vec | None:
    """One solution of A x = b, or None if inconsistent."""
    rows, cols = len(a), len(a[0])
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def inverse(a: Mat) -> Mat:
    n = len(a)
    aug = [a[i][:] + identity(n)[i] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def mat_pow(a: Mat, n: int) -> Mat:
    if n < 0:
        return mat_pow(inverse(a), -n)
    out = identity(len(a))
    base = [row[:] for row in a]
    while n:
        if n & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base) if n > 1 else base
        n >>= 1
    return out


def charpoly(a: Mat) -> IntPolynomial:
    """Characteristic polynomial; must have integer coefficients.

    Holds for integer matrices and for restrictions of integer matrices to
    invariant rational subspaces (monic rational divisors of integer monic
    polynomials are integral).
    """
    m = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in a])
    poly = m.charpoly()
    coeffs = list(reversed(poly.all_coeffs()))
    if any(sympy.Rational(c).q != 1 for c in coeffs):
        raise ValueError("characteristic polynomial is not integral")
    return IntPolynomial([int(c) for c in coeffs])


def charpoly_rational(a: Mat) -> tuple[IntPolynomial, list[Fraction]]:
    """Characteristic polynomial of a rational matrix.

    Returns both the exact rational monic coefficients (lowest first) and an
    integer polynomial with the same roots and multiplicities (denominators
    cleared).
    """
    m = sympy.Matrix(
        [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in a]
    )
    coeffs = [sympy.Rational(c) for c in reversed(m.charpoly().all_coeffs())]
    fracs = [Fraction(int(c.p), int(c.q)) for c in coeffs]
    den = math.lcm(*[f.denominator for f in fracs])
    return IntPolynomial([int(f * den) for f in fracs]).primitive(), fracs


def poly_at_matrix(p: IntPolynomial, a: Mat) -> Mat:
    n = len(a)
    out = zeros(n, n)
    acc = identity(n)
    for c in p.coeffs:
        if c:
            out = mat_add(out, mat_scale(acc, Fraction(c)))
        acc = mat_mul(acc, a)
    return out


def columns(a: Mat) -> list[Vec]:
    return [list(col) for col in zip(*a)]


def from_columns(cols: list[Vec]) -> Mat:
    return [list(row) for row in zip(*cols)]


def in_span(basis: list[Vec], v: Vec) -> bool:
    if not basis:
        return all(x == 0 for x in v)
    a = from_columns(basis)
    return solve(a, v) is not None


def restrict_to_invariant(a: Mat, basis: list[Vec]) -> Mat:
    """Matrix of a on span(basis) in the given coordinates; basis must be invariant."""
    bmat = from_columns(basis)
    cols_out = []
    for v in basis:
        av = mat_vec(a, v)
        x = solve(bmat, av)
        if x is None:
            raise ValueError("subspace is not invariant")
        cols_out.append(x)
    return from_columns(cols_out)
