"""Small dense two-phase simplex over exact rationals.

Solves  max c.z  s.t.  A z <= b  with free variables, via the usual split
into nonnegative parts plus slacks.  Bland's rule, so it terminates; sizes
here are tiny (tens of rows).
"""

from __future__ import annotations

from fractions import Fraction


class Unbounded(Exception):
    pass


def _pivot(tab, basis, row, col):
    piv = tab[row][col]
    tab[row] = [v / piv for v in tab[row]]
    for r in range(len(tab)):
        if r != row and tab[r][col]:
            f = tab[r][col]
            tab[r] = [v - f * w for v, w in zip(tab[r], tab[row])]
    basis[row] = col


def _simplex(tab, basis, ncols):
    """Maximize with objective in the last row; Bland's rule."""
    while True:
        obj = tab[-1]
        col = next((j for j in range(ncols) if obj[j] > 0), None)
        if col is None:
            return
        best_row, best_ratio = None, None
        for r in range(len(tab) - 1):
            if tab[r][col] > 0:
                ratio = tab[r][-1] / tab[r][col]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[r] < basis[best_row])
                ):
                    best_row, best_ratio = r, ratio
        if best_row is None:
            raise Unbounded()
        _pivot(tab, basis, best_row, col)


def maximize(
    c: list[Fraction], a: list[list[Fraction]], b: list[Fraction]
) -> tuple[Fraction, list[Fraction]] | None:
    """max c.z subject to a z <= b, z free.  None when infeasible."""
    nvars = len(c)
    rows = len(a)
    c = [Fraction(v) for v in c]
    a = [[Fraction(v) for v in row] for row in a]
    b = [Fraction(v) for v in b]

    # columns: z+ (nvars), z- (nvars), slack (rows), artificial (rows)
    nz = 2 * nvars
    ncols = nz + rows + rows
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    for i in range(rows):
        row = [Fraction(0)] * (ncols + 1)
        sign = 1 if b[i] >= 0 else -1
        for j in range(nvars):
            row[j] = sign * a[i][j]
            row[nvars + j] = -sign * a[i][j]
        row[nz + i] = Fraction(sign)
        row[nz + rows + i] = Fraction(1)
        row[-1] = sign * b[i]
        tab.append(row)
        basis.append(nz + rows + i)

    # phase 1: minimize sum of artificials.  The objective row encodes the
    # equation  sum(r_j x_j) - z = rhs, so the current value is -rhs and a
    # column with positive coefficient improves it.
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(rows):
        obj = [o + v for o, v in zip(obj, tab[i])]
    for i in range(rows):
        obj[nz + rows + i] = Fraction(0)
    tab.append(obj)
    _simplex(tab, basis, nz + rows)  # artificials never re-enter
    if tab[-1][-1] != 0:
        return None
    # drive leftover artificials out of the basis where possible
    for r in range(rows):
        if basis[r] >= nz + rows:
            col = next((j for j in range(nz + rows) if tab[r][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, r, col)
    tab.pop()

    # phase 2
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(nvars):
        obj[j] = c[j]
        obj[nvars + j] = -c[j]
    for r in range(rows):
        if obj[basis[r]]:
            f = obj[basis[r]]
            obj = [o - f * v for o, v in zip(obj, tab[r])]
    tab.append(obj)
    _simplex(tab, basis, nz + rows)

    z = [Fraction(0)] * nvars
    for r in range(rows):
        if basis[r] < nvars:
            z[basis[r]] += tab[r][-1]
        elif basis[r] < nz:
            z[basis[r] - nvars] -= tab[r][-1]
    value = sum(ci * zi for ci, zi in zip(c, z))
    return value, z
