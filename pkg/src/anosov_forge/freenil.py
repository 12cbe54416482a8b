"""Free nilpotent lifts: Hall bases, induced graded matrices, Anosov tests.

A linear action on R^d extends canonically to the free k-step nilpotent Lie
algebra on d generators.  We fix a classical Hall basis (ordered by degree,
then by construction order) so structure constants — and hence every induced
matrix — are reproducible byte for byte.  The lifted element is Anosov iff
no degree block of its induced matrix has an eigenvalue of modulus one;
since degree-m eigenvalues are m-fold products of base eigenvalues, this is
the paper-style eigenvalue-product criterion, decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .actions import ValidatedAction, validate
from .config import DEFAULT_CONFIG, ToolkitConfig
from .errors import SizeCap
from .graded import GradedAlgebraAction, validate_graded
from .intpoly import IntPolynomial
from .modulus import has_unit_modulus_root


@dataclass(frozen=True)
class HallBasis:
    """Hall words for the free k-step nilpotent Lie algebra on d generators.

    words[i] = (degree, left, right); generators have left = right = -1 and
    occupy indices 0..d-1.  A bracket word [u, v] requires u < v and, when
    v = [a, b], a <= u (with indices compared in basis order).
    """

    generators_count: int
    step: int
    words: tuple[tuple[int, int, int], ...]

    @property
    def dimension(self) -> int:
        return len(self.words)

    def degree_dimensions(self) -> tuple[int, ...]:
        out = [0] * self.step
        for deg, _, _ in self.words:
            out[deg - 1] += 1
        return tuple(out)

    def degree_slice(self, degree: int) -> tuple[int, int]:
        lo = sum(self.degree_dimensions()[: degree - 1])
        return lo, lo + self.degree_dimensions()[degree - 1]


def witt_dimension(d: int, m: int) -> int:
    """Dimension of the degree-m component of the free Lie algebra on d
    generators: (1/m) sum_{e | m} mu(e) d^(m/e)."""
    import sympy

    total = sum(
        int(sympy.mobius(e)) * d ** (m // e) for e in range(1, m + 1) if m % e == 0
    )
    assert total % m == 0
    return total // m


def hall_basis(d: int, k: int, config: ToolkitConfig = DEFAULT_CONFIG) -> HallBasis:
    """Classical Hall set up to degree k, in degree-then-construction order."""
    if d < 1 or k < 1:
        raise ValueError("need d >= 1 generators and step k >= 1")
    expected = sum(witt_dimension(d, m) for m in range(1, k + 1))
    if expected > config.size_cap:
        raise SizeCap(expected, config.size_cap)
    words: list[tuple[int, int, int]] = [(1, -1, -1) for _ in range(d)]
    by_degree: dict[int, list[int]] = {1: list(range(d))}
    for m in range(2, k + 1):
        new: list[int] = []
        for p in range(1, m):
            q = m - p
            for u in by_degree.get(p, []):
                for v in by_degree.get(q, []):
                    if u >= v:
                        continue
                    _, vl, _ = words[v]
                    if vl != -1 and vl > u:
                        continue
                    words.append((m, u, v))
                    new.append(len(words) - 1)
        # keep degree-m words grouped by (left, right) in ascending order
        new.sort(key=lambda i: (words[i][1], words[i][2]))
        # re-emit in sorted order (indices were appended unsorted above)
        block = sorted((words[i] for i in new), key=lambda w: (w[1], w[2]))
        base = len(words) - len(new)
        for off, w in enumerate(block):
            words[base + off] = w
        by_degree[m] = list(range(base, len(words)))
    basis = HallBasis(d, k, tuple(words))
    assert basis.degree_dimensions() == tuple(
        witt_dimension(d, m) for m in range(1, k + 1)
    )
    return basis


def _bracket_cache(basis: HallBasis):
    """Memoized bracket of basis words, as sparse integer vectors."""
    words = basis.words
    k = basis.step
    index_of = {(l, r): i for i, (deg, l, r) in enumerate(words) if l != -1}

    @lru_cache(maxsize=None)
    def bw(u: int, v: int) -> tuple[tuple[int, int], ...]:
        if u == v:
            return ()
        if u > v:
            return tuple((i, -c) for i, c in bw(v, u))
        du, dv = words[u][0], words[v][0]
        if du + dv > k:
            return ()
        _, vl, vr = words[v]
        if vl == -1 or vl <= u:
            return ((index_of[(u, v)], 1),)
        # v = [a, b] with a > u: Jacobi rewrite [u,[a,b]] = [[u,a],b] + [a,[u,b]]
        out: dict[int, int] = {}
        for i, c in bw(u, vl):
            for j, c2 in bw(i, vr):
                out[j] = out.get(j, 0) + c * c2
        for i, c in bw(u, vr):
            for j, c2 in bw(vl, i):
                out[j] = out.get(j, 0) + c * c2
        return tuple((j, c) for j, c in sorted(out.items()) if c)

    return bw


def structure_constants(basis: HallBasis) -> list[tuple[int, int, int, int]]:
    """Sparse integer triples (a, b, c, value) for [e_a, e_b], a < b."""
    bw = _bracket_cache(basis)
    out = []
    n = basis.dimension
    for a in range(n):
        for b in range(a + 1, n):
            for c, value in bw(a, b):
                out.append((a, b, c, value))
    return out


@dataclass(frozen=True)
class LiftedAction:
    """Free nilpotent lift: induced graded integer matrices per generator."""

    base: ValidatedAction
    step: int
    hall: HallBasis
    graded_matrices: tuple[tuple[tuple[tuple[int, ...], ...], ...], ...]

    @property
    def rank(self) -> int:
        return self.base.rank

    def full_matrix(self, gen: int) -> list[list[int]]:
        n = self.hall.dimension
        out = [[0] * n for _ in range(n)]
        offset = 0
        for block in self.graded_matrices[gen]:
            m = len(block)
            for i in range(m):
                for j in range(m):
                    out[offset + i][offset + j] = block[i][j]
            offset += m
        return out

    def to_validated(self) -> ValidatedAction:
        name = f"{self.base.name}-lift{self.step}" if self.base.name else ""
        return validate([self.full_matrix(g) for g in range(self.rank)], name=name)

    def to_graded(self) -> GradedAlgebraAction:
        return validate_graded(
            self.hall.degree_dimensions(),
            structure_constants(self.hall),
            [self.full_matrix(g) for g in range(self.rank)],
            name=f"{self.base.name}-lift{self.step}" if self.base.name else "",
        )


def free_nilpotent_lift(
    action: ValidatedAction, k: int, config: ToolkitConfig = DEFAULT_CONFIG
) -> LiftedAction:
    """Canonical extension of the action to the free k-step nilpotent
    algebra; induced blocks are integral and unimodular by construction."""
    basis = hall_basis(action.dim, k, config)
    bw = _bracket_cache(basis)
    n = basis.dimension
    all_graded = []
    for gen in action.generators:
        # image of each Hall word, as a dense integer vector over the basis
        images: list[list[int]] = []
        for i in range(action.dim):
            col = [0] * n
            for r in range(action.dim):
                col[r] = gen[r][i]
            images.append(col)
        for idx in range(action.dim, n):
            _, left, right = basis.words[idx]
            col = [0] * n
            lu, rv = images[left], images[right]
            for a in range(n):
                if not lu[a]:
                    continue
                for b in range(n):
                    if not rv[b]:
                        continue
                    for c, val in bw(a, b):
                        col[c] += lu[a] * rv[b] * val
            images.append(col)
        blocks = []
        for m in range(1, k + 1):
            lo, hi = basis.degree_slice(m)
            block = tuple(
                tuple(images[j][i] for j in range(lo, hi)) for i in range(lo, hi)
            )
            blocks.append(block)
        all_graded.append(tuple(blocks))
    lift = LiftedAction(action, k, basis, tuple(all_graded))
    for gen in range(action.rank):
        for block in lift.graded_matrices[gen]:
            dm = linalg.det([[Fraction(x) for x in row] for row in block])
            assert dm in (1, -1)
    return lift


def _degree_block_product(lift: LiftedAction, degree: int, b) -> list[list[Fraction]]:
    m = lift.hall.degree_dimensions()[degree - 1]
    out = linalg.identity(m)
    for gen, exp in enumerate(b):
        block = [[Fraction(x) for x in row] for row in lift.graded_matrices[gen][degree - 1]]
        out = linalg.mat_mul(out, linalg.mat_pow(block, int(exp)))
    return out


def lift_is_anosov(lift: LiftedAction, b) -> bool:
    """Exact: no degree block of the lifted element has a unit-modulus
    eigenvalue (equivalently, no product of <= k base eigenvalues does)."""
    for degree in range(1, lift.step + 1):
        mat = _degree_block_product(lift, degree, b)
        cp = linalg.charpoly(mat)
        if has_unit_modulus_root(cp):
            return False
    return True


def lift_report(
    lift: LiftedAction, config: ToolkitConfig = DEFAULT_CONFIG
) -> dict:
    """Full Weyl analysis of the lifted (block-diagonal) action."""
    from .errors import NotAnosovAction
    from .weyl import (
        anosov_in_every_chamber,
        coarse_classes,
        is_tns,
        lyapunov_data,
        weyl_chambers,
    )

    action = lift.to_validated()
    functionals = lyapunov_data(action, config)
    base_functionals = lyapunov_data(lift.base, config)
    base_mult = sum(f.multiplicity for f in base_functionals)
    report: dict = {
        "dimension": action.dim,
        "functionals": functionals,
        "base_functional_multiplicity": base_mult,
    }
    try:
        classes = coarse_classes(functionals, config)
    except NotAnosovAction:
        report["classes"] = None
        report["error"] = "NotAnosovAction"
        return report
    report["classes"] = classes
    verdict, tns_info = is_tns(classes, config)
    report["tns"] = verdict
    report["tns_info"] = tns_info
    chambers = weyl_chambers(classes, lift.base.rank, config)
    report["chambers"] = chambers
    ok, table = anosov_in_every_chamber(action, chambers, config)
    report["anosov_in_every_chamber"] = ok
    report["chamber_table"] = table
    return report
