"""Lyapunov functionals, Weyl chambers, TNS, splittings, fast stable elements.

The Lyapunov exponents of a commuting tuple of integer matrices are the
linear functionals b -> sum_i b_i log|lambda_i| attached to joint eigenvalue
tuples (lambda_1, ..., lambda_k).  They are extracted exactly: each joint
primary component carries a commutative semisimple matrix algebra, which is
generated by a single cyclic element C; every generator is a polynomial in
C, so joint eigenvalue tuples are polynomial images of the roots of the
(exactly factored) characteristic polynomial of C.  Moduli are pinned down
as canonical real algebraic numbers, so functional values are log-linear
values with exact vanishing tests and refinable signs.

Chamber combinatorics then reduce to certified sign decisions: angular
sorting of oriented kernel lines for rank 2, exact rational LP with interval
margins for rank >= 3.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from . import linalg
from .actions import ValidatedAction, joint_primary_components, semisimple_part
from .config import DEFAULT_CONFIG, ToolkitConfig
from .errors import (
    DegeneratePlane,
    LPInfeasibleAtPrecision,
    NotAnosovAction,
    NotTNS,
    PrecisionExhausted,
    SingularElement,
    UndecidedProportionality,
    WitnessSearchExhausted,
)
from .intpoly import IntPolynomial, factor_cached, squarefree_part, pair_product_poly
from .logval import LogLinearValue
from .lp import maximize
from .numutil import certified_root_disks, modulus_squared_bounds, sqrt_bounds
from .realalg import RealAlgebraic
from .verdict import VERDICT_FALSE, VERDICT_TRUE, Verdict3, undecided


# -- data types --------------------------------------------------------------


@dataclass(frozen=True)
class LyapunovFunctional:
    """A Lyapunov exponent: values[i] = chi(e_i) = log|lambda_i|.

    moduli stores |lambda_i|^2 as canonical real algebraic numbers when the
    functional came from an actual action (None for synthetic test inputs);
    values are the corresponding log-linear components in either case.
    """

    values: tuple[LogLinearValue, ...]
    multiplicity: int
    origin: int | None = None
    moduli: tuple[RealAlgebraic, ...] | None = None

    @classmethod
    def from_moduli(
        cls, msqs, multiplicity: int, origin: int | None = None
    ) -> "LyapunovFunctional":
        vals = tuple(LogLinearValue.half_log(m) for m in msqs)
        return cls(vals, multiplicity, origin, tuple(msqs))

    @classmethod
    def from_rational_vector(cls, vec, multiplicity: int = 1) -> "LyapunovFunctional":
        vals = tuple(LogLinearValue.from_rational(v) for v in vec)
        return cls(vals, multiplicity)

    @property
    def rank(self) -> int:
        return len(self.values)

    def value_at(self, b) -> LogLinearValue:
        out = LogLinearValue.from_rational(0)
        for bi, v in zip(b, self.values):
            out = out + v.scale(Fraction(bi))
        return out

    def is_zero_functional(self) -> bool:
        return all(v.is_exactly_zero() for v in self.values)

    def approx(self, bits: int = 64) -> list[float]:
        return [float(v.midpoint(bits)) for v in self.values]


@dataclass(frozen=True)
class CoarseClass:
    """Maximal group of positively proportional Lyapunov functionals."""

    index: int
    members: tuple[LyapunovFunctional, ...]
    total_multiplicity: int

    @property
    def hyperplane_normal(self) -> LyapunovFunctional:
        return self.members[0]

    @property
    def rank(self) -> int:
        return self.members[0].rank

    def value_at(self, b) -> LogLinearValue:
        return self.hyperplane_normal.value_at(b)


@dataclass(frozen=True)
class WeylChamber:
    """Open chamber identified by its sign vector over the coarse classes."""

    signs: tuple[int, ...]
    witness: tuple[int, ...]
    witness_anosov: bool | None = None


@dataclass(frozen=True)
class Splitting:
    """Lemma-5.1-style splitting of the coarse classes around a target.

    Witnesses satisfy stable_set(a1) = E1 + {target}, stable_set(c1) = E1,
    stable_set(a2) = E2 + {target}, stable_set(c2) = E2.
    """

    target: int
    e1_classes: tuple[int, ...]
    e2_classes: tuple[int, ...]
    a1: tuple[int, ...]
    a2: tuple[int, ...]
    c1: tuple[int, ...]
    c2: tuple[int, ...]
    plane: tuple[tuple[int, ...], tuple[int, ...]]
    m: int


# -- lyapunov functional extraction ------------------------------------------


def _cyclic_generator(semis: list) -> tuple[list, list[list[Fraction]]]:
    """Find C in the algebra generated by the commuting semisimple matrices
    with every generator a polynomial in C; returns (C, poly coefficients).

    A generic linear combination works because the algebra is etale over Q.
    """
    m = len(semis[0])

    def try_candidate(c):
        pows = [linalg.identity(m)]
        for _ in range(m - 1):
            pows.append(linalg.mat_mul(pows[-1], c))
        cols = [[p[i][j] for p in pows] for i in range(m) for j in range(m)]
        qs = []
        for s in semis:
            rhs = [s[i][j] for i in range(m) for j in range(m)]
            sol = linalg.solve([list(row) for row in cols], rhs)
            if sol is None:
                return None
            qs.append(sol)
        return qs

    candidates = list(semis)
    for t in range(1, 64):
        acc = semis[0]
        for i, s in enumerate(semis[1:], start=1):
            acc = linalg.mat_add(acc, linalg.mat_scale(s, Fraction(t**i)))
        candidates.append(acc)
    for c in candidates:
        qs = try_candidate(c)
        if qs is not None:
            return c, qs
    raise RuntimeError("no cyclic generator found for semisimple algebra")


def _image_poly(p: IntPolynomial, q: list[Fraction]) -> IntPolynomial:
    """Integer polynomial whose roots include {q(r) : p(r) = 0}."""
    x, y = sympy.symbols("x y")
    qx = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(q))
    r = sympy.resultant(p.to_sympy(x).as_expr(), y - qx, x)
    return IntPolynomial.from_sympy(sympy.Poly(sympy.expand(r), y))


def _eval_poly_on_disk(
    q: list[Fraction], re: Fraction, im: Fraction, rad: Fraction
) -> tuple[Fraction, Fraction, Fraction]:
    """Rigorous disk enclosure of q(z) over the disk around re + i*im."""
    are, aim = Fraction(0), Fraction(0)
    for c in reversed(q):
        are, aim = are * re - aim * im + c, are * im + aim * re
    # |q(z) - q(center)| <= rad * sum_t t |q_t| R^(t-1), R >= |center| + rad
    _, chi = sqrt_bounds(re * re + im * im)
    big_r = chi + rad
    deriv_bound = sum(
        Fraction(t) * abs(c) * big_r ** (t - 1) for t, c in enumerate(q) if t
    )
    return are, aim, rad * deriv_bound


def _msq_enclosure(p: IntPolynomial, base_disk, q: list[Fraction]):
    """Shrinking enclosure of |q(root)|^2 for the root inside base_disk.

    At each refinement, hull the bound over every refined disk meeting the
    base disk: the true root's disk is always included, and foreign disks
    drop out once their radii beat the root separation.
    """
    bre, bim, brad = base_disk

    def enclosure(bits: int) -> tuple[Fraction, Fraction]:
        lo = hi = None
        for re, im, rad in certified_root_disks(p.coeffs, max(bits, 64)):
            d2 = (re - bre) ** 2 + (im - bim) ** 2
            if d2 > (rad + brad) ** 2:
                continue
            gre, gim, grad = _eval_poly_on_disk(q, re, im, rad)
            a, b = modulus_squared_bounds(gre, gim, grad)
            lo = a if lo is None else min(lo, a)
            hi = b if hi is None else max(hi, b)
        assert lo is not None
        return lo, hi

    return enclosure


def _component_functionals(
    comp: dict, origin: int, config: ToolkitConfig
) -> list[tuple[tuple[RealAlgebraic, ...], int]]:
    semis = [semisimple_part(b) for b in comp["mats"]]
    cyc, qs = _cyclic_generator(semis)
    cp, _ = linalg.charpoly_rational(cyc)
    out = []
    for p, mult in factor_cached(cp):
        if p.degree < 1:
            continue
        cands = [
            squarefree_part(pair_product_poly(squarefree_part(_image_poly(p, q))))
            for q in qs
        ]
        for disk in certified_root_disks(p.coeffs, config.initial_bits):
            msqs = tuple(
                RealAlgebraic.from_enclosure(
                    cands[j],
                    _msq_enclosure(p, disk, qs[j]),
                    start_bits=config.initial_bits,
                )
                for j in range(len(qs))
            )
            out.append((msqs, mult))
    return out


def lyapunov_data(
    action: ValidatedAction, config: ToolkitConfig = DEFAULT_CONFIG
) -> list[LyapunovFunctional]:
    """Lyapunov functionals of the action, grouped by equal log-modulus
    vectors, with multiplicities summing to the torus dimension."""
    merged: list[tuple[tuple[RealAlgebraic, ...], int, int]] = []
    for origin, comp in enumerate(joint_primary_components(action)):
        for msqs, mult in _component_functionals(comp, origin, config):
            for i, (m0, t0, o0) in enumerate(merged):
                if m0 == msqs:
                    merged[i] = (m0, t0 + mult, o0)
                    break
            else:
                merged.append((msqs, mult, origin))
    out = [
        LyapunovFunctional.from_moduli(msqs, mult, origin)
        for msqs, mult, origin in merged
    ]
    assert sum(f.multiplicity for f in out) == action.dim
    return out


# -- proportionality and coarse classes --------------------------------------


def _interval(value: LogLinearValue, bits: int) -> tuple[Fraction, Fraction]:
    return value.interval(bits)


def _bounded_away(value: LogLinearValue, bits: int, cap: int):
    """Interval for a value known to be nonzero, not containing 0."""
    b = bits
    while b <= max(cap, bits):
        lo, hi = value.interval(b)
        if lo > 0 or hi < 0:
            return lo, hi
        b *= 2
    raise PrecisionExhausted("nonzero value not separated from 0", cap)


def _interval_div(num, den):
    corners = [num[0] / den[0], num[0] / den[1], num[1] / den[0], num[1] / den[1]]
    return min(corners), max(corners)


def _proportionality(
    f: LyapunovFunctional,
    g: LyapunovFunctional,
    config: ToolkitConfig,
) -> tuple[str, Fraction | None]:
    """Decide whether g = c*f for real c: ("pos"|"neg", |c| if rational and
    certified), ("none", None), or ("undecided", None)."""
    k = f.rank
    fz = [v.is_exactly_zero() for v in f.values]
    gz = [v.is_exactly_zero() for v in g.values]
    if fz != gz:
        return "none", None
    idx = [i for i in range(k) if not fz[i]]
    if not idx:
        return "pos", Fraction(1)
    cap = config.precision_cap_bits
    fs = [f.values[i].sign(cap) for i in idx]
    gs = [g.values[i].sign(cap) for i in idx]
    if gs == fs:
        sigma = 1
    elif gs == [-s for s in fs]:
        sigma = -1
    else:
        return "none", None
    if len(idx) == 1:
        return ("pos" if sigma > 0 else "neg"), None
    tried: set[Fraction] = set()
    bits = config.initial_bits
    while bits <= cap:
        ratios = [
            _interval_div(
                _bounded_away(g.values[i], bits, cap),
                _bounded_away(f.values[i], bits, cap),
            )
            for i in idx
        ]
        for a in range(len(ratios)):
            for b in range(a + 1, len(ratios)):
                if ratios[a][1] < ratios[b][0] or ratios[b][1] < ratios[a][0]:
                    return "none", None
        lo = max(r[0] for r in ratios)
        hi = min(r[1] for r in ratios)
        for p in range(1, config.max_den + 1):
            for q in range(1, config.max_den + 1):
                if math.gcd(p, q) != 1:
                    continue
                c = sigma * Fraction(p, q)
                if c in tried or not lo <= c <= hi:
                    continue
                tried.add(c)
                if all(
                    (g.values[i] - f.values[i].scale(c)).is_exactly_zero()
                    for i in idx
                ):
                    return ("pos" if sigma > 0 else "neg"), Fraction(p, q)
        bits *= 2
    return "undecided", None


def coarse_classes(
    functionals: list[LyapunovFunctional],
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> list[CoarseClass]:
    """Partition functionals into maximal positively proportional groups."""
    n = len(functionals)
    for f in functionals:
        if f.is_zero_functional():
            raise NotAnosovAction("action carries an identically zero Lyapunov functional")
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            rel, _ = _proportionality(functionals[i], functionals[j], config)
            if rel == "undecided":
                raise UndecidedProportionality((i, j), config.precision_cap_bits)
            if rel == "pos":
                parent[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = []
    for idx, root in enumerate(sorted(groups)):
        members = tuple(functionals[i] for i in groups[root])
        out.append(
            CoarseClass(idx, members, sum(f.multiplicity for f in members))
        )
    return out


# -- TNS ----------------------------------------------------------------------


def _rounded_integer_witness(x, predicate, cap: int) -> tuple[int, ...]:
    """Round an exact LP interior point (huge denominators) to a nearby
    lattice direction whose signs still certify."""
    den = 4
    while den <= cap:
        vec = [Fraction(round(v * den), den) for v in x]
        if any(vec):
            witness = _integer_scale(vec, cap)
            if predicate(witness):
                return witness
        den *= 4
    raise WitnessSearchExhausted(cap)


def _integer_scale(vec: list[Fraction], cap: int) -> tuple[int, ...]:
    den = math.lcm(*[v.denominator for v in vec])
    ints = [int(v * den) for v in vec]
    g = math.gcd(*ints)
    if g:
        ints = [v // g for v in ints]
    if max(abs(v) for v in ints) > cap:
        raise WitnessSearchExhausted(cap)
    return tuple(ints)


def _joint_negative_witness(
    a: CoarseClass, b: CoarseClass, config: ToolkitConfig
) -> tuple[int, ...]:
    """Integer b with chi_a(b) < 0 and chi_b(b) < 0 for certified
    non-proportional classes (the cones always intersect then)."""
    k = a.rank
    bits = config.initial_bits
    while bits <= config.precision_cap_bits:
        rows, rhs = [], []
        widths = []
        for cls in (a, b):
            mids = []
            w = Fraction(0)
            for v in cls.hyperplane_normal.values:
                lo, hi = v.interval(bits)
                mids.append((lo + hi) / 2)
                w = max(w, hi - lo)
            rows.append(mids)
            widths.append(Fraction(k) * w)
        # maximize t st  mids.x + t <= -width, |x_i| <= 1, t <= 1
        c = [Fraction(0)] * k + [Fraction(1)]
        cons, cb = [], []
        for row, w in zip(rows, widths):
            cons.append(list(row) + [Fraction(1)])
            cb.append(-w)
        for i in range(k):
            e = [Fraction(0)] * (k + 1)
            e[i] = Fraction(1)
            cons.append(list(e))
            cb.append(Fraction(1))
            e2 = [Fraction(0)] * (k + 1)
            e2[i] = Fraction(-1)
            cons.append(e2)
            cb.append(Fraction(1))
        cons.append([Fraction(0)] * k + [Fraction(1)])
        cb.append(Fraction(1))
        res = maximize(c, cons, cb)
        if res is not None and res[0] > 0:

            def contracts_both(w) -> bool:
                return all(
                    cls.value_at(w).sign(config.precision_cap_bits) < 0
                    for cls in (a, b)
                )

            try:
                return _rounded_integer_witness(
                    res[1][:k], contracts_both, config.witness_cap
                )
            except WitnessSearchExhausted:
                pass
        bits *= 2
    raise PrecisionExhausted("joint contraction witness not found", config.precision_cap_bits)


def is_tns(
    classes: list[CoarseClass], config: ToolkitConfig = DEFAULT_CONFIG
) -> tuple[Verdict3, dict]:
    """Totally non-symplectic: no two classes negatively proportional.

    Also emits, for each non-proportional pair, an integer element contracting
    both (the negative half-spaces intersect)."""
    witnesses: dict[tuple[int, int], tuple[int, ...]] = {}
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            rel, ratio = _proportionality(
                classes[i].hyperplane_normal, classes[j].hyperplane_normal, config
            )
            if rel == "neg":
                return VERDICT_FALSE, {"negative_pair": (i, j), "ratio": ratio}
            if rel == "undecided":
                return undecided(config.precision_cap_bits), {"pair": (i, j)}
            witnesses[(i, j)] = _joint_negative_witness(
                classes[i], classes[j], config
            )
    return VERDICT_TRUE, {"witnesses": witnesses}


# -- chambers -----------------------------------------------------------------


def _product_diff_sign(x1, y1, x2, y2, config: ToolkitConfig) -> int:
    """Sign of x1*y2 - y1*x2 for log-linear values, known nonzero."""
    bits = config.initial_bits
    while bits <= config.precision_cap_bits:
        ivs = [v.interval(bits) for v in (x1, y2, y1, x2)]
        lo1, hi1 = _iv_mul(ivs[0], ivs[1])
        lo2, hi2 = _iv_mul(ivs[2], ivs[3])
        if lo1 - hi2 > 0:
            return 1
        if hi1 - lo2 < 0:
            return -1
        bits *= 2
    raise PrecisionExhausted("cross product sign unresolved", config.precision_cap_bits)


def _iv_mul(a, b):
    corners = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    return min(corners), max(corners)


def _chambers_rank1(classes, config) -> list[WeylChamber]:
    cap = config.precision_cap_bits
    pos = tuple(c.value_at((1,)).sign(cap) for c in classes)
    return [
        WeylChamber(pos, (1,)),
        WeylChamber(tuple(-s for s in pos), (-1,)),
    ]


def _line_groups_rank2(classes, config) -> list[list[int]]:
    groups: list[list[int]] = []
    for i, cls in enumerate(classes):
        placed = False
        for grp in groups:
            rel, _ = _proportionality(
                classes[grp[0]].hyperplane_normal, cls.hyperplane_normal, config
            )
            if rel == "undecided":
                raise UndecidedProportionality((grp[0], i), config.precision_cap_bits)
            if rel == "neg":
                grp.append(i)
                placed = True
                break
        if not placed:
            groups.append([i])
    return groups


def _chambers_rank2(classes, config) -> list[WeylChamber]:
    cap = config.precision_cap_bits
    groups = _line_groups_rank2(classes, config)
    # oriented direction of each kernel line, canonicalized to angle in [0, pi)
    dirs = []
    for grp in groups:
        c1, c2 = classes[grp[0]].hyperplane_normal.values
        dx, dy = -c2, c1
        sy = dy.sign(cap)
        if sy < 0 or (sy == 0 and dx.sign(cap) < 0):
            dx, dy = -dx, -dy
        dirs.append((dx, dy))

    def cmp(a, b):
        if a is b:
            return 0
        return -_product_diff_sign(a[1][0], a[1][1], b[1][0], b[1][1], config)

    order = sorted(enumerate(dirs), key=functools.cmp_to_key(cmp))
    sorted_dirs = [d for _, d in order]
    n = len(sorted_dirs)

    bits = config.initial_bits
    den = 64
    while True:
        angles = []
        for dx, dy in sorted_dirs:
            ax, ay = float(dx.midpoint(bits)), float(dy.midpoint(bits))
            ang = math.atan2(ay, ax) % math.pi
            angles.append(ang)
        bounds = angles + [a + math.pi for a in angles]
        if all(bounds[i] < bounds[i + 1] for i in range(2 * n - 1)):
            chambers = []
            seen = set()
            ok = True
            for s in range(2 * n):
                lo = bounds[s]
                hi = bounds[(s + 1) % (2 * n)] + (2 * math.pi if s == 2 * n - 1 else 0)
                mid = (lo + hi) / 2
                vec = [
                    Fraction(round(math.cos(mid) * den), den),
                    Fraction(round(math.sin(mid) * den), den),
                ]
                if all(v == 0 for v in vec):
                    ok = False
                    break
                witness = _integer_scale(vec, config.witness_cap)
                try:
                    signs = tuple(c.value_at(witness).sign(cap) for c in classes)
                except PrecisionExhausted:
                    ok = False
                    break
                if 0 in signs or signs in seen:
                    ok = False
                    break
                seen.add(signs)
                chambers.append(WeylChamber(signs, witness))
            if ok and len(chambers) == 2 * n:
                return chambers
        bits *= 2
        den *= 16
        if den > config.witness_cap:
            raise WitnessSearchExhausted(config.witness_cap)


def _feasible_signs(rows, widths, signs, k):
    """Exact LP: is there x in the unit box with sign_m * (row_m . x) > width_m
    for every assigned m?  Returns (margin, x) with margin > 0 iff certified."""
    c = [Fraction(0)] * k + [Fraction(1)]
    cons, cb = [], []
    for row, w, s in zip(rows, widths, signs):
        cons.append([-Fraction(s) * v for v in row] + [Fraction(1)])
        cb.append(-w)
    for i in range(k):
        e = [Fraction(0)] * (k + 1)
        e[i] = Fraction(1)
        cons.append(list(e))
        cb.append(Fraction(1))
        e2 = [Fraction(0)] * (k + 1)
        e2[i] = Fraction(-1)
        cons.append(e2)
        cb.append(Fraction(1))
    cons.append([Fraction(0)] * k + [Fraction(1)])
    cb.append(Fraction(1))
    res = maximize(c, cons, cb)
    if res is None:
        return Fraction(-1), None
    return res[0], res[1][:k]


def _chambers_high_rank(classes, k, config) -> list[WeylChamber]:
    cap = config.precision_cap_bits
    bits = config.initial_bits
    while True:
        rows, widths = [], []
        exact = True
        for cls in classes:
            mids, w = [], Fraction(0)
            for v in cls.hyperplane_normal.values:
                lo, hi = v.interval(bits)
                mids.append((lo + hi) / 2)
                w = max(w, hi - lo)
            rows.append(mids)
            widths.append(Fraction(k) * w)
            exact = exact and w == 0
        partial: list[tuple[tuple[int, ...], list[Fraction]]] = [((), None)]
        unresolved = False
        for m in range(len(classes)):
            nxt = []
            for signs, _ in partial:
                for s in (1, -1):
                    cand = signs + (s,)
                    margin, x = _feasible_signs(
                        rows[: m + 1], widths[: m + 1], cand, k
                    )
                    if margin > 0:
                        nxt.append((cand, x))
                    elif not exact:
                        unresolved = True
            partial = nxt
        if not unresolved or exact or bits >= cap:
            chambers = []
            for signs, x in partial:
                def matches(w, signs=signs) -> bool:
                    try:
                        got = tuple(c.value_at(w).sign(cap) for c in classes)
                    except PrecisionExhausted:
                        return False
                    return got == signs

                witness = _rounded_integer_witness(x, matches, config.witness_cap)
                chambers.append(WeylChamber(signs, witness))
            return chambers
        bits *= 2


def weyl_chambers(
    classes: list[CoarseClass],
    rank: int | None = None,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> list[WeylChamber]:
    """Connected components of R^k minus the union of Lyapunov kernels,
    each with an integer witness carrying certified strict signs."""
    if not classes:
        raise NotAnosovAction("no coarse classes")
    k = rank if rank is not None else classes[0].rank
    if k == 1:
        return _chambers_rank1(classes, config)
    if k == 2:
        return _chambers_rank2(classes, config)
    return _chambers_high_rank(classes, k, config)


def anosov_in_every_chamber(
    action: ValidatedAction,
    chambers: list[WeylChamber],
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> tuple[bool, list[dict]]:
    """Check every chamber witness gives an Anosov product matrix."""
    from .actions import is_anosov_matrix, product_matrix

    table = []
    for ch in chambers:
        mat = product_matrix(action, ch.witness)
        ok = is_anosov_matrix(mat)
        table.append({"witness": ch.witness, "signs": ch.signs, "anosov": ok})
    return all(row["anosov"] for row in table), table


# -- stable sets, splittings, fast stable elements ----------------------------


def stable_set(
    classes: list[CoarseClass],
    b,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> list[CoarseClass]:
    """Classes with certified chi(b) < 0; raises SingularElement when some
    class vanishes at b."""
    out = []
    for cls in classes:
        s = cls.value_at(b).sign(config.precision_cap_bits)
        if s == 0:
            raise SingularElement(tuple(b))
        if s < 0:
            out.append(cls)
    return out


def _plane_witness(
    beta: float,
    den: int,
    p: tuple[int, ...],
    q: tuple[int, ...],
    cap: int,
) -> tuple[int, ...]:
    x1 = Fraction(round(math.cos(beta) * den), den)
    x2 = Fraction(round(math.sin(beta) * den), den)
    vec = [x1 * pi_ + x2 * qi for pi_, qi in zip(p, q)]
    if all(v == 0 for v in vec):
        raise DegeneratePlane("witness direction collapsed")
    return _integer_scale(vec, cap)


def complementary_splitting(
    classes: list[CoarseClass],
    target: CoarseClass,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> Splitting:
    """Split the non-target classes into E1/E2 via a generic rational
    2-plane, with the four witness elements of the splitting lemma."""
    verdict, _ = is_tns(classes, config)
    if verdict.kind == "false":
        raise NotTNS("splitting requires a TNS action")
    if len(classes) < 2:
        raise NotTNS("splitting needs at least two coarse classes")
    k = target.rank
    rng = random.Random(config.seed)
    cap = config.precision_cap_bits

    for _attempt in range(64):
        p = tuple(rng.randint(-9, 9) for _ in range(k))
        q = tuple(rng.randint(-9, 9) for _ in range(k))
        if linalg.rank([[Fraction(v) for v in p], [Fraction(v) for v in q]]) < 2:
            continue
        try:
            traces = []
            for cls in classes:
                gx = cls.value_at(p)
                gy = cls.value_at(q)
                if gx.is_exactly_zero() and gy.is_exactly_zero():
                    raise DegeneratePlane("class vanishes on the plane")
                traces.append((gx, gy))
            t = target.index
            e1, e2 = [], []
            for j, cls in enumerate(classes):
                if j == t:
                    continue
                cross = _product_diff_sign(
                    traces[t][0], traces[t][1], traces[j][0], traces[j][1], config
                )
                (e2 if cross > 0 else e1).append(j)
            # in-plane normal angles, for witness placement only (the
            # classification above is exact)
            angles = [
                math.atan2(float(gy.midpoint(256)), float(gx.midpoint(256)))
                for gx, gy in traces
            ]
            alpha = angles[t]
            gap = min(
                min(d, math.pi - d)
                for j, a in enumerate(angles)
                if j != t
                for d in [abs(a - alpha) % math.pi]
            )
            if gap <= 0:
                raise DegeneratePlane("coincident line traces")
            eps = gap / 4
            den = 4096
            expect = {
                "a1": sorted(e1) + [t],
                "c1": sorted(e1),
                "a2": sorted(e2) + [t],
                "c2": sorted(e2),
            }
            offsets = {
                "a1": math.pi / 2 + eps,
                "c1": math.pi / 2 - eps,
                "a2": -math.pi / 2 - eps,
                "c2": -math.pi / 2 + eps,
            }
            for _trial in range(8):
                witnesses = {}
                good = True
                for name, off in offsets.items():
                    w = _plane_witness(alpha + off, den, p, q, config.witness_cap)
                    try:
                        got = sorted(c.index for c in stable_set(classes, w, config))
                    except SingularElement:
                        good = False
                        break
                    if got != sorted(expect[name]):
                        good = False
                        break
                    witnesses[name] = w
                if good:
                    return Splitting(
                        target=t,
                        e1_classes=tuple(sorted(e1)),
                        e2_classes=tuple(sorted(e2)),
                        a1=witnesses["a1"],
                        a2=witnesses["a2"],
                        c1=witnesses["c1"],
                        c2=witnesses["c2"],
                        plane=(p, q),
                        m=1 + len(e2),
                    )
                eps /= 2
                den *= 16
            raise DegeneratePlane("witness placement failed on this plane")
        except (DegeneratePlane, PrecisionExhausted, WitnessSearchExhausted):
            continue
    raise DegeneratePlane("no generic plane found within retry budget")


def fast_stable_element(
    splitting: Splitting,
    side: int,
    classes: list[CoarseClass],
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> tuple[tuple[Fraction, ...], dict]:
    """Rational b with max_{chi in E_side} chi(b) < min_{chi in target}
    chi(b) < 0, with a certified positive margin."""
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    side_idx = splitting.e1_classes if side == 1 else splitting.e2_classes
    target = classes[splitting.target]
    k = target.rank
    cap = config.precision_cap_bits

    if not side_idx:
        b = splitting.a1 if side == 1 else splitting.a2
        bq = tuple(Fraction(v) for v in b)
        lo, hi = target.value_at(bq).interval(cap // 4)
        return bq, {"margin": -hi, "side_empty": True}

    side_members = [f for j in side_idx for f in classes[j].members]
    target_members = list(target.members)
    bits = config.initial_bits
    while bits <= cap:
        def approx(f):
            mids, w = [], Fraction(0)
            for v in f.values:
                lo, hi = v.interval(bits)
                mids.append((lo + hi) / 2)
                w = max(w, hi - lo)
            return mids, Fraction(k) * w

        sa = [approx(f) for f in side_members]
        ta = [approx(f) for f in target_members]
        c = [Fraction(0)] * k + [Fraction(1)]
        cons, cb = [], []
        for su, se in sa:
            for tu, te in ta:
                cons.append([a - b_ for a, b_ in zip(su, tu)] + [Fraction(1)])
                cb.append(-(se + te))
        for tu, te in ta:
            cons.append(list(tu) + [Fraction(1)])
            cb.append(-te)
        for i in range(k):
            e = [Fraction(0)] * (k + 1)
            e[i] = Fraction(1)
            cons.append(list(e))
            cb.append(Fraction(1))
            e2 = [Fraction(0)] * (k + 1)
            e2[i] = Fraction(-1)
            cons.append(e2)
            cb.append(Fraction(1))
        cons.append([Fraction(0)] * k + [Fraction(1)])
        cb.append(Fraction(1))
        res = maximize(c, cons, cb)
        if res is not None and res[0] > 0:
            exact_b = res[1][:k]
            den = 4
            rounded = []
            while den <= 1 << 16:
                cand = tuple(Fraction(round(v * den), den) for v in exact_b)
                if any(cand) and cand not in rounded:
                    rounded.append(cand)
                den *= 4
            rounded.append(tuple(exact_b))
            for b in rounded:
                margin = _certify_fast_stable(
                    b, side_members, target_members, bits
                )
                if margin is not None:
                    return b, {"margin": margin, "lp_value": res[0], "bits": bits}
        bits *= 2
    raise LPInfeasibleAtPrecision(cap)


def _certify_fast_stable(b, side_members, target_members, bits) -> Fraction | None:
    """Certified margin for chi_side(b) < chi_target(b) < 0, or None."""
    margin = None
    for f in side_members:
        for g in target_members:
            _, hi = (f.value_at(b) - g.value_at(b)).interval(bits)
            if hi >= 0:
                return None
            margin = -hi if margin is None else min(margin, -hi)
    for g in target_members:
        _, hi = g.value_at(b).interval(bits)
        if hi >= 0:
            return None
        margin = -hi if margin is None else min(margin, -hi)
    return margin
