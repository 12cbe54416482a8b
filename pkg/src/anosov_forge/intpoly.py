"""Dense integer polynomials and exact Sturm-chain root counting.

Coefficients are stored lowest degree first.  Factorisation, gcds and
resultants are delegated to sympy over ZZ/QQ; the Sturm machinery is done
directly on integer coefficient lists so that sign counts stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import sympy
from sympy.abc import x as _x, y as _y

from .errors import EndpointRoot


def _strip(coeffs: Sequence[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients lowest degree first."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        object.__setattr__(self, "coeffs", _strip([int(c) for c in coeffs]))

    # -- basic structure ------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        if self.is_zero:
            return 0
        return self.coeffs[-1]

    def __call__(self, value):
        acc = value - value if not isinstance(value, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        return math.gcd(*[abs(c) for c in self.coeffs]) if self.coeffs else 0

    def primitive(self) -> "IntPolynomial":
        """Divide by content and normalise the leading coefficient positive."""
        if self.is_zero:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def reciprocal(self) -> "IntPolynomial":
        """x^deg * p(1/x)."""
        return IntPolynomial(list(reversed(self.coeffs)))

    def shift_down(self) -> tuple[int, "IntPolynomial"]:
        """Split off the x^v factor: returns (v, p/x^v)."""
        v = 0
        c = list(self.coeffs)
        while c and c[0] == 0:
            c.pop(0)
            v += 1
        return v, IntPolynomial(c)

    # -- arithmetic ------------------------------------------------------
    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPolynomial([u + v for u, v in zip(a, b)])

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}*x^{i}" if i else f"{c}")
        return " + ".join(parts)

    # -- sympy bridge ------------------------------------------------------
    def to_sympy(self, sym=_x) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coeffs)) or [0], sym, domain="ZZ")

    @classmethod
    def from_sympy(cls, poly) -> "IntPolynomial":
        p = sympy.Poly(poly, _x) if not isinstance(poly, sympy.Poly) else poly
        p = p.as_poly(p.gens[0])
        coeffs = [sympy.Rational(c) for c in p.all_coeffs()]
        den = math.lcm(*[int(c.q) for c in coeffs]) if coeffs else 1
        return cls([int(c * den) for c in reversed(coeffs)])

    @classmethod
    def from_roots_companion(cls, *ints: int) -> "IntPolynomial":
        out = cls([1])
        for r in ints:
            out = out * cls([-r, 1])
        return out


X = IntPolynomial([0, 1])
ONE = IntPolynomial([1])


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Q, returned with integer coefficients."""
    g = sympy.gcd(p.to_sympy(), q.to_sympy())
    return IntPolynomial.from_sympy(g).primitive()


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.primitive()
    q, _ = sympy.div(p.to_sympy(), g.to_sympy())
    return IntPolynomial.from_sympy(q).primitive()


def factor_rational(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Irreducible factorisation over Q (primitive integer factors)."""
    _, factors = p.to_sympy().factor_list()
    return [(IntPolynomial.from_sympy(f).primitive(), int(m)) for f, m in factors]


@lru_cache(maxsize=4096)
def _factor_cached(coeffs: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = factor_rational(IntPolynomial(coeffs))
    return tuple((f.coeffs, m) for f, m in out)


def factor_cached(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    return [(IntPolynomial(c), m) for c, m in _factor_cached(p.coeffs)]


def resultant_y(p: IntPolynomial, other: sympy.Expr) -> IntPolynomial:
    """Res_x(p(x), other(x, y)) as an integer polynomial in y."""
    r = sympy.resultant(p.to_sympy(_x).as_expr(), other, _x)
    return IntPolynomial.from_sympy(sympy.Poly(sympy.expand(r), _y))


def pair_product_poly(p: IntPolynomial) -> IntPolynomial:
    """Polynomial whose roots are all products of ordered pairs of roots of p.

    Contains lambda * conj(lambda) = |lambda|^2 for every root lambda since
    integer polynomials are conjugation closed.
    """
    d = p.degree
    expr = sum(c * _y**i * _x ** (d - i) for i, c in enumerate(p.coeffs))
    return resultant_y(p, expr).primitive()


def power_poly(p: IntPolynomial, n: int) -> IntPolynomial:
    """Polynomial with roots {r^n : p(r) = 0}, n >= 1."""
    if n == 1:
        return p.primitive()
    return resultant_y(p, _y - _x**n).primitive()


def composed_product_poly(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Polynomial with roots {r*s : p(r) = 0, q(s) = 0}."""
    d = q.degree
    expr = sum(c * _y**i * _x ** (d - i) for i, c in enumerate(q.coeffs))
    return resultant_y(p, expr).primitive()


def inverse_poly(p: IntPolynomial) -> IntPolynomial:
    """Polynomial with roots {1/r}; requires p(0) != 0."""
    if not p.coeffs or p.coeffs[0] == 0:
        raise ValueError("polynomial has a zero root; not invertible")
    return p.reciprocal().primitive()


# -- Sturm chains -------------------------------------------------------


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Remainder of a by b over Q (lists lowest degree first)."""
    a = list(a)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _to_primitive_ints(c: list[Fraction]) -> list[int]:
    if not c:
        return []
    den = math.lcm(*[f.denominator for f in c])
    ints = [int(f * den) for f in c]
    g = math.gcd(*[abs(v) for v in ints])
    return [v // g for v in ints]


@lru_cache(maxsize=4096)
def sturm_chain(coeffs: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Sturm chain of the squarefree part, primitive integer rows."""
    p = squarefree_part(IntPolynomial(coeffs))
    chain = [list(p.coeffs), list(p.derivative().coeffs)]
    while chain[-1]:
        rem = _frac_rem(
            [Fraction(c) for c in chain[-2]], [Fraction(c) for c in chain[-1]]
        )
        if not rem:
            break
        chain.append(_to_primitive_ints([-f for f in rem]))
    return tuple(tuple(row) for row in chain)


def _sign_changes(values: list[int]) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def sturm_count(p: IntPolynomial, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi).

    Raises EndpointRoot when an endpoint is itself a root; callers perturb.
    """
    if lo >= hi:
        raise ValueError("need lo < hi")
    if p.is_zero:
        raise ValueError("zero polynomial")
    chain = sturm_chain(p.coeffs)
    at_lo, at_hi = [], []
    for row in chain:
        poly = IntPolynomial(row)
        vlo, vhi = poly(Fraction(lo)), poly(Fraction(hi))
        at_lo.append(-1 if vlo < 0 else (1 if vlo > 0 else 0))
        at_hi.append(-1 if vhi < 0 else (1 if vhi > 0 else 0))
    if at_lo[0] == 0 or at_hi[0] == 0:
        raise EndpointRoot(f"root at endpoint of ({lo}, {hi})")
    return _sign_changes(at_lo) - _sign_changes(at_hi)


def cauchy_root_bound(p: IntPolynomial) -> Fraction:
    """All complex roots have modulus < this bound."""
    if p.degree < 1:
        return Fraction(1)
    lead = abs(p.leading)
    return 1 + max(Fraction(abs(c), lead) for c in p.coeffs[:-1]) if p.degree else Fraction(1)


def _safe_endpoint(p: IntPolynomial, v: Fraction, step: Fraction) -> Fraction:
    while p(v) == 0:
        v += step
    return v


def isolate_real_roots(p: IntPolynomial) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for the distinct real roots, ascending.

    Endpoints are never roots of p.
    """
    p = squarefree_part(p)
    if p.degree < 1:
        return []
    bound = cauchy_root_bound(p)
    lo = _safe_endpoint(p, -bound, Fraction(-1, 7))
    hi = _safe_endpoint(p, bound, Fraction(1, 7))
    total = sturm_count(p, lo, hi)
    out: list[tuple[Fraction, Fraction]] = []

    def recurse(a: Fraction, b: Fraction, count: int) -> None:
        if count == 0:
            return
        if count == 1:
            out.append((a, b))
            return
        mid = _safe_endpoint(p, (a + b) / 2, (b - a) / 257)
        left = sturm_count(p, a, mid)
        recurse(a, mid, left)
        recurse(mid, b, count - left)

    recurse(lo, hi, total)
    out.sort(key=lambda iv: iv[0])
    return out
