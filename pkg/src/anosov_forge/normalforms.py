"""Subresonance relations and the dimension of the polynomial group SR_chi.

For a contracting element with distinct negative Lyapunov exponents
chi_1 > ... > chi_l (multiplicities m_1..m_l), a subresonance index (i, s)
records that degree-s polynomial terms may map into the i-th block:
chi_i <= sum_j s_j chi_j.  The default convention sums over all j (so the
identity linear term s = e_i is always admissible); the variant excluding
j = i is available behind a flag.  Exponents may be exact rationals or
refinable log-linear values; boundary cases that exact arithmetic cannot
settle raise UndecidedBoundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT_CONFIG, ToolkitConfig
from .errors import InputError, PrecisionExhausted, UndecidedBoundary
from .logval import LogLinearValue

Exponent = "Fraction | LogLinearValue"


def _as_value(x) -> LogLinearValue:
    if isinstance(x, LogLinearValue):
        return x
    return LogLinearValue.from_rational(Fraction(x))


def _sign(value: LogLinearValue, cap: int) -> int:
    try:
        return value.sign(cap)
    except PrecisionExhausted as exc:
        raise UndecidedBoundary(exc.bits) from exc


@dataclass(frozen=True)
class ContractionSpectrum:
    """Strictly decreasing negative exponents with multiplicities."""

    exponents: tuple
    multiplicities: tuple[int, ...]

    @classmethod
    def build(
        cls, exponents, multiplicities, config: ToolkitConfig = DEFAULT_CONFIG
    ) -> "ContractionSpectrum":
        vals = tuple(_as_value(x) for x in exponents)
        mults = tuple(int(m) for m in multiplicities)
        if not vals or len(vals) != len(mults):
            raise InputError("exponents and multiplicities must align")
        if any(m < 1 for m in mults):
            raise InputError("multiplicities must be positive")
        cap = config.precision_cap_bits
        for v in vals:
            if _sign(v, cap) >= 0:
                raise InputError("exponents must be strictly negative")
        for a, b in zip(vals, vals[1:]):
            if _sign(a - b, cap) <= 0:
                raise InputError("exponents must be strictly decreasing")
        return cls(vals, mults)

    @property
    def blocks(self) -> int:
        return len(self.exponents)


@dataclass(frozen=True)
class SubresonanceIndex:
    """Target block i and monomial degrees s with chi_i <= sum s_j chi_j."""

    target: int
    degrees: tuple[int, ...]


def _degree_cap(
    spec: ContractionSpectrum, i: int, j: int, config: ToolkitConfig
) -> int:
    """Largest s_j possibly admissible for target i: s_j <= chi_i / chi_j
    (both negative).  Returns a certified integer upper bound."""
    cap = config.precision_cap_bits
    chi_i, chi_j = spec.exponents[i], spec.exponents[j]
    bits = 64
    while bits <= cap:
        ilo, ihi = chi_i.interval(bits)
        jlo, jhi = chi_j.interval(bits)
        if ihi < 0 and jhi < 0:
            bound = ilo / jhi  # upper bound of |chi_i| / |chi_j|
            n = math.floor(bound)
            # settle whether n+1 might still be admissible on the boundary
            if n >= 0:
                return max(n, 0) + 1  # +1 slack; exact test decides below
        bits *= 2
    raise UndecidedBoundary(cap)


def subresonance_indices(
    spec: ContractionSpectrum,
    exclude_target: bool = False,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> list[SubresonanceIndex]:
    """Complete enumeration of subresonance indices (finite since all
    exponents are strictly negative)."""
    l = spec.blocks
    cap = config.precision_cap_bits
    out: list[SubresonanceIndex] = []
    for i in range(l):
        caps = [
            0 if (exclude_target and j == i) else _degree_cap(spec, i, j, config)
            for j in range(l)
        ]

        def admissible(s: tuple[int, ...]) -> bool:
            total = LogLinearValue.from_rational(0)
            for sj, chi in zip(s, spec.exponents):
                if sj:
                    total = total + chi.scale(sj)
            diff = total - spec.exponents[i]
            # chi_i <= sum s_j chi_j  <=>  diff >= 0
            if diff.is_exactly_zero():
                return True
            return _sign(diff, cap) > 0

        def rec(j: int, s: list[int]):
            if j == l:
                if sum(s) >= 1 and admissible(tuple(s)):
                    out.append(SubresonanceIndex(i, tuple(s)))
                return
            for v in range(caps[j] + 1):
                s.append(v)
                # pruning: exponents are negative, so once the partial sum
                # is already below chi_i no extension can recover
                rec(j + 1, s)
                s.pop()

        rec(0, [])
    return out


def _multichoose(n: int, r: int) -> int:
    return math.comb(n + r - 1, r)


def sr_group_dimension(
    spec: ContractionSpectrum,
    exclude_target: bool = False,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> int:
    """Dimension of the space of subresonance polynomial maps:
    sum over indices (i, s) of m_i * prod_j multichoose(m_j, s_j)."""
    total = 0
    for idx in subresonance_indices(spec, exclude_target, config):
        count = spec.multiplicities[idx.target]
        for m, s in zip(spec.multiplicities, idx.degrees):
            count *= _multichoose(m, s)
        total += count
    return total
