"""Refinable linear combinations of logarithms of algebraic numbers.

Values of Lyapunov functionals at lattice points are rational combinations
of log-moduli, i.e. expressions  c0 + sum c_j * log(alpha_j)  with rational
c_j and positive real algebraic alpha_j.  Signs are decided by interval
refinement; exact vanishing is certified algebraically (a product of powers
equal to one).  A nonzero value with c0 != 0 can never vanish (log of an
algebraic number is transcendental unless the argument is 1), so the
refinement loop always terminates on true nonzero inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionExhausted
from .numutil import log_interval
from .realalg import RealAlgebraic


@dataclass(frozen=True)
class LogLinearValue:
    const: Fraction
    terms: tuple[tuple[Fraction, RealAlgebraic], ...]

    @classmethod
    def build(
        cls,
        const=0,
        terms: list[tuple[Fraction, RealAlgebraic]] | None = None,
    ) -> "LogLinearValue":
        merged: list[tuple[Fraction, RealAlgebraic]] = []
        for coeff, alpha in terms or []:
            coeff = Fraction(coeff)
            if coeff == 0 or alpha == 1:
                continue
            if alpha.is_rational and alpha.as_rational() <= 0:
                raise ValueError("log of non-positive value")
            for i, (c0, a0) in enumerate(merged):
                if a0 == alpha:
                    merged[i] = (c0 + coeff, a0)
                    break
            else:
                merged.append((coeff, alpha))
        merged = [(c, a) for c, a in merged if c != 0]
        return cls(Fraction(const), tuple(merged))

    @classmethod
    def from_rational(cls, value) -> "LogLinearValue":
        return cls.build(const=Fraction(value))

    @classmethod
    def half_log(cls, alpha: RealAlgebraic, scale=1) -> "LogLinearValue":
        """log|lambda| = (scale/2) * log(|lambda|^2)."""
        return cls.build(terms=[(Fraction(scale, 2), alpha)])

    # -- algebra -------------------------------------------------------------
    def __add__(self, other: "LogLinearValue") -> "LogLinearValue":
        return LogLinearValue.build(
            self.const + other.const, list(self.terms) + list(other.terms)
        )

    def __neg__(self) -> "LogLinearValue":
        return self.scale(-1)

    def __sub__(self, other: "LogLinearValue") -> "LogLinearValue":
        return self + (-other)

    def scale(self, c) -> "LogLinearValue":
        c = Fraction(c)
        return LogLinearValue.build(
            self.const * c, [(coeff * c, a) for coeff, a in self.terms]
        )

    # -- evaluation ------------------------------------------------------------
    def interval(self, bits: int) -> tuple[Fraction, Fraction]:
        lo = hi = self.const
        for coeff, alpha in self.terms:
            alo, ahi = alpha.interval(bits)
            while alo <= 0:
                alo, ahi = alpha.interval(bits * 2)
                bits *= 2
            la, lb = log_interval(alo, ahi, bits)
            if coeff > 0:
                lo += coeff * la
                hi += coeff * lb
            else:
                lo += coeff * lb
                hi += coeff * la
        return lo, hi

    def is_exactly_zero(self) -> bool:
        """Certified vanishing test (no precision involved)."""
        if not self.terms:
            return self.const == 0
        if self.const != 0:
            # const + sum c_j log a_j = 0 would make exp(-const) algebraic
            return False
        den = math.lcm(*[c.denominator for c, _ in self.terms])
        product = RealAlgebraic.from_rational(1)
        for coeff, alpha in self.terms:
            product = product.mul(alpha.pow(int(coeff * den)))
        return product == 1

    def sign(self, cap_bits: int = 4096) -> int:
        """Exact sign: -1, 0, +1.  Raises PrecisionExhausted past cap_bits."""
        if not self.terms:
            return (self.const > 0) - (self.const < 0)
        # intervals first: the exact vanishing test builds power/product
        # polynomials and is far more expensive than a few refinements
        bits = 32
        checked_zero = False
        while bits <= cap_bits:
            lo, hi = self.interval(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            if not checked_zero and bits >= 256:
                if self.is_exactly_zero():
                    return 0
                checked_zero = True
            bits *= 2
        raise PrecisionExhausted("sign of log-linear value unresolved", cap_bits)

    def midpoint(self, bits: int = 64) -> Fraction:
        lo, hi = self.interval(bits)
        return (lo + hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint(64))
