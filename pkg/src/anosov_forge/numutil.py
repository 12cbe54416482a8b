"""Validated numeric helpers: root disks, interval logs, rational radicals.

Everything here returns rational (Fraction) bounds that provably contain the
true value; mpmath supplies fast approximations, the certification is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

from .intpoly import IntPolynomial


def _raw_mpf_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    if man == 0 and exp == 0:
        return Fraction(0)
    m = -man if sign else man
    if exp >= 0:
        return Fraction(m * (1 << exp))
    return Fraction(m, 1 << (-exp))


def mpf_to_fraction(v) -> Fraction:
    """Exact conversion of an mpmath binary float."""
    return _raw_mpf_to_fraction(v._mpf_)


def sqrt_bounds(v: Fraction) -> tuple[Fraction, Fraction]:
    """Rational lo <= sqrt(v) <= hi, reasonably tight."""
    if v < 0:
        raise ValueError("negative radicand")
    if v == 0:
        return Fraction(0), Fraction(0)
    # integer sqrt of scaled value gives directed bounds
    scale = 1 << 128
    n = (v.numerator * scale * scale) // v.denominator
    r = math.isqrt(n)
    lo = Fraction(r, scale)
    hi = Fraction(r + 1, scale)
    return lo, hi


def nth_root_upper(v: Fraction, n: int) -> Fraction:
    """Rational u with u >= v^(1/n), v >= 0."""
    if v == 0:
        return Fraction(0)
    with mpmath.workprec(64):
        approx = mpmath.root(
            mpmath.mpf(v.numerator) / mpmath.mpf(v.denominator), n
        )
    guess = mpf_to_fraction(approx) * Fraction((1 << 32) + 1, 1 << 32)
    if guess <= 0:
        guess = Fraction(1)
    while guess**n < v:
        guess *= Fraction((1 << 20) + 1, 1 << 20)
    return guess


def log_interval(lo: Fraction, hi: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Certified enclosure of [log lo, log hi] for 0 < lo <= hi."""
    if lo <= 0:
        raise ValueError("log of non-positive interval")
    prec = max(
        bits + 16,
        lo.numerator.bit_length() + lo.denominator.bit_length() + 16,
        hi.numerator.bit_length() + hi.denominator.bit_length() + 16,
    )
    iv = mpmath.iv
    old = iv.prec
    try:
        iv.prec = prec
        a = iv.mpf(lo.numerator) / iv.mpf(lo.denominator)
        b = iv.mpf(hi.numerator) / iv.mpf(hi.denominator)
        la = iv.log(a)
        lb = iv.log(b)
        lo_mpf, _ = la._mpi_
        _, hi_mpf = lb._mpi_
        return _raw_mpf_to_fraction(lo_mpf), _raw_mpf_to_fraction(hi_mpf)
    finally:
        iv.prec = old


@lru_cache(maxsize=1024)
def certified_root_disks(
    coeffs: tuple[int, ...], bits: int
) -> tuple[tuple[Fraction, Fraction, Fraction], ...]:
    """Pairwise disjoint disks (re, im, radius), one around each root.

    The polynomial must be squarefree.  Each disk provably contains exactly
    one root; radii are at most 2^-bits.  Deterministic for fixed inputs.
    """
    p = IntPolynomial(coeffs)
    d = p.degree
    if d < 1:
        return ()
    lc = abs(p.leading)
    prec = max(64, 4 * bits)
    target = Fraction(1, 1 << bits)
    while True:
        with mpmath.workprec(prec):
            roots = mpmath.polyroots(
                [mpmath.mpf(c) for c in reversed(p.coeffs)],
                maxsteps=200,
                extraprec=prec,
            )
        disks = []
        for z in roots:
            re = mpf_to_fraction(z.real)
            im = mpf_to_fraction(z.imag)
            # |f(z)| >= (min distance to a root)^d * |lc|, so the nearest
            # root lies within (|f(z)|/|lc|)^(1/d) of z
            fre, fim = _eval_complex(p, re, im)
            mag2 = Fraction(fre * fre + fim * fim, lc * lc)
            radius = nth_root_upper(mag2, 2 * d)
            disks.append((re, im, radius))
        ok = all(r <= target for _, _, r in disks) and _pairwise_disjoint(disks)
        if ok:
            disks.sort(key=lambda t: (t[0], t[1]))
            return tuple(disks)
        prec *= 2
        if prec > 1 << 22:
            raise RuntimeError("root refinement failed to converge")


def _eval_complex(p: IntPolynomial, re: Fraction, im: Fraction):
    are, aim = Fraction(0), Fraction(0)
    for c in reversed(p.coeffs):
        are, aim = are * re - aim * im + c, are * im + aim * re
    return are, aim


def _pairwise_disjoint(disks) -> bool:
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            dx = disks[i][0] - disks[j][0]
            dy = disks[i][1] - disks[j][1]
            rr = disks[i][2] + disks[j][2]
            if dx * dx + dy * dy <= rr * rr:
                return False
    return True


def modulus_squared_bounds(
    re: Fraction, im: Fraction, radius: Fraction
) -> tuple[Fraction, Fraction]:
    """Enclosure of |z|^2 over the disk around (re, im)."""
    c2 = re * re + im * im
    c_lo, c_hi = sqrt_bounds(c2)
    lo = max(Fraction(0), c_lo - radius)
    hi = c_hi + radius
    return lo * lo, hi * hi
