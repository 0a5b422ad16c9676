"""Exact root extraction over Z and Q."""

from __future__ import annotations

import math
from fractions import Fraction

from .intfactor import divisors
from .poly import RatPoly
from .scalars import as_fraction

__all__ = ["integer_nth_root", "rational_nth_roots", "rational_roots"]


def integer_nth_root(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0 or k < 1:
        raise ValueError("integer_nth_root requires n >= 0, k >= 1")
    if n in (0, 1) or k == 1:
        return n
    x = 1 << (-(-n.bit_length() // k))  # upper bound: 2^ceil(bits/k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _exact_root(n: int, k: int) -> int | None:
    r = integer_nth_root(n, k)
    return r if r ** k == n else None


def rational_nth_roots(c: Fraction, k: int) -> list[Fraction]:
    """All rational solutions of y^k = c (zero, one, or two of them)."""
    c = Fraction(c)
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return [c]
    if c == 0:
        return [Fraction(0)]
    if c < 0:
        if k % 2 == 0:
            return []
        num = _exact_root(-c.numerator, k)
        den = _exact_root(c.denominator, k)
        return [] if num is None or den is None else [Fraction(-num, den)]
    num = _exact_root(c.numerator, k)
    den = _exact_root(c.denominator, k)
    if num is None or den is None:
        return []
    root = Fraction(num, den)
    return [root, -root] if k % 2 == 0 else [root]


def rational_roots(p: RatPoly) -> list[Fraction]:
    """All rational roots of a nonzero rational polynomial, without multiplicity.

    Classical method: clear denominators, strip powers of X, then test the
    candidates +-(divisor of constant)/(divisor of leading coefficient).
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    coeffs = [as_fraction(c) for c in p.coeffs]
    roots: list[Fraction] = []
    lo = 0
    while coeffs[lo] == 0:
        lo += 1
    if lo > 0:
        roots.append(Fraction(0))
        coeffs = coeffs[lo:]
    if len(coeffs) <= 1:
        return roots
    denom_lcm = 1
    for c in coeffs:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in coeffs]
    content = 0
    for v in ints:
        content = math.gcd(content, v)
    ints = [v // content for v in ints]
    a0, an = ints[0], ints[-1]
    for dn in divisors(a0):
        for dd in divisors(an):
            if math.gcd(dn, dd) != 1:
                continue
            for cand in (Fraction(dn, dd), Fraction(-dn, dd)):
                if cand in roots:
                    continue
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    return sorted(roots)
