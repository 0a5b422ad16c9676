"""Functional decomposition of polynomials over Q.

Provides compositional division on both sides, decomposition at a
prescribed degree split, enumeration of all two-factor splits, complete
chains of indecomposables, and compositional roots.

Inner factors are normalized monic with zero constant term; this pins
down the linear ambiguity of decomposition theory, and at a given degree
split the normalized inner factor is unique in characteristic zero.
Leading-coefficient equations lambda^k = c are solved over Q only (zero,
one, or two rational roots), so every "absent" answer means "absent over
Q".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intfactor import divisors
from .numutil import integer_nth_root, rational_nth_roots, rational_roots
from .poly import RatPoly, compose, iterate
from .scalars import as_fraction

__all__ = [
    "DecompPair", "DecompChain", "ChainCapExceeded",
    "right_divide", "left_divide", "decompose_at", "bidecompositions",
    "complete_decompositions", "compositional_root", "is_indecomposable",
]


@dataclass(frozen=True)
class DecompPair:
    """A verified two-factor split: compose(outer, inner) equals the target."""
    outer: RatPoly
    inner: RatPoly


@dataclass(frozen=True)
class DecompChain:
    """An ordered chain of indecomposable factors, composing left-to-right."""
    factors: tuple[RatPoly, ...]

    def compose_all(self) -> RatPoly:
        result = self.factors[0]
        for f in self.factors[1:]:
            result = compose(result, f)
        return result


class ChainCapExceeded(RuntimeError):
    """More complete chains than the cap allows; carries the partial list."""

    def __init__(self, cap: int, partial: list[DecompChain]):
        super().__init__(f"more than {cap} complete decomposition chains")
        self.cap = cap
        self.partial = partial


def right_divide(h: RatPoly, b: RatPoly) -> RatPoly | None:
    """The unique a with a o b = h, or None.

    Base-b expansion: repeatedly divide with remainder by b; a exists iff
    every digit is a constant, and then the digits are a's coefficients.
    """
    if b.is_constant():
        raise ValueError("right division by a constant polynomial")
    digits = []
    cur = h
    while not cur.is_zero():
        cur, rem = cur.divmod(b)
        if not rem.is_constant():
            return None
        digits.append(rem.coeff(0))
    return RatPoly(digits)


def left_divide(h: RatPoly, a: RatPoly) -> list[RatPoly]:
    """All b with a o b = h, over Q.

    The leading coefficient of b solves lc(a) * lambda^(deg a) = lc(h)
    over Q; the remaining coefficients follow one at a time from the top
    (the correction at step j only disturbs lower coefficients, so the
    system is triangular), and the result is verified exactly.
    """
    da = a.degree
    if da < 1:
        raise ValueError("left division requires deg a >= 1")
    dh = h.degree
    if dh < 1:
        raise ValueError("left division requires a nonconstant target")
    if dh % da != 0:
        raise ValueError(f"deg a = {da} does not divide deg h = {dh}")
    e = dh // da
    lc_a = as_fraction(a.leading_coeff())
    results = []
    for lam in rational_nth_roots(as_fraction(h.leading_coeff()) / lc_a, da):
        b_coeffs = [Fraction(0)] * e + [lam]
        slope = da * lc_a * lam ** (da - 1)
        for j in range(1, e + 1):
            current = compose(a, RatPoly(b_coeffs))
            delta = as_fraction(h.coeff(dh - j)) - as_fraction(current.coeff(dh - j))
            b_coeffs[e - j] += delta / slope
        b = RatPoly(b_coeffs)
        if compose(a, b) == h:
            results.append(b)
    return results


def decompose_at(h: RatPoly, m: int) -> DecompPair | None:
    """The normalized split h = outer o inner with deg inner = m, if any.

    The inner factor is monic with zero constant term; its coefficients
    are matched top-down against the leading block of h (only the top
    power of the outer polynomial reaches those degrees), and the split
    is confirmed by right division.
    """
    n = h.degree
    if n < 2:
        raise ValueError("decomposition requires deg h >= 2")
    if m <= 1 or m >= n or n % m != 0:
        raise ValueError(f"split degree {m} must be a proper divisor of {n}")
    r = n // m
    lc = as_fraction(h.leading_coeff())
    b_coeffs = [Fraction(0)] * m + [Fraction(1)]
    for j in range(1, m):
        current = RatPoly(b_coeffs) ** r * lc
        delta = as_fraction(h.coeff(n - j)) - as_fraction(current.coeff(n - j))
        b_coeffs[m - j] += delta / (r * lc)
    inner = RatPoly(b_coeffs)
    outer = right_divide(h, inner)
    if outer is None:
        return None
    return DecompPair(outer, inner)


def bidecompositions(h: RatPoly) -> list[DecompPair]:
    """All normalized two-factor splits of h over every nontrivial divisor."""
    n = h.degree
    if n < 2:
        raise ValueError("decomposition requires deg h >= 2")
    pairs = []
    for m in divisors(n):
        if 1 < m < n:
            pair = decompose_at(h, m)
            if pair is not None:
                pairs.append(pair)
    return pairs


def is_indecomposable(h: RatPoly) -> bool:
    """True when h (deg >= 2) admits no nontrivial split over Q."""
    n = h.degree
    if n < 2:
        raise ValueError("indecomposability is defined for deg >= 2")
    return not bidecompositions(h)


def complete_decompositions(h: RatPoly, cap: int = 64) -> list[DecompChain]:
    """All maximal chains of indecomposables composing to h (normalized).

    Chains are built by repeatedly peeling a normalized indecomposable
    inner factor.  Exceeding the cap raises ChainCapExceeded carrying the
    chains found so far, rather than silently truncating.
    """
    if cap < 1:
        raise ValueError("cap must be positive")

    def expand(g: RatPoly) -> list[tuple[RatPoly, ...]]:
        splits = bidecompositions(g)
        if not splits:
            return [(g,)]
        chains: list[tuple[RatPoly, ...]] = []
        for pair in splits:
            if not is_indecomposable(pair.inner):
                continue
            for prefix in expand(pair.outer):
                chains.append(prefix + (pair.inner,))
        seen = []
        for c in chains:
            if c not in seen:
                seen.append(c)
        return seen

    chains = [DecompChain(c) for c in expand(h)]
    if len(chains) > cap:
        raise ChainCapExceeded(cap, chains[:cap])
    return chains


def compositional_root(h: RatPoly, n: int) -> RatPoly | None:
    """A rational g with the n-th compositional power of g equal to h.

    Any such g shares h's normalized inner factor b at the degree-d split
    (d = deg h ** (1/n)), so g = p*b + q for rationals p, q.  The leading
    coefficient pins p up to sign; q is then a rational root of the exact
    one-variable constraint obtained by tracking the orbit of 0.
    """
    if n < 1:
        raise ValueError("root index must be positive")
    if n == 1:
        return h
    dh = h.degree
    if dh < 2:
        raise ValueError("compositional roots require deg h >= 2")
    d = integer_nth_root(dh, n)
    if d < 2 or d ** n != dh:
        raise ValueError(f"deg h = {dh} is not a perfect {n}-th power of d >= 2")
    pair = decompose_at(h, d) if d < dh else DecompPair(RatPoly.x(), h)
    if pair is None:
        return None
    b = pair.inner
    exponent = (d ** n - 1) // (d - 1)
    h0 = as_fraction(h.coeff(0))
    for p in rational_nth_roots(as_fraction(h.leading_coeff()), exponent):
        # P(q) = g^{(n-1)}(q) in the unknown q, where g = p*b + q and g(0) = q
        q_var = RatPoly.x()
        orbit_val = q_var
        for _ in range(n - 1):
            orbit_val = compose(b, orbit_val) * p + q_var
        constraint = orbit_val - RatPoly.constant(h0)
        for q in rational_roots(constraint):
            g = b * p + RatPoly.constant(q)
            if iterate(g, n) == h:
                return g
    return None
