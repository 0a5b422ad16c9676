"""Shared oracles for the test suite.

The oracles are deliberately independent of the library's own
composition and recurrence code: sympy does the symbolic expansion, and
the Dickson closed form is the explicit binomial sum.
"""

from fractions import Fraction

import sympy

X = sympy.Symbol("X")


def to_sympy(p):
    """A library polynomial as a sympy expression."""
    return sum((sympy.Rational(c.numerator, c.denominator) * X ** i
                for i, c in enumerate(p.coeffs)), sympy.Integer(0))


def from_sympy(expr):
    """A sympy polynomial expression as a coefficient tuple."""
    poly = sympy.Poly(sympy.expand(expr), X)
    coeffs = list(reversed(poly.all_coeffs()))
    out = [Fraction(c.p, c.q) for c in map(sympy.Rational, coeffs)]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def sympy_compose(outer, inner):
    """Oracle for composition: substitute and expand with sympy."""
    return from_sympy(to_sympy(outer).subs(X, to_sympy(inner)))


def sympy_chebyshev_t(n):
    """Oracle for the monic Chebyshev family: T_n(x) = 2*C_n(x/2)."""
    return from_sympy(2 * sympy.chebyshevt(n, X / 2))


def dickson_closed_form(n, a):
    """Oracle: D_n(X, a) = sum_j n/(n-j) C(n-j, j) (-a)^j X^(n-2j)."""
    if n == 0:
        return (Fraction(2),)
    a = Fraction(a)
    coeffs = [Fraction(0)] * (n + 1)
    for j in range(n // 2 + 1):
        coeffs[n - 2 * j] += (Fraction(n, n - j) * sympy.binomial(n - j, j)
                              * (-a) ** j)
    return tuple(Fraction(c) for c in coeffs)
