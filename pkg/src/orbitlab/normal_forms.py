"""Power and Chebyshev normal forms under linear equivalence and conjugacy.

Detects, exactly over Q, whether a polynomial h can be written as
l1 o X^n o l2 or l1 o T_n o l2 (linear equivalence), whether it is
linearly *conjugate* to c*X^n or to +-T_n, and lifts such facts from an
iterate back to the polynomial itself.  All detection is over Q: the
power-conjugacy test uses the shape f = gamma + c*(X - gamma)^n, which
is the precise rational condition and avoids extracting (n-1)-th roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chebdickson import chebyshev_t
from .numutil import rational_nth_roots
from .poly import LinearMap, RatPoly, compose, conjugate, iterate
from .scalars import as_fraction

__all__ = [
    "MonicCentered", "LinearEquivalence",
    "PowerLike", "ChebyshevLike", "General", "ChebSquareExceptional",
    "monic_centered", "linear_equivalence", "cheb_equivalences",
    "conjugacy_normal_form", "iterate_root_form",
]


@dataclass(frozen=True)
class MonicCentered:
    """Centered (and monic when possible) conjugate with its witness."""
    poly: RatPoly
    witness: LinearMap
    monic: bool


@dataclass(frozen=True)
class LinearEquivalence:
    """h = ell1 o (X^n or T_n) o ell2, exactly."""
    form: str  # "power" | "cheb"
    n: int
    ell1: LinearMap
    ell2: LinearMap

    def model(self) -> RatPoly:
        return RatPoly.monomial(self.n) if self.form == "power" else chebyshev_t(self.n)

    def recompose(self) -> RatPoly:
        return self.ell1(compose(self.model(), self.ell2.to_poly()))


@dataclass(frozen=True)
class PowerLike:
    """conjugate(f, witness) = alpha * X^n exactly."""
    alpha: Fraction
    witness: LinearMap
    n: int


@dataclass(frozen=True)
class ChebyshevLike:
    """conjugate(f, witness) = epsilon * T_n exactly."""
    epsilon: int
    witness: LinearMap
    n: int


@dataclass(frozen=True)
class General:
    """Neither power-like nor Chebyshev-like over Q."""
    n: int


@dataclass(frozen=True)
class ChebSquareExceptional:
    """Second iterate of a quadratic is Chebyshev-equivalent, but the
    degree-2/exponent-2 case admits counterexamples, so no conclusion
    about f itself is drawn."""
    n: int


def monic_centered(f: RatPoly) -> MonicCentered:
    """Conjugate f so the coefficient at degree n-1 vanishes; rescale to
    monic when the leading coefficient has a rational (n-1)-th root."""
    n = f.degree
    if n < 2:
        raise ValueError("monic_centered requires deg f >= 2")
    a_n = as_fraction(f.leading_coeff())
    beta = as_fraction(f.coeff(n - 1)) / (n * a_n)
    ell = LinearMap(Fraction(1), beta)
    g = conjugate(f, ell)
    roots = rational_nth_roots(a_n, n - 1)
    if not roots:
        return MonicCentered(g, ell, monic=False)
    rho = roots[0]
    scale = LinearMap(rho, Fraction(0))
    return MonicCentered(conjugate(g, scale), scale.compose(ell), monic=True)


def _power_equivalence(h: RatPoly) -> LinearEquivalence | None:
    """h = ell1 o X^n o ell2 iff h' is c*(X - gamma)^(n-1), checked exactly."""
    n = h.degree
    deriv = h.derivative()
    lc_d = as_fraction(deriv.leading_coeff())
    gamma = -as_fraction(deriv.coeff(n - 2)) / (lc_d * (n - 1))
    shifted = RatPoly([-gamma, 1])
    if deriv != shifted ** (n - 1) * lc_d:
        return None
    value = as_fraction(h(gamma))
    c = as_fraction(h.leading_coeff())
    if h != shifted ** n * c + RatPoly.constant(value):
        return None
    eq = LinearEquivalence("power", n, LinearMap(c, value), LinearMap(1, -gamma))
    assert eq.recompose() == h
    return eq


def cheb_equivalences(h: RatPoly) -> list[LinearEquivalence]:
    """All (at most two) representations h = ell1 o T_n o ell2.

    With ell2 = a*X + b, the top three coefficients of h force
    b/a = h_{n-1}/(n h_n) and a^2 = n / (C(n,2) (b/a)^2 - h_{n-2}/h_n);
    the two sign choices of a are then verified exactly.
    """
    n = h.degree
    if n < 2:
        return []
    if n == 2:
        # underdetermined at n = 2; route through the power form, which
        # every quadratic admits, using X^2 = (X+2) o T_2
        eq = _power_equivalence(h)
        if eq is None:
            return []
        ell1 = eq.ell1.compose(LinearMap(1, 2))
        out = LinearEquivalence("cheb", 2, ell1, eq.ell2)
        assert out.recompose() == h
        return [out]
    h_n = as_fraction(h.leading_coeff())
    beta = as_fraction(h.coeff(n - 1)) / (n * h_n)
    denom = Fraction(math.comb(n, 2)) * beta ** 2 - as_fraction(h.coeff(n - 2)) / h_n
    if denom == 0:
        return []
    asq = Fraction(n) / denom
    results = []
    t_n = chebyshev_t(n)
    for a in rational_nth_roots(asq, 2):
        b = a * beta
        c = h_n / a ** n
        rest = h - compose(t_n, RatPoly([b, a])) * c
        if not rest.is_constant():
            continue
        eq = LinearEquivalence("cheb", n, LinearMap(c, rest.coeff(0)), LinearMap(a, b))
        assert eq.recompose() == h
        results.append(eq)
    return results


def linear_equivalence(h: RatPoly) -> LinearEquivalence | None:
    """Decide h = ell1 o X^n o ell2 or h = ell1 o T_n o ell2 over Q.

    The power form takes precedence at n = 2, where both always hold or
    fail together with the Chebyshev form shifted by a constant.
    """
    if h.degree < 2:
        raise ValueError("linear_equivalence requires deg h >= 2")
    power = _power_equivalence(h)
    if power is not None:
        return power
    cheb = cheb_equivalences(h)
    return cheb[0] if cheb else None


def conjugacy_normal_form(f: RatPoly):
    """Classify f as PowerLike, ChebyshevLike, or General, with witnesses.

    PowerLike iff f = gamma + c*(X - gamma)^n for rationals gamma, c; then
    conjugating by X - gamma gives c*X^n.  ChebyshevLike iff some linear
    equivalence h = ell1 o T_n o ell2 closes up into a conjugation, i.e.
    ell2 o ell1 = eps*X.
    """
    n = f.degree
    if n < 2:
        raise ValueError("conjugacy_normal_form requires deg f >= 2")
    a_n = as_fraction(f.leading_coeff())
    gamma = -as_fraction(f.coeff(n - 1)) / (n * a_n)
    shifted = RatPoly([-gamma, 1])
    if f == shifted ** n * a_n + RatPoly.constant(gamma):
        witness = LinearMap(1, -gamma)
        assert conjugate(f, witness) == RatPoly.monomial(n, a_n)
        return PowerLike(a_n, witness, n)
    if n == 2:
        # complete the square: conjugate to X^2 + m, Chebyshev iff m = -2
        centered = conjugate(f, LinearMap(1, -gamma))
        m = as_fraction(centered.coeff(0))
        if a_n * m == -2:
            witness = LinearMap(a_n, -a_n * gamma)
            assert conjugate(f, witness) == chebyshev_t(2)
            return ChebyshevLike(1, witness, n)
        return General(n)
    for eq in cheb_equivalences(f):
        closing = eq.ell2.compose(eq.ell1)
        if closing.b == 0 and as_fraction(closing.a) in (1, -1):
            eps = int(as_fraction(closing.a))
            witness = eq.ell2
            assert conjugate(f, witness) == chebyshev_t(n) * eps
            return ChebyshevLike(eps, witness, n)
    return General(n)


def iterate_root_form(f: RatPoly, n: int):
    """Lift a power/Chebyshev linear equivalence of the n-th iterate to f.

    If iterate(f, n) = ell o X^(r^n) o ell', then f itself is conjugate to
    alpha*X^r; if instead it is ell o T_(r^n) o ell' and {r, n} != {2},
    then f is conjugate to +-T_r.  In the exceptional case r = n = 2 a
    distinguished no-conclusion report is returned: quadratics exist whose
    square is Chebyshev-equivalent while they are not conjugate to +-T_2.
    """
    r = f.degree
    if r < 2:
        raise ValueError("iterate_root_form requires deg f >= 2")
    if n < 2:
        raise ValueError("iterate_root_form requires n >= 2")
    eq = linear_equivalence(iterate(f, n))
    if eq is None:
        return None
    if eq.form == "power":
        report = conjugacy_normal_form(f)
        if not isinstance(report, PowerLike):
            raise AssertionError(
                "iterate is power-equivalent but f resists the lift; "
                "this contradicts the lifting lemma")
        return report
    if r == 2 and n == 2:
        return ChebSquareExceptional(r)
    report = conjugacy_normal_form(f)
    if not isinstance(report, ChebyshevLike):
        raise AssertionError(
            "iterate is Chebyshev-equivalent but f resists the lift; "
            "this contradicts the lifting lemma")
    return report
