"""Standard pairs with Laurent witnesses, and best-effort pair classification.

The five standard pair shapes (with m, n positive, r >= 0 coprime to m,
p a nonzero rational polynomial):

    1. (X^m, X^r p(X)^m)
    2. (X^2, (X^2+1) p(X)^2)
    3. (T_m, T_n)    with gcd(m, n) = 1
    4. (T_m, -T_n)   with gcd(m, n) > 1
    5. ((X^2-1)^3, 3X^4-4X^3)

Each pair (F1, G1) comes with explicit Laurent polynomials phi, psi
satisfying F1 o phi = G1 o psi.  Kinds 1-3 verify over Q; kind 4 needs a
primitive 2mn-th root of unity and verifies in Q[t]/(t^(mn)+1); kind 5
needs sqrt(3) and verifies in Q[t]/(t^2-3).  Verifying in the full
quotient suffices: the identity then holds at every root of the modulus.

``classify_pair`` is a semi-decision procedure: a returned witness
recomposes exactly, while ``None`` only means "not found within caps".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chebdickson import chebyshev_t
from .decomp import decompose_at, left_divide
from .intfactor import divisors
from .normal_forms import cheb_equivalences, linear_equivalence
from .numutil import rational_nth_roots, rational_roots
from .poly import (LaurentPoly, LinearMap, RatPoly, compose, laurent_compose,
                   lift_poly)
from .scalars import QuotientRing, as_fraction, join_rings

__all__ = [
    "StandardPairParams", "BTWitness", "ClassifyCapExceeded", "ClassifyCaps",
    "standard_pair", "siegel_witness", "verify_composition_identity",
    "classify_pair", "poly_nth_root",
]


@dataclass(frozen=True)
class StandardPairParams:
    kind: int
    m: int = 1
    n: int = 1
    r: int = 0
    p: RatPoly | None = None

    def __post_init__(self):
        k = self.kind
        if k not in (1, 2, 3, 4, 5):
            raise ValueError(f"standard pair kind must be 1..5, got {k}")
        if k == 1:
            if self.m < 1 or self.r < 0 or math.gcd(self.r, self.m) != 1:
                raise ValueError("kind 1 requires m >= 1 and r >= 0 coprime to m")
            if self.p is None or self.p.is_zero():
                raise ValueError("kind 1 requires a nonzero polynomial p")
        elif k == 2:
            if self.p is None or self.p.is_zero():
                raise ValueError("kind 2 requires a nonzero polynomial p")
        elif k == 3:
            if self.m < 1 or self.n < 1 or math.gcd(self.m, self.n) != 1:
                raise ValueError("kind 3 requires gcd(m, n) = 1")
        elif k == 4:
            if self.m < 1 or self.n < 1 or math.gcd(self.m, self.n) <= 1:
                raise ValueError("kind 4 requires gcd(m, n) > 1")


def standard_pair(params: StandardPairParams) -> tuple[RatPoly, RatPoly]:
    """The pair (F1, G1) for the given parameters."""
    k = params.kind
    if k == 1:
        f1 = RatPoly.monomial(params.m)
        g1 = RatPoly.monomial(params.r) * params.p ** params.m
        return f1, g1
    if k == 2:
        return RatPoly.monomial(2), RatPoly([1, 0, 1]) * params.p ** 2
    if k == 3:
        return chebyshev_t(params.m), chebyshev_t(params.n)
    if k == 4:
        return chebyshev_t(params.m), -chebyshev_t(params.n)
    return RatPoly([-1, 0, 1]) ** 3, RatPoly([0, 0, 0, -4, 3])


def siegel_witness(params: StandardPairParams):
    """Laurent witnesses (phi, psi, ring) with F1 o phi = G1 o psi.

    ring is None when the identity lives over Q (kinds 1-3), the quotient
    ring Q[t]/(t^(mn)+1) for kind 4 (t plays the root of unity), and
    Q[t]/(t^2-3) for kind 5 (t plays sqrt(3)).
    """
    k = params.kind
    if k == 1:
        phi = LaurentPoly.from_poly(
            RatPoly.monomial(params.r) * compose(params.p, RatPoly.monomial(params.m)))
        psi = LaurentPoly.from_poly(RatPoly.monomial(params.m))
        return phi, psi, None
    if k == 2:
        plus = LaurentPoly({1: Fraction(1), -1: Fraction(1, 4)})
        minus = LaurentPoly({1: Fraction(1), -1: Fraction(-1, 4)})
        phi = plus * laurent_compose(params.p, minus)
        return phi, minus, None
    if k == 3:
        return (LaurentPoly.from_poly(chebyshev_t(params.n)),
                LaurentPoly.from_poly(chebyshev_t(params.m)), None)
    if k == 4:
        mn = params.m * params.n
        ring = QuotientRing([1] + [0] * (mn - 1) + [1])  # t^(mn) + 1
        t_m = ring.generator() ** params.m
        phi = LaurentPoly({params.n: ring.one(), -params.n: ring.one()})
        psi = LaurentPoly({params.m: t_m, -params.m: t_m.inverse()})
        return phi, psi, ring
    ring = QuotientRing([-3, 0, 1])  # t^2 - 3
    inv_sqrt3 = ring.generator().inverse()  # = t/3
    phi = LaurentPoly({2: ring.one(), 1: ring.embed(2), -1: ring.one(),
                       -2: ring.embed(Fraction(-1, 4))}) * inv_sqrt3
    base = LaurentPoly({1: Fraction(1), 0: Fraction(1), -1: Fraction(-1, 2)})
    psi = ((base ** 3) + 4) * Fraction(1, 3)
    return phi, psi.lift(ring), ring


def verify_composition_identity(F: RatPoly, phi: LaurentPoly,
                                G: RatPoly, psi: LaurentPoly) -> bool:
    """True iff F o phi = G o psi exactly (over the operands' common ring)."""
    ring = join_rings(join_rings(F.ring, phi.ring), join_rings(G.ring, psi.ring))
    lhs = laurent_compose(lift_poly(F, ring), phi.lift(ring) if ring else phi)
    rhs = laurent_compose(lift_poly(G, ring), psi.lift(ring) if ring else psi)
    return lhs == rhs


@dataclass(frozen=True)
class BTWitness:
    """F = E o F1 o mu and G = E o G1 o nu, all verified exactly."""
    E: RatPoly
    mu: LinearMap
    nu: LinearMap
    params: StandardPairParams
    F1: RatPoly
    G1: RatPoly
    swapped: bool = False  # True when (G1, F1) is the standard orientation

    def recompose(self) -> tuple[RatPoly, RatPoly]:
        f = compose(self.E, compose(self.F1, self.mu.to_poly()))
        g = compose(self.E, compose(self.G1, self.nu.to_poly()))
        return f, g


@dataclass(frozen=True)
class ClassifyCaps:
    max_split_attempts: int = 64


class ClassifyCapExceeded(RuntimeError):
    """Search stopped early; absence of a witness was not established."""


def poly_nth_root(w: RatPoly, m: int) -> RatPoly | None:
    """The rational polynomial v with v^m = w, or None (lc(v) > 0 for even m)."""
    if m < 1:
        raise ValueError("root index must be positive")
    if m == 1:
        return w
    if w.is_zero():
        return RatPoly.zero()
    dw = w.degree
    if dw % m != 0:
        return None
    e = dw // m
    lc_roots = rational_nth_roots(as_fraction(w.leading_coeff()), m)
    if not lc_roots:
        return None
    lam = lc_roots[0]
    coeffs = [Fraction(0)] * e + [lam]
    slope = m * lam ** (m - 1)
    for j in range(1, e + 1):
        cur = RatPoly(coeffs) ** m
        delta = as_fraction(w.coeff(dw - j)) - as_fraction(cur.coeff(dw - j))
        coeffs[e - j] += delta / slope
    v = RatPoly(coeffs)
    return v if v ** m == w else None


def _right_twists(target: RatPoly, model: RatPoly) -> list[LinearMap]:
    """All linear mu with model o mu = target (same degree required)."""
    d = model.degree
    if target.degree != d or d < 1:
        return []
    if d == 1:
        # model is a*X+b: mu = model^{-1} o target
        mu = LinearMap.from_poly(model).inverse().compose(LinearMap.from_poly(target))
        return [mu]
    out = []
    lc_m = as_fraction(model.leading_coeff())
    for a in rational_nth_roots(as_fraction(target.leading_coeff()) / lc_m, d):
        b = (as_fraction(target.coeff(d - 1)) / a ** (d - 1)
             - as_fraction(model.coeff(d - 1))) / (d * lc_m)
        mu = LinearMap(a, b)
        if compose(model, mu.to_poly()) == target:
            out.append(mu)
    return out


def _left_right_twists(target: RatPoly, model: RatPoly) -> list[tuple[LinearMap, LinearMap]]:
    """All (ell, mu) with ell o model o mu = target, for models whose
    centered quadratic data pins the scale (not X^d or T_n; those have
    dedicated solvers)."""
    d = model.degree
    if target.degree != d or d < 3:
        return []
    md = as_fraction(model.leading_coeff())
    m1 = as_fraction(model.coeff(d - 1)) / md
    m2 = as_fraction(model.coeff(d - 2)) / md
    pd = as_fraction(target.leading_coeff())
    b1 = as_fraction(target.coeff(d - 1)) / pd
    b2 = as_fraction(target.coeff(d - 2)) / pd
    half = Fraction(d - 1, 2 * d)
    denom = half * b1 ** 2 - b2
    numer = half * m1 ** 2 - m2
    if denom == 0:
        return []
    out = []
    for a in rational_nth_roots(numer / denom, 2):
        b = (a * b1 - m1) / d
        mu = LinearMap(a, b)
        c = pd / (md * a ** d)
        rest = target - compose(model, mu.to_poly()) * c
        if not rest.is_constant():
            continue
        ell = LinearMap(c, rest.coeff(0))
        assert ell(compose(model, mu.to_poly())) == target
        out.append((ell, mu))
    return out


def _match_xrpm(Q: RatPoly, m: int) -> tuple[int, RatPoly, LinearMap] | None:
    """Write Q = (X^r p(X)^m) o nu with gcd(r, m) = 1, if possible over Q.

    nu = a(X - u) must kill a rational root u of Q of multiplicity r mod m
    (or r = 0 when Q has an m-th power shape directly); the scalar defect
    c = a^r lam^m splits along gcd(r, m) = 1.
    """
    if Q.is_zero():
        return None
    dq = Q.degree
    if m == 1:
        return 0, Q, LinearMap(1, 0)
    # untwisted representations first (preferred by the round-trip contract):
    # strip the exact power of X, then take an m-th root of the rest
    v0 = 0
    while Q.coeff(v0) == 0:
        v0 += 1
    r0 = v0 % m
    if math.gcd(r0, m) == 1:
        rest = RatPoly(Q.coeffs[r0:])
        v = poly_nth_root(rest, m)
        if v is not None:
            return r0, v, LinearMap(1, 0)
    candidates = rational_roots(Q) if dq >= 1 else []
    for u in candidates:
        shifted = RatPoly([-u, 1])
        mult = 0
        rest = Q
        while True:
            quo, rem = rest.divmod(shifted)
            if not rem.is_zero():
                break
            rest = quo
            mult += 1
        r = mult % m
        if r == 0 or math.gcd(r, m) != 1 or r > dq:
            continue
        # T = Q / (X-u)^r must equal a^r * p(a(X-u))^m
        T = Q
        for _ in range(r):
            T, rem = T.divmod(shifted)
            if not rem.is_zero():
                T = None
                break
        if T is None:
            continue
        c = as_fraction(T.leading_coeff())
        W = T * (1 / c)
        w = poly_nth_root(W, m)
        if w is None:
            continue
        # solve a^r * lam^m = c using Bezout on gcd(r, m) = 1
        g, x, y = _ext_gcd(r, m)
        a = c ** x
        lam = c ** y
        # p(Y) = lam * w(Y/a + u)
        inner = RatPoly([u, 1 / a])
        p = compose(w, inner) * lam
        nu = LinearMap(a, -a * u)
        if compose(RatPoly.monomial(r) * p ** m, nu.to_poly()) == Q:
            return r, p, nu
    return None


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _squarefree_odd_part(Q: RatPoly) -> RatPoly:
    """Product of the distinct irreducible factors of odd multiplicity."""
    # Yun-style: iterate gcd with the derivative, tracking multiplicities
    parts = []
    rest = Q * (1 / as_fraction(Q.leading_coeff()))
    i = 1
    while rest.degree >= 1:
        g = _poly_gcd(rest, rest.derivative())
        stage = rest.divmod(g)[0]          # product of all primes with mult >= i
        rest = g
        parts.append(stage)
        i += 1
    odd = RatPoly.constant(1)
    # parts[i] = prod of primes with multiplicity > i; A_i = parts[i-1]/parts[i]
    for idx in range(len(parts)):
        cur = parts[idx]
        nxt = parts[idx + 1] if idx + 1 < len(parts) else RatPoly.constant(1)
        a_i = cur.divmod(nxt)[0]
        if (idx + 1) % 2 == 1:
            odd = odd * a_i
    return odd


def _poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    if a.is_zero():
        return a
    return a * (1 / as_fraction(a.leading_coeff()))


def _match_kind2_g(Q: RatPoly) -> tuple[RatPoly, LinearMap] | None:
    """Write Q = ((X^2+1) p(X)^2) o nu, if possible over Q."""
    if Q.degree < 2 or Q.degree % 2 != 0:
        return None
    odd = _squarefree_odd_part(Q)
    if odd.degree != 2:
        return None
    alpha = as_fraction(odd.coeff(2))
    beta = as_fraction(odd.coeff(1))
    gamma = as_fraction(odd.coeff(0))
    delta = gamma - beta ** 2 / (4 * alpha)
    if delta <= 0:
        return None
    for a in rational_nth_roots(alpha / delta, 2):
        b = beta * a / (2 * alpha)
        nu = LinearMap(a, b)
        quad = nu.to_poly() ** 2 + 1
        quo, rem = Q.divmod(quad)
        if not rem.is_zero():
            continue
        v = poly_nth_root(quo, 2)
        if v is None:
            continue
        p = compose(v, nu.inverse().to_poly())
        candidate = compose(RatPoly([1, 0, 1]) * p ** 2, nu.to_poly())
        if candidate == Q:
            return p, nu
    return None


_E5 = RatPoly([-1, 0, 1]) ** 3
_G5 = RatPoly([0, 0, 0, -4, 3])


def _match_residual(P: RatPoly, Q: RatPoly):
    """Match (P, Q) = (ell o F1 o mu, ell o G1 o nu) against the five kinds.

    Returns (params, ell, mu, nu, F1, G1) or None.  The shared left twist
    ell is recovered from P's side and imposed on Q's side.
    """
    dp, dq = P.degree, Q.degree
    if dp < 1 or dq < 1:
        return None

    # kind 5
    if dp == 6 and dq == 4:
        for ell, mu in _left_right_twists(P, _E5):
            z = compose(ell.inverse().to_poly(), Q)
            for nu in _right_twists(z, _G5):
                params = StandardPairParams(kind=5)
                return params, ell, mu, nu, _E5, _G5

    # kinds 3 and 4 (Chebyshev shapes); anchor the shared left twist on
    # whichever side pins it up to sign (degree >= 3), since degree-2
    # representations h = ell1 o T_2 o ell2 form a one-parameter family
    cheb_kind = 3 if math.gcd(dp, dq) == 1 else 4
    g_model = chebyshev_t(dq) if cheb_kind == 3 else -chebyshev_t(dq)
    p_model = chebyshev_t(dp)
    if dp >= 3 or dq < 3:
        # anchor the shared left twist on P (pinned up to sign for deg >= 3)
        if dp == 1:
            p_reps = [(LinearMap.identity(), LinearMap.from_poly(P))]
        else:
            p_reps = [(eq.ell1, eq.ell2) for eq in cheb_equivalences(P)]
        for ell, mu in p_reps:
            z = compose(ell.inverse().to_poly(), Q)
            for nu in _right_twists(z, g_model):
                params = StandardPairParams(kind=cheb_kind, m=dp, n=dq)
                return params, ell, mu, nu, p_model, g_model
    else:
        # dp <= 2 < 3 <= dq: degree-2 (and degree-1) representations do not
        # pin the left twist, so recover it from Q's Chebyshev form instead
        for eq in cheb_equivalences(Q):
            ell = eq.ell1 if cheb_kind == 3 else eq.ell1.compose(LinearMap(-1, 0))
            nu = eq.ell2
            z = compose(ell.inverse().to_poly(), P)
            for mu in _right_twists(z, p_model):
                params = StandardPairParams(kind=cheb_kind, m=dp, n=dq)
                return params, ell, mu, nu, p_model, g_model

    # kind 2 requires P ~ X^2
    if dp == 2:
        eq = linear_equivalence(P)
        if eq is not None and eq.form == "power":
            z = compose(eq.ell1.inverse().to_poly(), Q)
            got = _match_kind2_g(z)
            if got is not None:
                p, nu = got
                params = StandardPairParams(kind=2, p=p)
                return params, eq.ell1, eq.ell2, nu, RatPoly.monomial(2), \
                    RatPoly([1, 0, 1]) * p ** 2

    # kind 1: P ~ X^m, Q ~ X^r p(X)^m
    if dp == 1:
        p_power = [(LinearMap.identity(), LinearMap.from_poly(P))]
    else:
        eq = linear_equivalence(P)
        p_power = [(eq.ell1, eq.ell2)] if eq is not None and eq.form == "power" else []
    for ell, mu in p_power:
        z = compose(ell.inverse().to_poly(), Q)
        got = _match_xrpm(z, dp)
        if got is not None:
            r, p, nu = got
            params = StandardPairParams(kind=1, m=dp, r=r, p=p)
            return params, ell, mu, nu, RatPoly.monomial(dp), \
                RatPoly.monomial(r) * p ** dp
    return None


def _exact_kind(F: RatPoly, G: RatPoly):
    """Direct match of (F, G) as a bare standard pair (E = X, mu = nu = X)."""
    dp, dq = F.degree, G.degree
    if dp == 6 and dq == 4 and F == _E5 and G == _G5:
        return StandardPairParams(kind=5), _E5, _G5
    if F == chebyshev_t(dp):
        if G == chebyshev_t(dq) and math.gcd(dp, dq) == 1:
            return StandardPairParams(kind=3, m=dp, n=dq), F, G
        if G == -chebyshev_t(dq) and math.gcd(dp, dq) > 1:
            return StandardPairParams(kind=4, m=dp, n=dq), F, G
    if dp == 2 and F == RatPoly.monomial(2):
        quo, rem = G.divmod(RatPoly([1, 0, 1]))
        if rem.is_zero():
            v = poly_nth_root(quo, 2)
            if v is not None:
                return StandardPairParams(kind=2, p=v), F, RatPoly([1, 0, 1]) * v ** 2
    if F == RatPoly.monomial(dp):
        got = _match_xrpm(G, dp)
        if got is not None and got[2] == LinearMap.identity():
            r, p, _ = got
            return (StandardPairParams(kind=1, m=dp, r=r, p=p), F,
                    RatPoly.monomial(r) * p ** dp)
    return None


def classify_pair(F: RatPoly, G: RatPoly,
                  caps: ClassifyCaps | None = None) -> BTWitness | None:
    """Search for a Bilu-Tichy witness F = E o F1 o mu, G = E o G1 o nu.

    Best-effort: enumerates common left factors E through normalized
    splits matched by compositional division, and tests the residual pair
    against each standard kind in both orientations.  A returned witness
    recomposes exactly; None means "not found within caps", never a
    disproof.
    """
    if F.is_constant() or G.is_constant():
        raise ValueError("classify_pair requires nonconstant polynomials")
    caps = caps or ClassifyCaps()
    attempts = 0

    def build(params, ell, mu, nu, F1, G1, E_left, swapped):
        E = compose(E_left, ell.to_poly()) if not ell.is_identity() else E_left
        wit = BTWitness(E, mu, nu, params, F1, G1, swapped)
        got_f, got_g = wit.recompose()
        if swapped:
            got_f, got_g = got_g, got_f
        assert got_f == F and got_g == G, "classify_pair produced an unsound witness"
        return wit

    identity_E = RatPoly.x()
    # exact bare pairs first, preferring the stated orientation
    got = _exact_kind(F, G)
    if got is not None:
        params, F1, G1 = got
        return build(params, LinearMap.identity(), LinearMap.identity(),
                     LinearMap.identity(), F1, G1, identity_E, False)
    got = _exact_kind(G, F)
    if got is not None:
        params, F1, G1 = got
        return build(params, LinearMap.identity(), LinearMap.identity(),
                     LinearMap.identity(), F1, G1, identity_E, True)

    # twisted residuals with E linear or E from common split factors
    def residual_candidates():
        yield identity_E, F, G
        df, dg = F.degree, G.degree
        for e in divisors(math.gcd(df, dg)):
            if e <= 1:
                continue
            if e == df or e == dg:
                continue
            split_f = decompose_at(F, df // e)
            split_g = decompose_at(G, dg // e)
            if split_f is None or split_g is None:
                continue
            # E_G o ell = E_F, so G = E_F o (ell^{-1} o B_G)
            for ell_poly in left_divide(split_f.outer, split_g.outer):
                ell = LinearMap.from_poly(ell_poly)
                yield (split_f.outer, split_f.inner,
                       compose(ell.inverse().to_poly(), split_g.inner))

    for E_left, resid_f, resid_g in residual_candidates():
        attempts += 1
        if attempts > caps.max_split_attempts:
            raise ClassifyCapExceeded(
                f"classification stopped after {caps.max_split_attempts} split attempts")
        got = _match_residual(resid_f, resid_g)
        if got is not None:
            params, ell, mu, nu, F1, G1 = got
            return build(params, ell, mu, nu, F1, G1, E_left, False)
        got = _match_residual(resid_g, resid_f)
        if got is not None:
            params, ell, mu, nu, F1, G1 = got
            return build(params, ell, mu, nu, F1, G1, E_left, True)
    return None
