"""Dense univariate polynomials, degree-1 maps, and Laurent polynomials.

Every value is immutable after construction and every operation is pure,
so values can be shared freely between concurrent tasks.  Coefficients
live either in Q (as ``Fraction``) or in a quotient ring Q[t]/(m(t));
rationals embed implicitly, distinct quotient rings never mix.

Composition is Horner over polynomials; degrees stay modest at desk
scale, so the dense representation is the simple and fast choice.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import (
    QuotientElement,
    QuotientRing,
    RingMismatchError,
    as_fraction,
    join_rings,
    ring_of,
    scalar_inverse,
    to_ring,
)

__all__ = [
    "RatPoly", "LinearMap", "LaurentPoly",
    "compose", "iterate", "conjugate", "laurent_compose", "lift_poly",
]


def _normalize_coeffs(coeffs):
    """Scalars to a common ring, ints to Fraction, trailing zeros trimmed."""
    vals = list(coeffs)
    ring = None
    for c in vals:
        ring = join_rings(ring, ring_of(c))
    out = [to_ring(c, ring) for c in vals]
    while out and (out[-1] == 0):
        out.pop()
    return tuple(out), ring


class RatPoly:
    """Dense univariate polynomial; coefficient index = degree.

    The zero polynomial is the empty coefficient tuple and has degree -1.
    Two polynomials are equal iff their coefficient tuples are equal.
    """

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs=()):
        self.coeffs, self.ring = _normalize_coeffs(coeffs)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def x(cls) -> "RatPoly":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "RatPoly":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c=1) -> "RatPoly":
        if n < 0:
            raise ValueError("monomial exponent must be nonnegative")
        return cls([0] * n + [c])

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls([])

    # -- structure ------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading_coeff(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int):
        """Coefficient of X^i (zero of the right ring when out of range)."""
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self._zero_scalar()

    def _zero_scalar(self):
        return Fraction(0) if self.ring is None else self.ring.zero()

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == RatPoly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # -- ring arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction, QuotientElement)):
            return RatPoly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        ring = join_rings(self.ring, o.ring)
        out = [self.coeff(i) + o.coeff(i) for i in range(n)]
        return RatPoly([to_ring(c, ring) for c in out])

    __radd__ = __add__

    def __neg__(self):
        return RatPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatPoly.zero()
        ring = join_rings(self.ring, o.ring)
        zero = Fraction(0) if ring is None else ring.zero()
        prod = [zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                prod[i + j] = prod[i + j] + a * b
        return RatPoly(prod)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            raise ValueError("negative polynomial power")
        result = RatPoly([1]) if self.ring is None else RatPoly([self.ring.one()])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scalar_mul(self, c) -> "RatPoly":
        return self * RatPoly([c])

    def divmod(self, other: "RatPoly"):
        """Euclidean division (requires an invertible leading coefficient)."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ring = join_rings(self.ring, other.ring)
        rem = list(to_ring(c, ring) for c in self.coeffs)
        db = other.degree
        inv_lc = scalar_inverse(to_ring(other.leading_coeff(), ring))
        zero = Fraction(0) if ring is None else ring.zero()
        quo = [zero] * max(0, len(rem) - db)
        while len(rem) - 1 >= db and rem:
            shift = len(rem) - 1 - db
            coef = rem[-1] * inv_lc
            quo[shift] = coef
            for j in range(db + 1):
                rem[shift + j] = rem[shift + j] - coef * to_ring(other.coeffs[j], ring)
            while rem and rem[-1] == 0:
                rem.pop()
        return RatPoly(quo), RatPoly(rem)

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.divmod(o)

    def derivative(self) -> "RatPoly":
        return RatPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    # -- evaluation and composition --------------------------------------------

    def __call__(self, x):
        """Evaluate at a scalar, RatPoly, or LaurentPoly via Horner."""
        if isinstance(x, RatPoly):
            return compose(self, x)
        if isinstance(x, LaurentPoly):
            return laurent_compose(self, x)
        acc = self._zero_scalar()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def lift(self, ring: QuotientRing) -> "RatPoly":
        """Map a rational polynomial into a quotient ring coefficientwise."""
        return RatPoly([to_ring(c, ring) for c in self.coeffs])

    def __repr__(self):
        from .parser import format_poly
        try:
            return f"RatPoly({format_poly(self)})"
        except Exception:
            return f"RatPoly({list(self.coeffs)!r})"


def lift_poly(p: RatPoly, ring) -> RatPoly:
    return p if ring is None else p.lift(ring)


def compose(outer: RatPoly, inner: RatPoly) -> RatPoly:
    """outer(inner(X)), exactly; deg = deg outer * deg inner when nonconstant."""
    ring = join_rings(outer.ring, inner.ring)
    acc = RatPoly.zero()
    for c in reversed(outer.coeffs):
        acc = acc * inner + RatPoly([to_ring(c, ring)])
    if ring is not None:
        acc = lift_poly(acc, ring)
    return acc


def iterate(f: RatPoly, n: int) -> RatPoly:
    """The n-th compositional power of f, with the 0-th iterate equal to X."""
    if n < 0:
        raise ValueError("iteration count must be nonnegative")
    result = RatPoly.x()
    if f.ring is not None:
        result = result.lift(f.ring)
    for _ in range(n):
        result = compose(f, result)
    return result


class LinearMap:
    """A degree-one polynomial a*X + b with a != 0, closed under inversion."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        ring = join_rings(ring_of(a), ring_of(b))
        a = to_ring(a, ring)
        b = to_ring(b, ring)
        if a == 0:
            raise ValueError("linear map requires a != 0")
        self.a = a
        self.b = b

    @classmethod
    def identity(cls) -> "LinearMap":
        return cls(1, 0)

    @classmethod
    def from_poly(cls, p: RatPoly) -> "LinearMap":
        if p.degree != 1:
            raise ValueError(f"not a degree-1 polynomial: {p!r}")
        return cls(p.coeffs[1], p.coeffs[0])

    @property
    def ring(self):
        return join_rings(ring_of(self.a), ring_of(self.b))

    def __call__(self, x):
        if isinstance(x, RatPoly):
            return x * self.a + self.b
        return self.a * x + self.b

    def to_poly(self) -> RatPoly:
        return RatPoly([self.b, self.a])

    def inverse(self) -> "LinearMap":
        """The functional inverse: solves a*y + b = x for y."""
        ia = scalar_inverse(self.a)
        return LinearMap(ia, -self.b * ia)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        return LinearMap(self.a * other.a, self.a * other.b + self.b)

    def is_identity(self) -> bool:
        return self.a == 1 and self.b == 0

    def __eq__(self, other):
        if isinstance(other, LinearMap):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"LinearMap({self.a}, {self.b})"


def conjugate(f: RatPoly, ell: LinearMap) -> RatPoly:
    """ell o f o ell^{-1}: the degree-preserving change of coordinates."""
    inv = ell.inverse()
    return ell(compose(f, inv.to_poly()))


class LaurentPoly:
    """Finite sum of c_k X^k with integer (possibly negative) exponents k."""

    __slots__ = ("terms", "ring")

    def __init__(self, terms=()):
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        ring = None
        vals = {}
        for k, c in items:
            ring = join_rings(ring, ring_of(c))
            vals[int(k)] = c
        cleaned = {}
        for k, c in vals.items():
            c = to_ring(c, ring)
            if c != 0:
                cleaned[k] = c
        self.terms = dict(sorted(cleaned.items()))
        self.ring = ring

    @classmethod
    def x(cls, ring=None) -> "LaurentPoly":
        one = 1 if ring is None else ring.one()
        return cls({1: one})

    @classmethod
    def from_poly(cls, p: RatPoly) -> "LaurentPoly":
        return cls({i: c for i, c in enumerate(p.coeffs)})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == 0 for k in self.terms)

    def coeff(self, k: int):
        if k in self.terms:
            return self.terms[k]
        return Fraction(0) if self.ring is None else self.ring.zero()

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction, QuotientElement)):
            return LaurentPoly({0: other})
        if isinstance(other, RatPoly):
            return LaurentPoly.from_poly(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ring = join_rings(self.ring, o.ring)
        out = {}
        for k in set(self.terms) | set(o.terms):
            out[k] = to_ring(self.coeff(k), ring) + to_ring(o.coeff(k), ring)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ring = join_rings(self.ring, o.ring)
        out = {}
        for i, a in self.terms.items():
            for j, b in o.terms.items():
                k = i + j
                prod = to_ring(a, ring) * to_ring(b, ring)
                out[k] = out.get(k, to_ring(0, ring) if ring else Fraction(0)) + prod
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            # only monomials invert inside the Laurent ring
            if len(self.terms) == 1:
                ((k, c),) = self.terms.items()
                return LaurentPoly({-k: scalar_inverse(c)}) ** (-n)
            raise ValueError("negative power of a non-monomial Laurent polynomial")
        result = LaurentPoly({0: 1 if self.ring is None else self.ring.one()})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def lift(self, ring: QuotientRing) -> "LaurentPoly":
        return LaurentPoly({k: to_ring(c, ring) for k, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, QuotientElement, RatPoly)):
            o = self._coerce(other)
            return self.terms == o.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(0)"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            if k == 0:
                parts.append(f"({c})")
            elif k == 1:
                parts.append(f"({c})*X")
            else:
                parts.append(f"({c})*X^{k}")
        return "LaurentPoly(" + " + ".join(parts) + ")"


def laurent_compose(F: RatPoly, phi: LaurentPoly) -> LaurentPoly:
    """F(phi(X)) as an exact Laurent polynomial."""
    ring = join_rings(F.ring, phi.ring)
    acc = LaurentPoly()
    for c in reversed(F.coeffs):
        acc = acc * phi + LaurentPoly({0: to_ring(c, ring)})
    if ring is not None and acc.ring != ring:
        acc = acc.lift(ring)
    return acc
