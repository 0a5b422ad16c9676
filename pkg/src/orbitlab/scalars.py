"""Exact scalar rings: rationals and quotient rings Q[t]/(m(t)).

Rational scalars are plain ``fractions.Fraction`` values (always in lowest
terms with positive denominator, so equality is exact).  Quotient-ring
scalars are residues modulo a monic integer polynomial m(t); the modulus
need not be irreducible, so zero divisors may exist, but equality stays
decidable, which is all that identity verification needs.

Ring policy: integers and Fractions embed implicitly into any quotient
ring (they are central constants); elements of two *different* quotient
rings never combine and raise :class:`RingMismatchError` instead.
"""

from __future__ import annotations

from fractions import Fraction


class RingMismatchError(TypeError):
    """Raised when scalars (or polynomials) from distinct rings are combined."""


def _poly_trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mod(coeffs, modulus):
    """Reduce a rational coefficient list modulo a monic modulus, in place."""
    deg_m = len(modulus) - 1
    coeffs = list(coeffs)
    for i in range(len(coeffs) - 1, deg_m - 1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        coeffs[i] = Fraction(0)
        for j in range(deg_m):
            coeffs[i - deg_m + j] -= c * modulus[j]
    return _poly_trim(coeffs)


def _poly_divmod(a, b):
    """Quotient and remainder of rational coefficient lists, b nonzero."""
    rem = list(a)
    db = len(b) - 1
    lcb = b[-1]
    quo = [Fraction(0)] * max(0, len(a) - db)
    while len(rem) - 1 >= db and rem:
        shift = len(rem) - 1 - db
        coef = rem[-1] / lcb
        quo[shift] = coef
        for j in range(db + 1):
            rem[shift + j] -= coef * b[j]
        rem = _poly_trim(rem)
    return _poly_trim(quo), rem


def _poly_mul_list(a, b):
    if not a or not b:
        return []
    prod = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            prod[i + j] += x * y
    return _poly_trim(prod)


def _poly_sub_list(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim(out)


class QuotientRing:
    """The ring Q[t]/(m(t)) for a monic integer polynomial m(t), deg m >= 1."""

    __slots__ = ("modulus",)

    def __init__(self, modulus):
        mod = tuple(int(c) for c in modulus)
        if len(mod) < 2:
            raise ValueError("modulus must have degree >= 1")
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = mod

    @property
    def degree(self):
        return len(self.modulus) - 1

    def element(self, coeffs) -> "QuotientElement":
        vals = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        return QuotientElement(self, _poly_mod(vals, self.modulus))

    def embed(self, q) -> "QuotientElement":
        """Image of a rational number under the canonical map Q -> Q[t]/(m)."""
        return self.element([q])

    def generator(self) -> "QuotientElement":
        """The residue class of t."""
        return self.element([0, 1])

    def zero(self) -> "QuotientElement":
        return self.element([])

    def one(self) -> "QuotientElement":
        return self.element([1])

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("QuotientRing", self.modulus))

    def __repr__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append("t" if c == 1 else f"{c}*t")
            else:
                terms.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
        return "Q[t]/(" + " + ".join(terms).replace("+ -", "- ") + ")"


class QuotientElement:
    """A reduced residue in Q[t]/(m(t)); coefficient index = power of t."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: QuotientRing, reduced_coeffs):
        self.ring = ring
        self.coeffs = tuple(reduced_coeffs)

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QuotientElement):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"cannot combine elements of {self.ring!r} and {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.embed(other)
        return None

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(o.coeffs):
            a[i] += c
        return QuotientElement(self.ring, _poly_trim(a))

    __radd__ = __add__

    def __neg__(self):
        return QuotientElement(self.ring, tuple(-c for c in self.coeffs))

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
        if not self.coeffs or not o.coeffs:
            return self.ring.zero()
        prod = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                prod[i + j] += a * b
        return QuotientElement(self.ring, _poly_mod(prod, self.ring.modulus))

    __rmul__ = __mul__

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "QuotientElement":
        """Multiplicative inverse via the extended Euclidean algorithm.

        Raises ZeroDivisionError when the residue is a zero divisor (the
        modulus need not be irreducible).
        """
        # Bezout over Q[t]: s*self = gcd(self, m) modulo m
        r0 = [Fraction(c) for c in self.ring.modulus]
        r1 = list(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub_list(s0, _poly_mul_list(q, s1))
        if len(r0) != 1:
            raise ZeroDivisionError(f"{self!r} is not invertible in {self.ring!r}")
        g = r0[0]
        inv = [c / g for c in s0]
        return QuotientElement(self.ring, _poly_mod(inv, self.ring.modulus))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- structure -----------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, QuotientElement):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == () if other == 0 else self.coeffs == (Fraction(other),)
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            # agree with hash of the rational it represents
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash((self.ring.modulus, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append("t" if c == 1 else f"({c})*t")
            else:
                terms.append(f"t^{i}" if c == 1 else f"({c})*t^{i}")
        return " + ".join(terms)


# -- ring-polymorphic helpers -------------------------------------------------

def ring_of(x):
    """The quotient ring of a scalar, or None for rationals."""
    return x.ring if isinstance(x, QuotientElement) else None


def join_rings(r1, r2):
    """Common ring of two scalar rings (None = Q, which embeds everywhere)."""
    if r1 is None:
        return r2
    if r2 is None or r1 == r2:
        return r1
    raise RingMismatchError(f"cannot combine {r1!r} with {r2!r}")


def to_ring(x, ring):
    """Coerce a scalar into the given ring (None = Q)."""
    if ring is None:
        if isinstance(x, QuotientElement):
            raise RingMismatchError("quotient-ring scalar used where a rational is required")
        return x if isinstance(x, Fraction) else Fraction(x)
    if isinstance(x, QuotientElement):
        if x.ring != ring:
            raise RingMismatchError(f"cannot move element of {x.ring!r} into {ring!r}")
        return x
    return ring.embed(x)


def as_fraction(x) -> Fraction:
    """The scalar as a Fraction; raises for genuine quotient-ring elements."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, QuotientElement):
        if len(x.coeffs) == 0:
            return Fraction(0)
        if len(x.coeffs) == 1:
            return x.coeffs[0]
        raise RingMismatchError(f"{x!r} is not rational")
    raise TypeError(f"not a scalar: {x!r}")


def scalar_inverse(x):
    if isinstance(x, QuotientElement):
        return x.inverse()
    return 1 / as_fraction(x)
