"""Lines in Q^d under coordinate-wise iterate tuples.

A line is stored in parametrized normal form: coordinate 1 carries the
parameter (Linked with the identity map) and every other coordinate is
either Linked through a degree-one map sigma_i (X_i = sigma_i(X_1)) or
frozen to a constant.  Conversion from a two-point description is a
constructor responsibility; single points are rejected, and lines whose
first coordinate is constant must be permuted by the caller first.

Invariance of a line under (f_1^(m_1), ..., f_d^(m_d)) reduces to the
exact polynomial identities sigma_i o f_1^(m_1) = f_i^(m_i) o sigma_i
for linked coordinates and fixed-point checks for constant ones, and
orbit-line intersections organize into finitely many cosets of cyclic
subsemigroups indexed by residues of the first exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .intersect import (OrbitBudget, common_iterate, CommonIterateFound,
                        orbit_intersection, PROVEN, BOUNDED)
from .poly import LinearMap, RatPoly, compose, conjugate, iterate
from .scalars import as_fraction

__all__ = [
    "Constant", "Linked", "LineSpec", "CosetEntry", "LineHit",
    "LineIntersection", "line_invariant_check", "find_invariant_exponents",
    "intersection_cosets",
]


@dataclass(frozen=True)
class Constant:
    value: Fraction


@dataclass(frozen=True)
class Linked:
    sigma: LinearMap


@dataclass(frozen=True)
class LineSpec:
    """A line in Q^d in sigma-parametrized normal form."""
    coords: tuple[Constant | Linked, ...]

    def __post_init__(self):
        if not self.coords:
            raise ValueError("a line needs at least one coordinate")
        if not any(isinstance(c, Linked) for c in self.coords):
            raise ValueError("all-constant coordinates describe a point, not a line")
        first = self.coords[0]
        if not (isinstance(first, Linked) and first.sigma.is_identity()):
            raise ValueError(
                "coordinate 1 must carry the parameter (Linked identity); "
                "permute coordinates so a non-constant coordinate comes first")

    @property
    def dimension(self) -> int:
        return len(self.coords)

    @classmethod
    def diagonal(cls, d: int) -> "LineSpec":
        return cls(tuple(Linked(LinearMap.identity()) for _ in range(d)))

    @classmethod
    def through_points(cls, p, q) -> "LineSpec":
        p = [Fraction(v) for v in p]
        q = [Fraction(v) for v in q]
        if len(p) != len(q) or not p:
            raise ValueError("points must share a positive dimension")
        direction = [b - a for a, b in zip(p, q)]
        if all(v == 0 for v in direction):
            raise ValueError("coincident points do not determine a line")
        if direction[0] == 0:
            raise ValueError(
                "the first coordinate is constant on this line; permute "
                "coordinates so a non-constant coordinate comes first")
        coords: list[Constant | Linked] = []
        for i, d_i in enumerate(direction):
            if d_i == 0:
                coords.append(Constant(p[i]))
            else:
                a = d_i / direction[0]
                coords.append(Linked(LinearMap(a, p[i] - a * p[0])))
        return cls(tuple(coords))

    def contains(self, point) -> bool:
        point = [Fraction(v) for v in point]
        if len(point) != self.dimension:
            raise ValueError("dimension mismatch")
        t = point[0]
        for v, c in zip(point, self.coords):
            if isinstance(c, Constant):
                if v != c.value:
                    return False
            elif v != c.sigma(t):
                return False
        return True


def line_invariant_check(fs, ms, line: LineSpec) -> bool:
    """Exact test of (f_1^(m_1), ..., f_d^(m_d))(L) = L.

    Linked coordinate i needs sigma_i o f_1^(m_1) = f_i^(m_i) o sigma_i
    as polynomials; constant coordinate i needs m_i = 0 or a fixed value.
    """
    fs = list(fs)
    ms = list(ms)
    if len(fs) != line.dimension or len(ms) != line.dimension:
        raise ValueError("dimension mismatch between maps, exponents, and line")
    if any(m < 0 for m in ms):
        raise ValueError("iterate exponents must be nonnegative")
    if sum(ms) == 0:
        raise ValueError("at least one exponent must be positive")
    f1_m = iterate(fs[0], ms[0])
    for i, coord in enumerate(line.coords):
        if isinstance(coord, Constant):
            if ms[i] == 0:
                continue
            z = coord.value
            w = z
            for _ in range(ms[i]):
                w = as_fraction(fs[i](w))
            if w != z:
                return False
        else:
            sig = coord.sigma.to_poly()
            if compose(sig, f1_m) != compose(iterate(fs[i], ms[i]), sig):
                return False
    return True


def find_invariant_exponents(fs, line: LineSpec, bound: int = 8):
    """Exponents (m_1, ..., m_d) making the line invariant, or None.

    For each linked coordinate, searches a common iterate of the
    conjugated first map and f_i, then recombines through the least
    common multiple; constant coordinates ride along with exponent 0.
    """
    fs = list(fs)
    if len(fs) != line.dimension:
        raise ValueError("dimension mismatch")
    if any(f.degree < 2 for f in fs):
        raise ValueError("find_invariant_exponents requires degrees >= 2")
    pairs = {}
    for i, coord in enumerate(line.coords[1:], start=1):
        if isinstance(coord, Constant):
            continue
        conj = conjugate(fs[0], coord.sigma)
        got = common_iterate(conj, fs[i], K=bound)
        if not isinstance(got, CommonIterateFound):
            return None
        pairs[i] = (got.m1, got.m2)
    m1 = 1
    for mi, _ in pairs.values():
        m1 = m1 * mi // math.gcd(m1, mi)
    ms = [0] * line.dimension
    ms[0] = m1
    for i, (mi, ni) in pairs.items():
        ms[i] = ni * m1 // mi
    result = tuple(ms)
    if not line_invariant_check(fs, result, line):
        raise AssertionError("recombined exponents failed the invariance check")
    return result


@dataclass(frozen=True)
class CosetEntry:
    """The index set {(offsets_i + j * period_i)_i : j >= 0}."""
    offsets: tuple[int, ...]
    period: tuple[int, ...]


def _in_coset(indices, entry: CosetEntry) -> bool:
    deltas = [u - o for u, o in zip(indices, entry.offsets)]
    js = set()
    for d, p in zip(deltas, entry.period):
        if p == 0:
            if d != 0:
                return False
        else:
            if d < 0 or d % p:
                return False
            js.add(d // p)
    return len(js) <= 1


@dataclass(frozen=True)
class LineHit:
    indices: tuple[int, ...]
    point: tuple[Fraction, ...]


@dataclass(frozen=True)
class LineIntersection:
    cosets: tuple[CosetEntry, ...]
    extras: tuple[LineHit, ...]
    completeness: str
    note: str | None = None


def _apply_iterates(fs, alpha, indices):
    out = []
    for f, a, k in zip(fs, alpha, indices):
        v = Fraction(a)
        for _ in range(k):
            v = as_fraction(f(v))
        out.append(v)
    return tuple(out)


def intersection_cosets(fs, alpha, line: LineSpec,
                        budget: OrbitBudget = OrbitBudget(max_steps=8)) -> LineIntersection:
    """Describe {rho_1^(u_1) ... rho_d^(u_d)(alpha)} meeting the line.

    Hits found by bounded product enumeration are organized, when an
    invariant exponent tuple exists, into cosets of the cyclic
    subsemigroup it generates: one entry per residue class of the first
    exponent, anchored at the lexicographically minimal offset.
    Completeness upgrades to the exact solver's verdict in the
    two-coordinate linked case.
    """
    fs = list(fs)
    alpha = [Fraction(a) for a in alpha]
    if len(fs) != line.dimension or len(alpha) != line.dimension:
        raise ValueError("dimension mismatch")
    if any(f.degree < 2 for f in fs):
        raise ValueError("intersection_cosets requires degrees >= 2")

    if line.dimension == 2 and isinstance(line.coords[1], Linked):
        return _two_coordinate_exact(fs, alpha, line, budget)

    # bounded product enumeration over per-coordinate orbit prefixes
    depth = budget.max_steps
    values = []
    for f, a in zip(fs, alpha):
        vals = [Fraction(a)]
        for _ in range(depth):
            nxt = as_fraction(f(vals[-1]))
            vals.append(nxt)
            if max(abs(nxt.numerator), nxt.denominator) > 10 ** 12:
                break
        values.append(vals)

    hits = []
    def scan(i, indices):
        if i == line.dimension:
            point = tuple(values[j][indices[j]] for j in range(line.dimension))
            if line.contains(point):
                hits.append(LineHit(tuple(indices), point))
            return
        for k in range(len(values[i])):
            scan(i + 1, indices + [k])
    scan(0, [])
    hits.sort(key=lambda h: h.indices)

    ms = find_invariant_exponents(fs, line)
    if ms is None or ms[0] == 0:
        return LineIntersection((), tuple(hits), BOUNDED,
                                "no invariant exponents found within bounds")
    cosets = []
    covered = set()
    for residue in range(ms[0]):
        members = [h for h in hits if h.indices[0] % ms[0] == residue]
        if not members:
            continue
        anchor = min(members, key=lambda h: h.indices)
        entry = CosetEntry(anchor.indices, ms)
        # spot-verify the coset exactly a few steps out
        for j in range(1, 4):
            idx = tuple(o + j * p for o, p in zip(entry.offsets, entry.period))
            point = _apply_iterates(fs, alpha, idx)
            if not line.contains(point):
                raise AssertionError("coset entry failed exact verification")
        cosets.append(entry)
        for h in members:
            if _in_coset(h.indices, entry):
                covered.add(h.indices)
    extras = tuple(h for h in hits if h.indices not in covered)
    return LineIntersection(tuple(cosets), extras, BOUNDED)


def _two_coordinate_exact(fs, alpha, line, budget):
    """Route the d = 2 linked case through the exact orbit intersection."""
    sigma = line.coords[1].sigma
    g = conjugate(fs[1], sigma.inverse())
    beta = as_fraction(sigma.inverse()(alpha[1]))
    rep = orbit_intersection(fs[0], g, alpha[0], beta, budget)
    cosets = ()
    if rep.infinite_family is not None:
        cosets = (CosetEntry(rep.infinite_family.base, rep.infinite_family.step),)
    extras = []
    for p in rep.finite_points:
        indices = (p.m, p.n)
        point = _apply_iterates(fs, alpha, indices)
        if not line.contains(point):
            raise AssertionError("exact hit failed line membership")
        extras.append(LineHit(indices, point))
    return LineIntersection(cosets, tuple(extras), rep.completeness, rep.note)
