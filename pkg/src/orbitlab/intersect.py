"""Orbit enumeration and exact orbit-intersection solvers.

The exact solver for power maps f = alpha X^r, g = beta X^s rewrites
f^(m)(x0) = x0 * w_f^U(m) with w_f = alpha x0^(r-1) and U(m) =
(r^m-1)/(r-1), so an intersection point means w_f^U w_g^(-V) = y0/x0.
The solutions (U, V) form a coset of the relation lattice of (w_f, w_g);
pulling the coset back through the exponential U(m), V(n) leaves either
finitely many pairs or an arithmetic progression, and the progression
case carries a verified common-iterate witness.  No floating point
appears anywhere in the intersection logic.

Completeness bookkeeping: "Proven" means the report provably lists the
whole intersection; bounded enumeration that found no structure reports
"BoundedSearchOnly".  An infinite family is only ever emitted from the
zero-offset branch of the coset analysis (the nonzero-offset branch can
certify finiteness by valuation and congruence arguments but never
produces a family).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .decomp import left_divide
from .heights import weil_height
from .intfactor import factorint
from .lattice import solve_exponent_system
from .normal_forms import PowerLike, conjugacy_normal_form
from .poly import RatPoly, compose, iterate
from .scalars import as_fraction

__all__ = [
    "OrbitBudget", "OrbitTrace", "Wandering", "Preperiodic",
    "FinitePoint", "InfiniteFamily", "IntersectionReport",
    "CommonIterateNever", "CommonIterateFound", "CommonIterateUnknown",
    "RittCertificate",
    "orbit", "orbit_intersection", "power_map_intersection_exact",
    "common_iterate", "commensurability_witness", "verify_ritt_certificate",
]

PROVEN = "Proven"
BOUNDED = "BoundedSearchOnly"

_WITNESS_DEGREE_CAP = 4096
_VALUE_BIT_CAP = 1_000_000


# ---------------------------------------------------------------------------
# orbits


@dataclass(frozen=True)
class OrbitBudget:
    max_steps: int = 32
    max_height: float = 1e6


@dataclass(frozen=True)
class Wandering:
    steps: int


@dataclass(frozen=True)
class Preperiodic:
    tail_length: int
    cycle_length: int


@dataclass(frozen=True)
class OrbitTrace:
    start: Fraction
    points: tuple[Fraction, ...]
    status: Wandering | Preperiodic


def orbit(f: RatPoly, x0, budget: OrbitBudget = OrbitBudget()) -> OrbitTrace:
    """Enumerate x0, f(x0), ... until a cycle closes or a cap is hit.

    On cycle detection the closing repeat is kept as the final point, so
    the cycle is visible in the trace.
    """
    if budget.max_steps < 1:
        raise ValueError("budget must allow at least one step")
    x0 = Fraction(x0)
    points = [x0]
    seen = {x0: 0}
    for step in range(budget.max_steps):
        nxt = as_fraction(f(points[-1]))
        points.append(nxt)
        if nxt in seen:
            first = seen[nxt]
            return OrbitTrace(x0, tuple(points),
                              Preperiodic(first, step + 1 - first))
        if weil_height(nxt) > budget.max_height:
            return OrbitTrace(x0, tuple(points), Wandering(step + 1))
        seen[nxt] = step + 1
    return OrbitTrace(x0, tuple(points), Wandering(budget.max_steps))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class FinitePoint:
    """value = f^(m)(x0) = g^(n)(y0); value is None when it would exceed
    the representation bit cap (indices remain exact)."""
    value: Fraction | None
    m: int
    n: int


@dataclass(frozen=True)
class InfiniteFamily:
    base: tuple[int, int]
    step: tuple[int, int]
    witness: RatPoly | None  # the common iterate, when small enough to store
    witness_verified: bool = True


@dataclass(frozen=True)
class IntersectionReport:
    finite_points: tuple[FinitePoint, ...]
    infinite_family: InfiniteFamily | None
    completeness: str
    note: str | None = None


# ---------------------------------------------------------------------------
# exact power-map machinery


def _exp_sum(base: int, m: int) -> int:
    """1 + base + ... + base^(m-1), the iterate exponent ladder."""
    return (base ** m - 1) // (base - 1)


def _invert_exp_sum(value: int, base: int) -> int | None:
    """m with _exp_sum(base, m) == value, else None."""
    if value < 0:
        return None
    acc = 0
    m = 0
    while acc < value:
        acc = acc * base + 1
        m += 1
    return m if acc == value else None


def _vp(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _exact_log(value: int, base: int) -> int | None:
    """n >= 0 with base^n == value, else None."""
    if value < 1:
        return None
    n = 0
    acc = 1
    while acc < value:
        acc *= base
        n += 1
    return n if acc == value else None


class _ScalarVec:
    """Signed prime-exponent form of a nonzero rational, for cheap exact
    comparisons of monomial expressions with huge integer exponents."""

    def __init__(self, x: Fraction):
        x = Fraction(x)
        if x == 0:
            raise ValueError("nonzero rational required")
        self.sign = -1 if x < 0 else 1
        vec: dict[int, int] = {}
        for p, e in factorint(x.numerator).items():
            vec[p] = vec.get(p, 0) + e
        for p, e in factorint(x.denominator).items():
            vec[p] = vec.get(p, 0) - e
        self.vec = vec

    def pow_mul(self, exp: int, other: "_ScalarVec", other_exp: int):
        """Exponent data of self^exp * other^other_exp."""
        out = {}
        for p, e in self.vec.items():
            out[p] = out.get(p, 0) + e * exp
        for p, e in other.vec.items():
            out[p] = out.get(p, 0) + e * other_exp
        sign = (self.sign ** (exp % 2)) * (other.sign ** (other_exp % 2))
        return sign, {p: e for p, e in out.items() if e}


def _monomial_equal(a: _ScalarVec, ea: int, b: _ScalarVec, eb: int,
                    target: _ScalarVec) -> bool:
    """a^ea * b^eb == target, exactly, without constructing the fractions."""
    sign, vec = a.pow_mul(ea, b, eb)
    return sign == target.sign and vec == target.vec


def _solve_affine_2var(eqs: list[tuple[int, int, int]]):
    """Integer solutions of the system {cm*m + cn*n = t}: None (no
    solution), ("point", m, n), ("line", m0, n0, dm, dn), or ("all",)."""
    m_rows: list[list[int]] = []
    n_rows: list[list[int]] = []
    for cm, cn, t in eqs:
        if cm == 0 and cn == 0:
            if t != 0:
                return None
        elif cm != 0:
            m_rows.append([cm, cn, t])
        else:
            n_rows.append([cm, cn, t])
    # gcd-eliminate the m column down to a single pivot row
    while len(m_rows) > 1:
        m_rows.sort(key=lambda r: abs(r[0]))
        base, rest = m_rows[0], [m_rows[0]]
        for r in m_rows[1:]:
            q = r[0] // base[0]
            rr = [r[i] - q * base[i] for i in range(3)]
            if rr[0] != 0:
                rest.append(rr)
            elif rr[1] != 0:
                n_rows.append(rr)
            elif rr[2] != 0:
                return None
        m_rows = rest
    # same for the n column
    while len(n_rows) > 1:
        n_rows.sort(key=lambda r: abs(r[1]))
        base, rest = n_rows[0], [n_rows[0]]
        for r in n_rows[1:]:
            q = r[1] // base[1]
            rr = [0, r[1] - q * base[1], r[2] - q * base[2]]
            if rr[1] != 0:
                rest.append(rr)
            elif rr[2] != 0:
                return None
        n_rows = rest
    if m_rows and n_rows:
        cn, t = n_rows[0][1], n_rows[0][2]
        if t % cn:
            return None
        n = t // cn
        cm, cn2, t2 = m_rows[0]
        if (t2 - cn2 * n) % cm:
            return None
        return ("point", (t2 - cn2 * n) // cm, n)
    if m_rows:
        cm, cn, t = m_rows[0]
        if cn == 0:
            if t % cm:
                return None
            return ("line", t // cm, 0, 0, 1)
        g, x, y = _bezout(cm, cn)  # x*cm + y*cn = g, |g| = gcd
        if t % g:
            return None
        scale = t // g
        dm, dn = cn // g, -cm // g
        if dm < 0 or (dm == 0 and dn < 0):
            dm, dn = -dm, -dn
        return ("line", x * scale, y * scale, dm, dn)
    if n_rows:
        cn, t = n_rows[0][1], n_rows[0][2]
        if t % cn:
            return None
        return ("line", 0, t // cn, 1, 0)
    return ("all",)


def _bezout(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g and |g| = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _solve_equal_powers(B: int, r: int, A: int, s: int):
    """All (m, n) >= 0 with B*r^m = A*s^n (B, A nonzero), by prime linear
    algebra: None/point/ray in the same encoding as _solve_affine_2var."""
    if (B > 0) != (A > 0):
        return None
    B, A = abs(B), abs(A)
    primes = set(factorint(B)) | set(factorint(A)) | set(factorint(r)) | set(factorint(s))
    eqs = []
    for p in sorted(primes):
        # v(B) + m v(r) = v(A) + n v(s)
        eqs.append((_vp(r, p), -_vp(s, p), _vp(A, p) - _vp(B, p)))
    sol = _solve_affine_2var(eqs)
    if sol is None:
        return None
    # r >= 2 always contributes an m-bearing equation, so "all" cannot occur
    assert sol[0] in ("point", "line"), sol
    return sol


def _mult_order(a: int, modulus: int) -> int:
    acc = a % modulus
    order = 1
    while acc != 1:
        acc = acc * a % modulus
        order += 1
        if order > modulus:
            raise ArithmeticError("order computation ran away")
    return order


def _power_congruence_solvable(base: int, target: int, modulus: int) -> bool:
    """Whether base^x = target (mod modulus) has a solution, gcd(base, modulus)=1."""
    acc = 1 % modulus
    target %= modulus
    seen = set()
    while acc not in seen:
        if acc == target:
            return True
        seen.add(acc)
        acc = acc * base % modulus
    return False


def _m_bound_certificate(B: int, r: int, A: int, s: int, C: int,
                         level_cap: int = 2_000_000) -> int | None:
    """An exhaustive-scan bound for solutions of B r^m + A s^n = C (C != 0):
    every solution provably has m <= bound.  None when no certificate was
    found within the escalation cap.

    Valuation argument at a prime q | r: once v_q(B r^m) outgrows both
    v_q(C) and v_q(A s^n), the equation cannot balance; the remaining
    regime pins either n to one value or forces a q-adic congruence on
    s^n whose failure at a finite level bounds m.
    """
    def n_to_m(n: int) -> int | None:
        rest = C - A * s ** n
        if rest == 0 or rest % B:
            return None
        val = rest // B
        if val < 1:
            return None
        return _exact_log(val, r)

    bounds: list[int] = []
    for q in factorint(r):
        vqr = _vp(r, q)
        vB, vA, vC = _vp(B, q), _vp(A, q), _vp(C, q)
        vqs = _vp(s, q)
        if vqs > 0:
            # common prime: equal-valuation regime bounds m, the rest pins n
            bound = max(0, (vC - vB) // vqr)
            n_pin = (vC - vA) // vqs if (vC - vA) % vqs == 0 and vC >= vA else None
            if n_pin is not None and n_pin >= 0:
                m_extra = n_to_m(n_pin)
                if m_extra is not None:
                    bound = max(bound, m_extra)
            bounds.append(bound)
            continue
        # q | r only: s is a unit at q
        if vA != vC:
            # v_q(C - A s^n) = min(vA, vC) eventually, so m is capped there,
            # except possibly where cancellation needs vA = vC
            cap = max(0, (max(vA, vC) - vB) // vqr) + 1
            bounds.append(cap)
            continue
        # vA == vC: escalate the q-adic congruence s^n == C/A (mod q^k)
        Ared, Cred = A // q ** vA, C // q ** vC
        level = 1
        modulus = q
        found = None
        while modulus <= level_cap:
            inv = pow(Ared, -1, modulus)
            if not _power_congruence_solvable(s % modulus, Cred * inv % modulus,
                                              modulus):
                # all solutions have v_q(C - A s^n) < level + vA
                found = max(0, (level + vA - vB) // vqr) + 1
                break
            level += 1
            modulus *= q
        if found is not None:
            bounds.append(found)
    if bounds:
        return min(bounds)

    # symmetric: bound n at a prime of s, then convert each n to at most one m
    for q in factorint(s):
        if r % q == 0:
            continue
        vqs = _vp(s, q)
        vB, vA, vC = _vp(B, q), _vp(A, q), _vp(C, q)
        n_bound = None
        if vB != vC:
            n_bound = max(0, (max(vB, vC) - vA) // vqs) + 1
        else:
            Bred, Cred = B // q ** vB, C // q ** vC
            level = 1
            modulus = q
            while modulus <= level_cap:
                inv = pow(Bred, -1, modulus)
                if not _power_congruence_solvable(r % modulus, Cred * inv % modulus,
                                                  modulus):
                    n_bound = max(0, (level + vB - vA) // vqs) + 1
                    break
                level += 1
                modulus *= q
        if n_bound is not None:
            best_m = 0
            for n in range(n_bound + 1):
                m = n_to_m(n)
                if m is not None:
                    best_m = max(best_m, m)
            return best_m
    return None


def _scan_two_power_equation(B: int, r: int, A: int, s: int, C: int,
                             m_hi: int) -> list[tuple[int, int]]:
    out = []
    for m in range(m_hi + 1):
        rest = C - B * r ** m
        if rest == 0 or rest % A:
            continue
        val = rest // A
        if val < 1:
            continue
        n = _exact_log(val, s)
        if n is not None:
            out.append((m, n))
    return out


def power_map_intersection_exact(alpha, r: int, beta, s: int, x0, y0,
                                 scan_bound: int = 64) -> IntersectionReport:
    """Exact intersection of the orbits of x0 under alpha*X^r and y0 under
    beta*X^s, via the exponent-lattice coset analysis.

    Index pairs are counted from (0, 0) (the starting points themselves).
    Degenerate inputs (a finite orbit on either side, e.g. x0 in {0, +-1}
    up to the scaling torsion) get a finite cyclic analysis instead.
    """
    alpha, beta, x0, y0 = Fraction(alpha), Fraction(beta), Fraction(x0), Fraction(y0)
    if r < 2 or s < 2:
        raise ValueError("power maps require exponents >= 2")
    if alpha == 0 or beta == 0:
        raise ValueError("leading coefficients must be nonzero")
    w_f = alpha * x0 ** (r - 1) if x0 else Fraction(0)
    w_g = beta * y0 ** (s - 1) if y0 else Fraction(0)
    f_finite = x0 == 0 or w_f in (1, -1)
    g_finite = y0 == 0 or w_g in (1, -1)
    if f_finite or g_finite:
        return _degenerate_power_report(alpha, r, beta, s, x0, y0,
                                        f_finite, g_finite)

    tau = y0 / x0
    sol = solve_exponent_system([w_f, w_g], tau)
    if sol is None:
        return IntersectionReport((), None, PROVEN)
    e0, basis = sol
    U0, V0 = e0[0], -e0[1]
    if len(basis) > 1:
        raise AssertionError("rank-2 relation lattice for non-torsion scalars")

    vec_wf, vec_wg = _ScalarVec(w_f), _ScalarVec(w_g)
    vec_tau = _ScalarVec(tau)

    def is_hit(m: int, n: int) -> bool:
        return _monomial_equal(vec_wf, _exp_sum(r, m), vec_wg, -_exp_sum(s, n),
                               vec_tau)

    def point(m: int, n: int) -> FinitePoint:
        U = _exp_sum(r, m)
        bits = U * max(abs(w_f.numerator).bit_length(),
                       w_f.denominator.bit_length()) \
            + max(abs(x0.numerator).bit_length(), x0.denominator.bit_length())
        if bits > _VALUE_BIT_CAP:
            return FinitePoint(None, m, n)
        return FinitePoint(x0 * w_f ** U, m, n)

    if not basis:
        m = _invert_exp_sum(U0, r)
        n = _invert_exp_sum(V0, s)
        pts = (point(m, n),) if m is not None and n is not None else ()
        return IntersectionReport(pts, None, PROVEN)

    a, b = basis[0][0], -basis[0][1]
    if a == 0 or b == 0:
        raise AssertionError("degenerate relation direction for non-torsion scalars")
    if a < 0:
        a, b = -a, -b
    # S = {(U0 + k a, V0 + k b)}; eliminating k:
    #   b(s-1) r^m - a(r-1) s^n = (r-1)(s-1)(b U0 - a V0) + b(s-1) - a(r-1)
    B = b * (s - 1)
    A = -a * (r - 1)
    C = (r - 1) * (s - 1) * (b * U0 - a * V0) + B + A

    if C == 0:
        shape = _solve_equal_powers(B, r, -A, s)
        if shape is None:
            return IntersectionReport((), None, PROVEN)
        if shape[0] == "point":
            m, n = shape[1], shape[2]
            if m >= 0 and n >= 0 and is_hit(m, n):
                return IntersectionReport((point(m, n),), None, PROVEN)
            return IntersectionReport((), None, PROVEN)
        _, m0, n0, dm, dn = shape
        return _assemble_family(alpha, r, beta, s, x0, y0, vec_wf, vec_wg,
                                vec_tau, U0, a, m0, n0, dm, dn, is_hit, point)

    bound = _m_bound_certificate(B, r, A, s, C)
    proven = bound is not None
    hi = max(scan_bound, bound or 0) if proven else scan_bound
    raw = _scan_two_power_equation(B, r, A, s, C, hi)
    pts = tuple(point(m, n) for (m, n) in raw
                if m >= 0 and n >= 0 and is_hit(m, n))
    return IntersectionReport(pts, None, PROVEN if proven else BOUNDED)


def _assemble_family(alpha, r, beta, s, x0, y0, vec_wf, vec_wg, vec_tau,
                     U0, a, m0, n0, dm, dn, is_hit, point) -> IntersectionReport:
    """Organize the ray (m0 + j dm, n0 + j dn), j >= 0, after the integer
    congruence filter a | U(m) - U0, into extras plus one progression."""
    # shift to the first ray point with both indices >= 0
    # (-(a // b) is ceil(-a/b) for b > 0)
    if dm <= 0 or dn <= 0:
        raise AssertionError("equal-power ray must increase in both indices")
    j_start = max(-(m0 // dm), -(n0 // dn))
    m0, n0 = m0 + j_start * dm, n0 + j_start * dn

    # membership along the ray reduces to U(m_j) == U0 (mod a); track
    # r^(m_j) modulo a*(r-1) to evaluate it, and find the eventual cycle
    modulus = abs(a) * (r - 1)
    state = pow(r, m0, modulus)
    step_factor = pow(r, dm, modulus)
    seen: dict[int, int] = {}
    good_js: list[int] = []
    j = 0
    cycle_start = cycle_len = None
    states = []
    while state not in seen:
        seen[state] = j
        states.append(state)
        if (state - 1) % (r - 1) == 0 and ((state - 1) // (r - 1) - U0) % abs(a) == 0:
            good_js.append(j)
        state = state * step_factor % modulus
        j += 1
    cycle_start = seen[state]
    cycle_len = j - cycle_start

    pre_good = [g for g in good_js if g < cycle_start]
    cyc_good = [g for g in good_js if g >= cycle_start]
    extras = []
    for g in pre_good:
        m, n = m0 + g * dm, n0 + g * dn
        if is_hit(m, n):
            extras.append(point(m, n))
    if not cyc_good:
        return IntersectionReport(tuple(extras), None, PROVEN)

    # the periodic survivors: verify them and try to merge into one family
    verified = [g for g in cyc_good if is_hit(m0 + g * dm, n0 + g * dn)]
    if not verified:
        return IntersectionReport(tuple(extras), None, PROVEN)
    base_j = verified[0]
    fam_base = (m0 + base_j * dm, n0 + base_j * dn)
    fam_step = (cycle_len * dm, cycle_len * dn)
    witness, wit_ok = _family_witness(alpha, r, beta, s, fam_step)
    single_class = len(verified) == 1
    completeness = PROVEN if (single_class and wit_ok) else BOUNDED
    note = None
    if not single_class:
        note = ("multiple residue classes survive the congruence filter; "
                "only the first is reported as a family")
    family = InfiniteFamily(fam_base, fam_step, witness, wit_ok)
    return IntersectionReport(tuple(extras), family, completeness, note)


def _scalar_power_equal(alpha: Fraction, ea: int, beta: Fraction, eb: int) -> bool:
    """alpha^ea == beta^eb without constructing the powers."""
    va, vb = _ScalarVec(alpha), _ScalarVec(beta)
    sign, vec = va.pow_mul(ea, vb, -eb)
    return sign == 1 and not vec


def _family_witness(alpha, r, beta, s, step):
    """The common iterate f^(dm) = g^(dn) for the family step, verified.

    Equality of alpha X^r iterates is monomial equality: equal degrees
    r^dm = s^dn plus equal accumulated coefficients.
    """
    dm, dn = step
    if r ** dm != s ** dn:
        return None, False
    if not _scalar_power_equal(Fraction(alpha), _exp_sum(r, dm),
                               Fraction(beta), _exp_sum(s, dn)):
        return None, False
    degree = r ** dm
    if degree > _WITNESS_DEGREE_CAP:
        return None, True
    coeff = Fraction(alpha) ** _exp_sum(r, dm)
    return RatPoly.monomial(degree, coeff), True


def _orbit_values_finite(coef: Fraction, exp: int, start: Fraction):
    """Full value list of a provably finite power-map orbit (cycle closed)."""
    values = [start]
    seen = {start: 0}
    while True:
        nxt = coef * values[-1] ** exp
        if nxt in seen:
            return values, seen
        seen[nxt] = len(values)
        values.append(nxt)


def _degenerate_power_report(alpha, r, beta, s, x0, y0,
                             f_finite, g_finite) -> IntersectionReport:
    note = "degenerate input: finite orbit on " + (
        "both sides" if f_finite and g_finite else
        ("the first side" if f_finite else "the second side"))
    if f_finite and g_finite:
        f_vals, f_seen = _orbit_values_finite(alpha, r, x0)
        g_vals, g_seen = _orbit_values_finite(beta, s, y0)
        pts = []
        for v, m in sorted(f_seen.items(), key=lambda kv: kv[1]):
            if v in g_seen:
                pts.append(FinitePoint(v, m, g_seen[v]))
        return IntersectionReport(tuple(pts), None, PROVEN, note)
    if g_finite:
        # swap so the finite side is f, then transpose indices back
        rep = _degenerate_power_report(beta, s, alpha, r, y0, x0, True, False)
        pts = tuple(FinitePoint(p.value, p.n, p.m) for p in rep.finite_points)
        return IntersectionReport(pts, None, rep.completeness, note)
    f_vals, f_seen = _orbit_values_finite(alpha, r, x0)
    w_g = beta * y0 ** (s - 1)
    increasing = abs(w_g) > 1
    pts = []
    for v, m in sorted(f_seen.items(), key=lambda kv: kv[1]):
        z = y0
        n = 0
        while True:
            if z == v:
                pts.append(FinitePoint(v, m, n))
                break
            if (increasing and abs(z) > abs(v)) or \
               (not increasing and abs(z) < abs(v)):
                break
            z = beta * z ** s
            n += 1
    return IntersectionReport(tuple(pts), None, PROVEN, note)


# ---------------------------------------------------------------------------
# general orbit intersection


def orbit_intersection(f: RatPoly, g: RatPoly, x0, y0,
                       budget: OrbitBudget = OrbitBudget()) -> IntersectionReport:
    """Intersect two orbits exactly; completeness is Proven only when both
    maps are power-like with a shared conjugating witness, in which case
    the exact lattice solver takes over."""
    if f.degree < 2 or g.degree < 2:
        raise ValueError("orbit intersection requires degrees >= 2")
    x0, y0 = Fraction(x0), Fraction(y0)
    nf_f = conjugacy_normal_form(f)
    nf_g = conjugacy_normal_form(g)
    if isinstance(nf_f, PowerLike) and isinstance(nf_g, PowerLike) \
            and nf_f.witness == nf_g.witness:
        ell = nf_f.witness
        rep = power_map_intersection_exact(
            nf_f.alpha, f.degree, nf_g.alpha, g.degree, ell(x0), ell(y0))
        inv = ell.inverse()
        pts = tuple(FinitePoint(as_fraction(inv(p.value)) if p.value is not None
                                else None, p.m, p.n)
                    for p in rep.finite_points)
        family = rep.infinite_family
        if family is not None:
            dm, dn = family.step
            witness = None
            if f.degree ** dm <= _WITNESS_DEGREE_CAP:
                witness = iterate(f, dm)
                assert witness == iterate(g, dn)
            family = InfiniteFamily(family.base, family.step, witness,
                                    family.witness_verified)
        return IntersectionReport(pts, family, rep.completeness, rep.note)

    trace_f = orbit(f, x0, budget)
    trace_g = orbit(g, y0, budget)
    index_g: dict[Fraction, int] = {}
    for i, v in enumerate(trace_g.points):
        index_g.setdefault(v, i)
    hits = []
    seen_f = set()
    for m, v in enumerate(trace_f.points):
        if v in seen_f:
            continue
        seen_f.add(v)
        if v in index_g:
            hits.append((m, index_g[v], v))
    hits.sort()
    family = None
    covered = set()
    if len(hits) >= 3:
        dm = hits[1][0] - hits[0][0]
        dn = hits[1][1] - hits[0][1]
        if dm > 0 and dn > 0 and all(
                hits[i + 1][0] - hits[i][0] == dm and
                hits[i + 1][1] - hits[i][1] == dn for i in range(len(hits) - 1)):
            if f.degree ** dm == g.degree ** dn and \
                    f.degree ** dm <= _WITNESS_DEGREE_CAP:
                wit = iterate(f, dm)
                if wit == iterate(g, dn):
                    family = InfiniteFamily((hits[0][0], hits[0][1]), (dm, dn), wit)
                    covered = set(range(len(hits)))
    pts = tuple(FinitePoint(v, m, n) for i, (m, n, v) in enumerate(hits)
                if i not in covered)
    return IntersectionReport(pts, family, BOUNDED)


# ---------------------------------------------------------------------------
# common iterates and commensurability


@dataclass(frozen=True)
class CommonIterateNever:
    reason: str


@dataclass(frozen=True)
class CommonIterateFound:
    m1: int
    m2: int
    witness: RatPoly


@dataclass(frozen=True)
class CommonIterateUnknown:
    bound: int


def _degree_dependence(d1: int, d2: int) -> tuple[int, int] | None:
    """Minimal (m1, m2) with d1^m1 == d2^m2, or None when independent."""
    f1, f2 = factorint(d1), factorint(d2)
    if set(f1) != set(f2):
        return None
    ratio = None
    for p, e1 in f1.items():
        here = Fraction(f2[p], e1)
        if ratio is None:
            ratio = here
        elif ratio != here:
            return None
    return ratio.numerator, ratio.denominator


def common_iterate(f: RatPoly, g: RatPoly, K: int = 8,
                   degree_cap: int = 100_000):
    """Decide whether some iterate of f equals some iterate of g.

    Never is exact (multiplicatively independent degrees make equal
    iterate degrees impossible); Found carries the verified common
    iterate; Unknown reports an exhausted bound, since no universal a
    priori bound on the minimal exponents is available.
    """
    d1, d2 = f.degree, g.degree
    if d1 < 2 or d2 < 2:
        raise ValueError("common_iterate requires degrees >= 2")
    dep = _degree_dependence(d1, d2)
    if dep is None:
        return CommonIterateNever(
            f"degrees {d1} and {d2} are multiplicatively independent: no "
            f"m, n >= 1 satisfy {d1}^m = {d2}^n")
    m1s, m2s = dep
    for k in range(1, K + 1):
        if d1 ** (k * m1s) > degree_cap:
            return CommonIterateUnknown(k - 1)
        lhs = iterate(f, k * m1s)
        rhs = iterate(g, k * m2s)
        if lhs == rhs:
            return CommonIterateFound(k * m1s, k * m2s, lhs)
    return CommonIterateUnknown(K)


def commensurability_witness(f: RatPoly, g: RatPoly, m: int, N: int = 8,
                             degree_cap: int = 100_000):
    """Search n <= N and h with g^(n) = f^(m) o h; exact verification."""
    if f.degree < 2 or g.degree < 2:
        raise ValueError("commensurability requires degrees >= 2")
    if m < 1:
        raise ValueError("m must be positive")
    fm = iterate(f, m)
    dfm = fm.degree
    for n in range(1, N + 1):
        dgn = g.degree ** n
        if dgn > degree_cap:
            break
        if dgn % dfm:
            continue
        gn = iterate(g, n)
        hs = left_divide(gn, fm)
        if hs:
            return n, hs[0]
    return None


# ---------------------------------------------------------------------------
# Ritt certificates for common iterates


@dataclass(frozen=True)
class RittCertificate:
    """Data certifying a common iterate: f_i = -beta + eps_i g^(n_i)(X+beta)
    with g supported on exponents congruent to r mod s and eps_i^s = 1."""
    beta: Fraction
    g: RatPoly
    r: int
    s: int
    eps1: Fraction
    eps2: Fraction
    n1: int
    n2: int


def verify_ritt_certificate(f1: RatPoly, f2: RatPoly, cert: RittCertificate,
                            m1: int, m2: int) -> bool:
    """Check the certificate identities and side conditions exactly."""
    if m1 < 1 or m2 < 1 or cert.n1 < 1 or cert.n2 < 1:
        return False
    if cert.n1 * m1 != cert.n2 * m2:
        return False
    if cert.r < 0 or cert.s < 0:
        return False
    # support condition: g in X^r * Q[X^s]
    for i, c in enumerate(cert.g.coeffs):
        if c == 0:
            continue
        if cert.s == 0:
            if i != cert.r:
                return False
        elif (i - cert.r) % cert.s != 0:
            return False
    shift = RatPoly([cert.beta, 1])
    for fi, eps, ni, mi in ((f1, cert.eps1, cert.n1, m1),
                            (f2, cert.eps2, cert.n2, m2)):
        di = fi.degree
        if di < 2:
            return False
        if cert.s > 0 and Fraction(eps) ** cert.s != 1:
            return False
        if Fraction(eps) ** ((di ** mi - 1) // (di - 1)) != 1:
            return False
        built = compose(iterate(cert.g, ni), shift) * eps - RatPoly.constant(cert.beta)
        if built != fi:
            return False
    return True
