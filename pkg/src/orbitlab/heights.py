"""Weil and canonical heights over Q, with certified error bounds.

The Weil height of p/q in lowest terms is log max(|p|, |q|).  For a
polynomial f of degree d >= 2 the canonical height of x is the limit of
h(f^(k)(x))/d^k; the implementation returns the k-th truncation with the
telescoping tail bound max(C_up, C_low) / (d^k (d-1)), where the gap
constants certify

    d*h(z) - C_low  <=  h(f(z))  <=  d*h(z) + C_up     for all rational z.

Heights are floats with a small additive slop folded into the radius;
the exact_zero flag arises only from an exactly detected cycle, never
from numerics.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .poly import RatPoly
from .scalars import as_fraction

__all__ = [
    "HeightValue", "GapConstants", "BitBudgetExceeded",
    "weil_height", "gap_constants", "canonical_height", "is_preperiodic",
    "DEFAULT_BIT_BUDGET",
]

DEFAULT_BIT_BUDGET = 10_000_000

# absolute slop added to every float radius to cover log/divide rounding
_FLOAT_SLOP = 1e-12


@dataclass(frozen=True)
class HeightValue:
    """An interval certificate: the true height lies in value +- radius."""
    value: float
    radius: float
    exact_zero: bool = False


@dataclass(frozen=True)
class GapConstants:
    """Certified constants: d*h(z) - c_low <= h(f(z)) <= d*h(z) + c_up."""
    c_up: float
    c_low: float


class BitBudgetExceeded(RuntimeError):
    """Iteration grew past the bit budget; carries the progress made."""

    def __init__(self, k_done: int, k_needed: int):
        super().__init__(
            f"height iteration exceeded the bit budget after {k_done} of "
            f"{k_needed} steps")
        self.k_done = k_done
        self.k_needed = k_needed


def weil_height(x) -> float:
    """log max(|p|, |q|) for x = p/q in lowest terms; h(0) = 0."""
    x = Fraction(x)
    m = max(abs(x.numerator), x.denominator)
    return math.log(m) if m > 1 else 0.0


def _coeff_data(f: RatPoly):
    """Integer coefficients A_i with f = (sum A_i X^i) / M, M = lcm of denoms."""
    coeffs = [as_fraction(c) for c in f.coeffs]
    M = 1
    for c in coeffs:
        M = M * c.denominator // math.gcd(M, c.denominator)
    return [int(c * M) for c in coeffs], M


def gap_constants(f: RatPoly) -> GapConstants:
    """Explicit certified gap constants for deg f >= 2.

    Upper: |numerator of f(p/q)| <= (d+1) max|A_i| max(|p|,|q|)^d over the
    denominator M q^d, and reducing a fraction only lowers its height.
    Lower: away from a coefficient threshold the leading term dominates;
    inside it the denominator does; cancellation in lowest terms is at
    most gcd(N, M q^d) <= |A_d|^d M.
    """
    d = f.degree
    if d < 2:
        raise ValueError("gap constants require deg f >= 2")
    if f == RatPoly.monomial(d):
        # pure power map: heights transform exactly
        return GapConstants(0.0, 0.0)
    ints, M = _coeff_data(f)
    abs_ints = [abs(v) for v in ints]
    a_d = abs_ints[-1]
    c_up = math.log(max((d + 1) * max(abs_ints), M)) + 1e-9
    lower_sum = sum(abs_ints[:-1])
    b0 = Fraction(2 * lower_sum, a_d)
    b = max(Fraction(1), b0)
    c0 = min(Fraction(M) / b ** d, Fraction(a_d, 2))
    c_low = math.log(Fraction(a_d ** d * M) / c0) + 1e-9
    return GapConstants(c_up, max(0.0, c_low))


def _escape_bound(f: RatPoly) -> int:
    """Integer N such that max(|p|,|q|) > N forces the orbit to escape.

    Once h(z) > C_low/(d-1) the height strictly increases forever, so no
    preperiodic point lies beyond the bound (threshold 2 C_low/(d-1) + 1).
    """
    d = f.degree
    gc = gap_constants(f)
    threshold = 2.0 * gc.c_low / (d - 1) + 1.0
    if threshold > 500.0:
        return 1 << int(threshold * 1.4427) + 2
    return int(math.exp(threshold)) + 2


def _orbit_cycle_scan(f: RatPoly, x: Fraction, bound: int):
    """Iterate until a repeat (preperiodic) or the escape bound (wandering)."""
    seen = {}
    z = Fraction(x)
    step = 0
    while True:
        if z in seen:
            return True
        if max(abs(z.numerator), z.denominator) > bound:
            return False
        seen[z] = step
        z = as_fraction(f(z))
        step += 1


def is_preperiodic(f: RatPoly, x) -> bool:
    """Exact decision via cycle detection under the certified escape bound."""
    if f.degree < 2:
        raise ValueError("preperiodicity test requires deg f >= 2")
    return _orbit_cycle_scan(f, Fraction(x), _escape_bound(f))


def canonical_height(f: RatPoly, x, target_radius: float = 1e-9,
                     bit_budget: int | None = None) -> HeightValue:
    """h(f^(k)(x)) / d^k with k chosen so the telescoping tail fits the radius.

    Preperiodic points are detected exactly first and reported as exact
    zero.  Intermediate values whose numerator and denominator outgrow the
    bit budget (ORBITLAB_BIT_BUDGET overrides the default) raise
    BitBudgetExceeded with the progress made.
    """
    d = f.degree
    if d < 2:
        raise ValueError("canonical height requires deg f >= 2")
    if not target_radius > 0:
        raise ValueError("target radius must be positive")
    if bit_budget is None:
        bit_budget = int(os.environ.get("ORBITLAB_BIT_BUDGET", DEFAULT_BIT_BUDGET))
    x = Fraction(x)
    if is_preperiodic(f, x):
        return HeightValue(0.0, 0.0, exact_zero=True)
    gc = gap_constants(f)
    cmax = max(gc.c_up, gc.c_low)
    k = 0
    scale = 1
    while cmax / (scale * (d - 1)) > target_radius:
        k += 1
        scale *= d
    z = x
    for i in range(k):
        z = as_fraction(f(z))
        if z.numerator.bit_length() + z.denominator.bit_length() > bit_budget:
            raise BitBudgetExceeded(i + 1, k)
    value = weil_height(z) / scale
    radius = cmax / (scale * (d - 1)) + _FLOAT_SLOP
    return HeightValue(value, radius, exact_zero=False)
