"""Integer factorization: trial division, then Brent's variant of Pollard rho.

Factorization feeds the exponent-lattice machinery, where completeness of
the relation basis is part of the contract; an input that cannot be fully
factored within the time budget raises :class:`FactorizationError` rather
than producing an incomplete lattice.
"""

from __future__ import annotations

import math
import os
import random
import time

__all__ = [
    "FactorizationError", "factorint", "divisors",
    "is_probable_prime", "DEFAULT_TRIAL_BOUND",
]

DEFAULT_TRIAL_BOUND = 10 ** 6

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


class FactorizationError(ValueError):
    """A generator (or coefficient) could not be factored within budget."""


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24 via the standard base set."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int, rng: random.Random, deadline: float) -> int | None:
    """A nontrivial factor of composite odd n, or None on timeout."""
    if n % 2 == 0:
        return 2
    while time.monotonic() < deadline:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            if time.monotonic() >= deadline:
                return None
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            if time.monotonic() >= deadline:
                return None
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def factorint(n: int, trial_bound: int | None = None,
              time_budget: float = 10.0) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; 1 maps to {}.

    Honors the ORBITLAB_FACTOR_BOUND environment variable for the trial
    division bound when no explicit bound is given.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    if trial_bound is None:
        trial_bound = int(os.environ.get("ORBITLAB_FACTOR_BOUND", DEFAULT_TRIAL_BOUND))
    n = abs(n)
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 5
    while p * p <= n and p <= trial_bound:
        for q in (p, p + 2):
            while n % q == 0:
                factors[q] = factors.get(q, 0) + 1
                n //= q
        p += 6
    if n == 1:
        return factors
    if n <= trial_bound * trial_bound or is_probable_prime(n):
        # anything surviving trial division below bound^2 is prime
        factors[n] = factors.get(n, 0) + 1
        return factors
    deadline = time.monotonic() + time_budget
    rng = random.Random(0xD1C5)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _brent_rho(m, rng, deadline)
        if d is None or d == m:
            raise FactorizationError(f"could not factor {m} within time budget")
        stack.append(d)
        stack.append(m // d)
    return factors


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of |n|."""
    facs = factorint(n)
    divs = [1]
    for p, e in facs.items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)
