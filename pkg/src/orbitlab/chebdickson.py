"""Normalized Chebyshev polynomials T_n and Dickson polynomials D_n(X, a).

T_n is the monic variant pinned down by T_n(X + 1/X) = X^n + 1/X^n, so
T_0 = 2 (the defining equation forces it at n = 0) and the classical
polynomial C_n relates by 2*C_n(X/2) = T_n(X).  D_n(X, a) satisfies
D_n(U + V, UV) = U^n + V^n, hence D_n(X, 0) = X^n and the scaling law
D_n(aX, a^2) = a^n T_n(X).
"""

from __future__ import annotations

import functools
import threading
from fractions import Fraction

from .poly import RatPoly

__all__ = ["chebyshev_t", "dickson", "classical_chebyshev"]

_cheb_lock = threading.Lock()
_cheb_cache: list[RatPoly] = []


def chebyshev_t(n: int) -> RatPoly:
    """T_n via T_0 = 2, T_1 = X, T_{k+1} = X*T_k - T_{k-1}.  Monic for n >= 1."""
    if n < 0:
        raise ValueError("chebyshev_t requires n >= 0")
    with _cheb_lock:
        if not _cheb_cache:
            _cheb_cache.extend([RatPoly.constant(2), RatPoly.x()])
        x = RatPoly.x()
        while len(_cheb_cache) <= n:
            _cheb_cache.append(x * _cheb_cache[-1] - _cheb_cache[-2])
        return _cheb_cache[n]


def dickson(n: int, a) -> RatPoly:
    """D_n(X, a) via D_0 = 2, D_1 = X, D_{k+1} = X*D_k - a*D_{k-1}."""
    if n < 0:
        raise ValueError("dickson requires n >= 0")
    prev, cur = RatPoly.constant(2), RatPoly.x()
    if n == 0:
        return prev
    x = RatPoly.x()
    for _ in range(n - 1):
        prev, cur = cur, x * cur - RatPoly.constant(a) * prev
    return cur


@functools.lru_cache(maxsize=None)
def classical_chebyshev(n: int) -> RatPoly:
    """C_n = (1/2) * T_n(2X), the cos(n*theta) normalization (lc = 2^{n-1})."""
    from .poly import compose
    two_x = RatPoly([0, 2])
    return compose(chebyshev_t(n), two_x) * Fraction(1, 2)
