"""Exponent lattices: integer relations among nonzero rationals.

The relation lattice of generators x_1..x_n is {e in Z^n : prod x_i^e_i = 1}.
Each generator factors into signed prime powers; the free part of the
lattice is the integer kernel of the prime-exponent matrix, computed by
Hermite reduction with a unimodular transform (so completeness of the
basis is a theorem, not a heuristic), and signs contribute parity
constraints resolved by an index-2 sublattice step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intfactor import FactorizationError, factorint

__all__ = [
    "ExponentLattice", "multiplicative_lattice", "solve_exponent_system",
    "hermite_with_transform", "integer_kernel",
]


def hermite_with_transform(rows: list[list[int]]):
    """Row-style Hermite reduction: returns (H, U, rank) with U*M = H,
    U unimodular, and the pivot rows of H in echelon form."""
    n = len(rows)
    width = len(rows[0]) if n else 0
    H = [list(r) for r in rows]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    pivot = 0
    for col in range(width):
        while True:
            nz = [i for i in range(pivot, n) if H[i][col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(H[i][col]))
            base = nz[0]
            for i in nz[1:]:
                q = H[i][col] // H[base][col]
                if q:
                    for j in range(width):
                        H[i][j] -= q * H[base][j]
                    for j in range(n):
                        U[i][j] -= q * U[base][j]
        nz = [i for i in range(pivot, n) if H[i][col] != 0]
        if not nz:
            continue
        i0 = nz[0]
        H[pivot], H[i0] = H[i0], H[pivot]
        U[pivot], U[i0] = U[i0], U[pivot]
        if H[pivot][col] < 0:
            H[pivot] = [-v for v in H[pivot]]
            U[pivot] = [-v for v in U[pivot]]
        pivot += 1
    return H, U, pivot


def integer_kernel(rows: list[list[int]]) -> list[list[int]]:
    """Basis of {e in Z^n : e * M = 0} for the matrix with the given rows."""
    if not rows:
        return []
    H, U, rank = hermite_with_transform(rows)
    return [U[i] for i in range(rank, len(rows))]


@dataclass(frozen=True)
class ExponentLattice:
    """Relation data for a tuple of nonzero rationals.

    relation_basis generates every true relation prod x^e = 1 (signs
    included); sign_relations lists basis vectors of the absolute-value
    relation lattice whose sign product is -1 (so they square into
    relation_basis).
    """
    generators: tuple[Fraction, ...]
    relation_basis: tuple[tuple[int, ...], ...]
    sign_relations: tuple[tuple[int, ...], ...]


def _signed_factorizations(xs, factor_bound=None, time_budget=10.0):
    vecs = []
    signs = []
    primes: list[int] = []
    index = {}
    for k, x in enumerate(xs):
        x = Fraction(x)
        if x == 0:
            raise ValueError("exponent lattices require nonzero generators")
        signs.append(-1 if x < 0 else 1)
        try:
            num = factorint(x.numerator, trial_bound=factor_bound,
                            time_budget=time_budget)
            den = factorint(x.denominator, trial_bound=factor_bound,
                            time_budget=time_budget)
        except FactorizationError as exc:
            raise FactorizationError(f"generator {x} (index {k}): {exc}") from exc
        vec = {}
        for p, e in num.items():
            vec[p] = vec.get(p, 0) + e
        for p, e in den.items():
            vec[p] = vec.get(p, 0) - e
        for p in vec:
            if p not in index:
                index[p] = len(primes)
                primes.append(p)
        vecs.append(vec)
    matrix = [[vec.get(p, 0) for p in primes] for vec in vecs]
    return matrix, signs, primes


def _sign_of_combo(signs, e) -> int:
    parity = sum(ei for s, ei in zip(signs, e) if s < 0) % 2
    return -1 if parity else 1


def multiplicative_lattice(xs, factor_bound: int | None = None,
                           time_budget: float = 10.0) -> ExponentLattice:
    """Relation basis plus sign torsion for nonzero rational generators.

    Every returned basis vector e satisfies prod xs[i]^e[i] = 1 exactly
    (asserted); completeness follows from the unimodular kernel
    computation plus the parity handling of signs.
    """
    xs = tuple(Fraction(x) for x in xs)
    matrix, signs, _ = _signed_factorizations(xs, factor_bound, time_budget)
    free_basis = integer_kernel(matrix)
    plus = [v for v in free_basis if _sign_of_combo(signs, v) == 1]
    minus = [v for v in free_basis if _sign_of_combo(signs, v) == -1]
    basis = list(plus)
    if minus:
        anchor = minus[0]
        for v in minus[1:]:
            basis.append([a - b for a, b in zip(v, anchor)])
        basis.append([2 * a for a in anchor])
    for e in basis:
        prod = Fraction(1)
        for x, ei in zip(xs, e):
            prod *= x ** ei
        assert prod == 1, "relation basis failed exact verification"
    return ExponentLattice(
        generators=xs,
        relation_basis=tuple(tuple(v) for v in basis),
        sign_relations=tuple(tuple(v) for v in minus),
    )


def solve_exponent_system(xs, target, factor_bound: int | None = None):
    """All integer e with prod xs[i]^e[i] = target, as (e0, lattice-basis).

    Returns None when no solution exists; otherwise e0 is a particular
    solution and the basis generates the full solution lattice (the
    sign-respecting relation lattice of the generators).
    """
    xs = tuple(Fraction(x) for x in xs)
    target = Fraction(target)
    if target == 0:
        raise ValueError("target must be nonzero")
    matrix, signs, primes = _signed_factorizations(xs, factor_bound)
    try:
        t_num = factorint(target.numerator, trial_bound=factor_bound)
        t_den = factorint(target.denominator, trial_bound=factor_bound)
    except FactorizationError as exc:
        raise FactorizationError(f"target {target}: {exc}") from exc
    t_vec = {}
    for p, e in t_num.items():
        t_vec[p] = t_vec.get(p, 0) + e
    for p, e in t_den.items():
        t_vec[p] = t_vec.get(p, 0) - e
    if any(p not in primes for p in t_vec):
        return None
    t_row = [t_vec.get(p, 0) for p in primes]

    H, U, rank = hermite_with_transform(matrix)
    n = len(xs)
    # solve y * H = t_row over the pivot rows, integrally
    y = [0] * n
    residue = list(t_row)
    for i in range(rank):
        col = next(j for j in range(len(H[i])) if H[i][j] != 0)
        if residue[col] % H[i][col] != 0:
            return None
        coef = residue[col] // H[i][col]
        y[i] = coef
        for j in range(len(residue)):
            residue[j] -= coef * H[i][j]
    if any(residue):
        return None
    e0 = [sum(y[i] * U[i][j] for i in range(n)) for j in range(n)]

    lat = multiplicative_lattice(xs, factor_bound)
    if _sign_of_combo(signs, e0) != (-1 if target < 0 else 1):
        free_basis = integer_kernel(matrix)
        flip = next((v for v in free_basis if _sign_of_combo(signs, v) == -1), None)
        if flip is None:
            return None
        e0 = [a + b for a, b in zip(e0, flip)]
    check = Fraction(1)
    for x, ei in zip(xs, e0):
        check *= x ** ei
    assert check == target, "particular solution failed exact verification"
    return e0, [list(v) for v in lat.relation_basis]
