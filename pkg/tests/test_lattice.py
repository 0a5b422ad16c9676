from fractions import Fraction as F

import pytest

from orbitlab import ExponentLattice, multiplicative_lattice, solve_exponent_system
from orbitlab.intfactor import (FactorizationError, divisors, factorint,
                                is_probable_prime)
from orbitlab.lattice import hermite_with_transform, integer_kernel


class TestFactorint:
    def test_small(self):
        assert factorint(360) == {2: 3, 3: 2, 5: 1}
        assert factorint(1) == {}
        assert factorint(-12) == {2: 2, 3: 1}

    def test_larger_composite(self):
        n = 1000003 * 999983  # both prime, above the default trial range split
        assert factorint(n) == {999983: 1, 1000003: 1}

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            factorint(0)

    def test_divisors(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]

    def test_probable_prime(self):
        assert is_probable_prime(2 ** 61 - 1)
        assert not is_probable_prime(2 ** 67 - 1)


class TestIntegerKernel:
    def test_hermite_transform_invariant(self):
        rows = [[2, 4, 6], [1, 2, 3], [0, 1, 1]]
        H, U, rank = hermite_with_transform(rows)
        # U * M = H exactly
        for i in range(3):
            for j in range(3):
                assert sum(U[i][k] * rows[k][j] for k in range(3)) == H[i][j]
        assert rank == 2

    def test_kernel_members_annihilate(self):
        rows = [[1, 2], [2, 4], [3, 5]]
        for e in integer_kernel(rows):
            assert all(sum(e[i] * rows[i][j] for i in range(3)) == 0
                       for j in range(2))

    def test_kernel_completeness_small(self):
        # kernel of [[1],[1]] is spanned by (1,-1); check saturation:
        # (1,-1) itself (not only multiples) must be generated
        basis = integer_kernel([[1], [1]])
        assert len(basis) == 1 and sorted(map(abs, basis[0])) == [1, 1]


class TestMultiplicativeLattice:
    def test_two_and_eight(self):
        lat = multiplicative_lattice([2, 8])
        assert len(lat.relation_basis) == 1
        e = lat.relation_basis[0]
        assert sorted(map(abs, e)) == [1, 3]
        assert F(2) ** e[0] * F(8) ** e[1] == 1

    def test_independent_primes(self):
        lat = multiplicative_lattice([2, 3])
        assert lat.relation_basis == () and lat.sign_relations == ()

    def test_sign_torsion(self):
        lat = multiplicative_lattice([-1, 2])
        assert lat.relation_basis == ((2, 0),)
        assert lat.sign_relations == ((1, 0),)

    def test_mixed_sign_relation(self):
        lat = multiplicative_lattice([F(-2), F(4), F(-1, 2)])
        for e in lat.relation_basis:
            assert F(-2) ** e[0] * F(4) ** e[1] * F(-1, 2) ** e[2] == 1
        assert lat.relation_basis  # (-2) * (-1/2) = 1 gives a relation

    def test_rank_counts(self):
        lat = multiplicative_lattice([2, 4, 8])
        assert len(lat.relation_basis) == 2

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            multiplicative_lattice([2, 0])

    def test_factorization_failure_names_generator(self):
        # a 120-bit semiprime is out of reach for a tiny trial bound and a
        # near-zero rho budget
        p = 1267650600228229401496703205653  # prime
        q = 1267650600228229401496703205361  # prime
        with pytest.raises(FactorizationError) as err:
            multiplicative_lattice([F(p * q)], factor_bound=100,
                                   time_budget=0.05)
        assert "generator" in str(err.value)

    def test_counts_as_exponent_lattice(self):
        lat = multiplicative_lattice([F(6), F(10), F(15)])
        assert isinstance(lat, ExponentLattice)
        # 6*10*15 = 900 = (2*3*5)^2: relation (1,1,1,-? ) none of rank... check
        for e in lat.relation_basis:
            assert F(6) ** e[0] * F(10) ** e[1] * F(15) ** e[2] == 1


class TestSolveExponentSystem:
    def test_particular_plus_lattice(self):
        e0, basis = solve_exponent_system([F(2), F(4)], F(8))
        assert F(2) ** e0[0] * F(4) ** e0[1] == 8
        assert len(basis) == 1

    def test_no_solution_foreign_prime(self):
        assert solve_exponent_system([F(2), F(4)], F(3)) is None

    def test_no_solution_parity(self):
        # 4^a 16^b is a power of 4; 8 = 2^3 is not
        assert solve_exponent_system([F(4), F(16)], F(8)) is None

    def test_sign_flip_found(self):
        e0, basis = solve_exponent_system([F(-2), F(2)], F(4))
        assert F(-2) ** e0[0] * F(2) ** e0[1] == 4

    def test_sign_obstruction(self):
        # powers of 4 and 16 are positive; -4 needs a sign flip nobody has
        assert solve_exponent_system([F(4), F(16)], F(-4)) is None
