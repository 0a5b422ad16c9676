import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from orbitlab import (LaurentPoly, LinearMap, QuotientRing, RatPoly,
                      RingMismatchError, compose, conjugate, iterate,
                      laurent_compose)
from orbitlab.parser import parse_poly as P

from conftest import sympy_compose

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=6)
small_polys = st.lists(rationals, min_size=0, max_size=5).map(RatPoly)


class TestRingOps:
    def test_difference_of_squares(self):
        assert P("X+1") * P("X-1") == P("X^2-1")

    def test_add_cancels_constant(self):
        assert P("X^2-2") + RatPoly.constant(2) == P("X^2")

    def test_scalar_halves_multiply(self):
        assert P("1/2*X") * P("2X") == P("X^2")

    def test_degree_laws(self):
        p, q = P("X^3+1"), P("2X^2-X")
        assert (p + q).degree <= max(p.degree, q.degree)
        assert (p * q).degree == p.degree + q.degree

    def test_zero_polynomial(self):
        z = RatPoly.zero()
        assert z.degree == -1 and z.is_zero()
        assert z + P("X") == P("X")
        assert z * P("X^5") == z

    def test_mixed_quotient_rings_error(self):
        r1 = QuotientRing([1, 0, 1])
        r2 = QuotientRing([-2, 0, 1])
        a = RatPoly([r1.generator()])
        b = RatPoly([r2.generator()])
        with pytest.raises(RingMismatchError):
            a + b

    def test_rationals_embed_into_quotient_ring(self):
        ring = QuotientRing([-3, 0, 1])
        t = ring.generator()
        p = RatPoly([1, t])  # 1 + t*X
        assert (p * p).coeff(2) == ring.embed(3)  # t^2 = 3


class TestCompose:
    def test_square_of_shift(self):
        assert compose(P("X^2"), P("X+1")) == P("X^2+2X+1")

    def test_second_iterate_of_t2(self):
        # oracle: expand (X^2-2)^2 - 2 independently
        expected = sympy_compose(P("X^2-2"), P("X^2-2"))
        got = compose(P("X^2-2"), P("X^2-2"))
        assert got.coeffs == expected == (F(2), F(0), F(-4), F(0), F(1))

    def test_identity_inner(self):
        p = P("7X^5-3X+2/3")
        assert compose(p, RatPoly.x()) == p

    @given(small_polys, small_polys)
    @settings(max_examples=60, deadline=None)
    def test_compose_matches_sympy(self, a, b):
        assert compose(a, b).coeffs == sympy_compose(a, b)

    @given(st.lists(rationals, min_size=2, max_size=4).map(RatPoly),
           st.lists(rationals, min_size=2, max_size=4).map(RatPoly),
           st.lists(rationals, min_size=2, max_size=4).map(RatPoly))
    @settings(max_examples=40, deadline=None)
    def test_associativity(self, a, b, c):
        assert compose(compose(a, b), c) == compose(a, compose(b, c))

    def test_degree_multiplicativity(self):
        rng = random.Random(3)
        for _ in range(20):
            a = RatPoly([rng.randint(-3, 3) for _ in range(rng.randint(1, 4))] + [1])
            b = RatPoly([rng.randint(-3, 3) for _ in range(rng.randint(1, 4))] + [2])
            assert compose(a, b).degree == a.degree * b.degree


class TestIterate:
    def test_monomial(self):
        assert iterate(P("X^2"), 3) == P("X^8")

    def test_t2_twice(self):
        assert iterate(P("X^2-2"), 2) == P("X^4-4X^2+2")

    def test_zeroth_iterate_is_x(self):
        assert iterate(P("X^17-5"), 0) == RatPoly.x()

    def test_iterate_additivity(self):
        f = P("X^2+X-1")
        for m in range(4):
            for n in range(4):
                assert iterate(f, m + n) == compose(iterate(f, m), iterate(f, n))

    def test_degree_power_law(self):
        f = P("2X^3-1")
        for n in range(4):
            assert iterate(f, n).degree == 3 ** n


class TestLinearMap:
    def test_inverse_example(self):
        inv = LinearMap(2, 4).inverse()
        assert inv == LinearMap(F(1, 2), -2)

    def test_identity_and_negation(self):
        assert LinearMap(1, 0).inverse() == LinearMap(1, 0)
        assert LinearMap(-1, 0).inverse() == LinearMap(-1, 0)

    def test_double_inverse_and_composition(self):
        ell = LinearMap(F(3, 7), F(-2, 5))
        assert ell.inverse().inverse() == ell
        assert ell.compose(ell.inverse()).is_identity()
        assert ell.inverse().compose(ell).is_identity()

    def test_zero_slope_rejected(self):
        with pytest.raises(ValueError):
            LinearMap(0, 3)


class TestConjugate:
    def test_scaling_example(self):
        assert conjugate(P("2X^2"), LinearMap(2, 0)) == P("X^2")

    def test_identity_witness(self):
        f = P("X^5-X+3")
        assert conjugate(f, LinearMap(1, 0)) == f

    def test_shift_example(self):
        # ell o f o ell^{-1} with f = X^2-2, ell = X+1: f(X-1)+1 = X^2-2X
        assert conjugate(P("X^2-2"), LinearMap(1, 1)) == P("X^2-2X")

    def test_respects_iteration(self):
        f = P("X^3+X+1")
        ell = LinearMap(F(2, 3), 5)
        for n in range(5):
            assert conjugate(iterate(f, n), ell) == iterate(conjugate(f, ell), n)


class TestLaurent:
    def test_square_of_symmetric(self):
        phi = LaurentPoly({1: 1, -1: 1})
        assert laurent_compose(P("X^2"), phi) == LaurentPoly({2: 1, 0: 2, -2: 1})

    def test_t2_defining_identity(self):
        phi = LaurentPoly({1: 1, -1: 1})
        assert laurent_compose(P("X^2-2"), phi) == LaurentPoly({2: 1, -2: 1})

    def test_constant_outer(self):
        phi = LaurentPoly({3: F(1, 2), -5: 7})
        assert laurent_compose(P("4"), phi) == LaurentPoly({0: 4})

    def test_no_zero_terms_stored(self):
        p = LaurentPoly({2: 1, 0: 3}) - LaurentPoly({2: 1})
        assert p.terms == {0: F(3)}

    @given(small_polys, small_polys)
    @settings(max_examples=40, deadline=None)
    def test_compose_functoriality(self, f, g):
        phi = LaurentPoly({1: F(2), -1: F(1, 3)})
        lhs = laurent_compose(compose(f, g), phi)
        rhs = laurent_compose(f, laurent_compose(g, phi))
        assert lhs == rhs

    def test_negative_power_of_monomial(self):
        m = LaurentPoly({2: F(3)})
        assert m ** -1 == LaurentPoly({-2: F(1, 3)})
        with pytest.raises(ValueError):
            LaurentPoly({1: 1, -1: 1}) ** -1
