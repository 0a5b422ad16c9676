import random
from fractions import Fraction as F

import pytest

from orbitlab import (ChebSquareExceptional, ChebyshevLike, General,
                      LinearMap, PowerLike, RatPoly, cheb_equivalences,
                      chebyshev_t, compose, conjugacy_normal_form, conjugate,
                      iterate, iterate_root_form, linear_equivalence,
                      monic_centered)
from orbitlab.parser import parse_poly as P

SAMPLE_LINEARS = [LinearMap(a, b)
                  for a in (F(1), F(-1), F(2), F(1, 2), F(-3, 2))
                  for b in (F(0), F(1), F(-2), F(3, 4))]


class TestMonicCentered:
    def test_complete_the_square(self):
        mc = monic_centered(P("2X^2+4X+1"))
        assert mc.poly == P("X^2") and mc.monic
        assert mc.witness == LinearMap(2, 2)
        assert conjugate(P("2X^2+4X+1"), mc.witness) == mc.poly

    def test_already_centered(self):
        mc = monic_centered(P("X^2-2"))
        assert mc.poly == P("X^2-2") and mc.witness.is_identity()

    def test_cubic_shift(self):
        mc = monic_centered(P("X^3+3X^2"))
        assert mc.witness == LinearMap(1, 1)
        assert mc.poly.coeff(2) == 0
        assert conjugate(P("X^3+3X^2"), mc.witness) == mc.poly

    def test_non_monic_flag(self):
        # lc 2 has no rational square root at degree 3
        mc = monic_centered(P("2X^3+1"))
        assert not mc.monic and mc.poly.leading_coeff() == 2
        assert mc.poly.coeff(2) == 0

    def test_always_verifies(self):
        rng = random.Random(9)
        for _ in range(30):
            f = RatPoly([F(rng.randint(-6, 6)) for _ in range(rng.randint(2, 5))]
                        + [F(rng.choice([1, 4, 9, -2, 3]))])
            mc = monic_centered(f)
            assert conjugate(f, mc.witness) == mc.poly
            assert mc.poly.coeff(mc.poly.degree - 1) == 0
            if mc.monic:
                assert mc.poly.is_monic()


class TestLinearEquivalence:
    def test_power_form(self):
        le = linear_equivalence(P("3(X-1)^4 + 7"))
        assert le.form == "power" and le.n == 4
        assert le.ell2 == LinearMap(1, -1) and le.ell1 == LinearMap(3, 7)

    def test_cheb_form_recovered(self):
        h = LinearMap(1, -5)(compose(chebyshev_t(3), P("2X+1")))
        le = linear_equivalence(h)
        assert le.form == "cheb" and le.n == 3
        assert le.recompose() == h

    def test_general_absent(self):
        assert linear_equivalence(P("X^3+X+1")) is None

    def test_power_precedence_degree_two(self):
        le = linear_equivalence(P("X^2-2"))
        assert le.form == "power"

    def test_always_sound(self):
        rng = random.Random(31)
        for _ in range(20):
            n = rng.choice([2, 3, 4, 5])
            model = RatPoly.monomial(n) if rng.random() < 0.5 else chebyshev_t(n)
            ell1 = rng.choice(SAMPLE_LINEARS)
            ell2 = rng.choice(SAMPLE_LINEARS)
            h = ell1(compose(model, ell2.to_poly()))
            le = linear_equivalence(h)
            assert le is not None and le.recompose() == h


class TestChebeqLemma:
    def test_power_solutions_are_scalings(self):
        # a o X^n o b = X^n exactly for (a, b) = (X/beta^n, beta X)
        for n in (3, 4, 5):
            xn = RatPoly.monomial(n)
            for beta in (F(1), F(-1), F(2), F(-1, 3), F(5, 2)):
                a = LinearMap(1 / beta ** n, 0)
                b = LinearMap(beta, 0)
                assert a(compose(xn, b.to_poly())) == xn
            for a in SAMPLE_LINEARS:
                for b in SAMPLE_LINEARS:
                    if a(compose(xn, b.to_poly())) == xn:
                        assert b.b == 0 and a.b == 0 and a.a == 1 / b.a ** n

    def test_powers_never_give_chebyshev(self):
        for n in range(3, 9):
            le = linear_equivalence(chebyshev_t(n))
            assert le is not None and le.form == "cheb"
            # and the power solver specifically fails
            from orbitlab.normal_forms import _power_equivalence
            assert _power_equivalence(chebyshev_t(n)) is None

    def test_cheb_solutions_are_sign_pairs(self):
        for n in (3, 4, 5):
            tn = chebyshev_t(n)
            for eps in (1, -1):
                a = LinearMap(F(eps) ** n, 0)
                b = LinearMap(F(eps), 0)
                assert a(compose(tn, b.to_poly())) == tn
            for a in SAMPLE_LINEARS:
                for b in SAMPLE_LINEARS:
                    if a(compose(tn, b.to_poly())) == tn:
                        assert b.b == 0 and abs(b.a) == 1 and a.a == b.a ** n

    def test_solver_returns_exactly_the_sign_pairs(self):
        for n in (3, 4, 5):
            eqs = cheb_equivalences(chebyshev_t(n))
            got = {(eq.ell1.a, eq.ell1.b, eq.ell2.a, eq.ell2.b) for eq in eqs}
            expected = {(F(1), F(0), F(1), F(0)),
                        (F(-1) ** n, F(0), F(-1), F(0))}
            assert got == expected


class TestChebswapLemma:
    def test_power_swap_forces_zero_shift(self):
        for r in (2, 3):
            for s in (2, 3):
                for ell in SAMPLE_LINEARS:
                    h = compose(compose(RatPoly.monomial(r), ell.to_poly()),
                                RatPoly.monomial(s))
                    le = linear_equivalence(h)
                    found_power = le is not None and le.form == "power"
                    assert found_power == (ell.b == 0), (r, s, ell)

    def test_cheb_swap_forces_sign(self):
        for r in (3, 4):
            for s in (3, 4):
                for ell in SAMPLE_LINEARS:
                    h = compose(compose(chebyshev_t(r), ell.to_poly()),
                                chebyshev_t(s))
                    le = linear_equivalence(h)
                    found_cheb = le is not None and le.form == "cheb"
                    assert found_cheb == (ell.b == 0 and abs(ell.a) == 1), (r, s, ell)


class TestConjugacyNormalForm:
    def test_powerlike_example(self):
        r = conjugacy_normal_form(P("2X^2+4X+1"))
        assert isinstance(r, PowerLike)
        assert r.alpha == 2 and r.witness == LinearMap(1, 1)
        assert conjugate(P("2X^2+4X+1"), r.witness) == P("2X^2")

    def test_chebyshevlike_example(self):
        r = conjugacy_normal_form(P("X^2-2X"))
        assert isinstance(r, ChebyshevLike) and r.epsilon == 1
        assert r.witness == LinearMap(1, -1)
        assert conjugate(P("X^2-2X"), r.witness) == P("X^2-2")

    def test_general_example(self):
        assert isinstance(conjugacy_normal_form(P("X^3+X+1")), General)

    def test_negative_chebyshev_detected(self):
        ell = LinearMap(F(3, 2), F(7))
        f = conjugate(-chebyshev_t(5), ell)
        r = conjugacy_normal_form(f)
        assert isinstance(r, ChebyshevLike) and r.epsilon == -1
        assert conjugate(f, r.witness) == -chebyshev_t(5)

    def test_round_trip_power_class(self):
        # conjugating alpha X^r back and forth lands in the same
        # alpha * (Q*)^(r-1) class
        rng = random.Random(17)
        for _ in range(25):
            r = rng.choice([2, 3, 4])
            alpha = F(rng.choice([1, 2, -1, 3, 5]), rng.choice([1, 2, 3]))
            ell = rng.choice(SAMPLE_LINEARS)
            f = conjugate(RatPoly.monomial(r, alpha), ell.inverse())
            report = conjugacy_normal_form(f)
            assert isinstance(report, PowerLike)
            ratio = report.alpha / alpha
            # ratio must be a (r-1)-th power of a rational
            from orbitlab.numutil import rational_nth_roots
            assert rational_nth_roots(ratio, r - 1), (alpha, report.alpha)

    def test_witness_soundness_random(self):
        rng = random.Random(41)
        for _ in range(30):
            n = rng.choice([2, 3, 4])
            kind = rng.random()
            ell = rng.choice(SAMPLE_LINEARS)
            if kind < 0.4:
                base = RatPoly.monomial(n, F(rng.choice([1, 2, -3])))
            elif kind < 0.8:
                base = chebyshev_t(n) * rng.choice([1, -1])
            else:
                base = RatPoly([F(rng.randint(-3, 3)) for _ in range(n)] + [1])
            f = conjugate(base, ell)
            report = conjugacy_normal_form(f)
            if isinstance(report, PowerLike):
                assert conjugate(f, report.witness) == \
                    RatPoly.monomial(report.n, report.alpha)
            elif isinstance(report, ChebyshevLike):
                assert conjugate(f, report.witness) == \
                    chebyshev_t(report.n) * report.epsilon


class TestIterateRootForm:
    def test_powerlike_lift(self):
        r = iterate_root_form(P("2X^2+4X+1"), 2)
        assert isinstance(r, PowerLike)

    def test_chebyshev_lift(self):
        r = iterate_root_form(chebyshev_t(3), 2)
        assert isinstance(r, ChebyshevLike) and r.epsilon == 1

    def test_exceptional_family_from_remark(self):
        # f = T_2 o (-2 + alpha^2 (X+2)) has Chebyshev-equivalent square but
        # is not conjugate to +-T_2
        for alpha in (F(2), F(3), F(1, 2)):
            inner = RatPoly([-2 + alpha ** 2 * 2, alpha ** 2])
            f = compose(chebyshev_t(2), inner)
            # the remark's closed form for the square
            inner2 = RatPoly([-2 * alpha + alpha ** 3 * 2, alpha ** 3])
            assert iterate(f, 2) == compose(chebyshev_t(4), inner2)
            report = iterate_root_form(f, 2)
            assert isinstance(report, ChebSquareExceptional)
            assert isinstance(conjugacy_normal_form(f), General)

    def test_no_conclusion_for_general(self):
        assert iterate_root_form(P("X^3+X+1"), 2) is None

    def test_chebyshev_twisted_lift(self):
        # f = ell o T_3 o (-X) o ell^{-1}: third iterates are Chebyshev-shaped
        ell = LinearMap(F(2), F(-1))
        f = conjugate(compose(chebyshev_t(3), RatPoly([0, -1])), ell)
        report = iterate_root_form(f, 2)
        assert isinstance(report, ChebyshevLike) and report.epsilon == -1
