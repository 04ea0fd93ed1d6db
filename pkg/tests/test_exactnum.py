import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finiteweyl.exactnum import (
    Cyc,
    Scalar,
    conjugate,
    cyclotomic_poly,
    eval_complex,
    gauss_sum,
    gauss_sum_float,
    root_of_unity,
    split_square,
    sqrt_as_cyc,
)


def approx_eq(z, w, tol=1e-10):
    return abs(z - w) <= tol


class TestCyclotomicPoly:
    def test_small_orders(self):
        assert cyclotomic_poly(1) == (-1, 1)
        assert cyclotomic_poly(2) == (1, 1)
        assert cyclotomic_poly(4) == (1, 0, 1)
        assert cyclotomic_poly(3) == (1, 1, 1)
        assert cyclotomic_poly(6) == (1, -1, 1)
        assert cyclotomic_poly(8) == (1, 0, 0, 0, 1)

    def test_degree_is_totient(self):
        from math import gcd

        for M in range(1, 40):
            phi = sum(1 for k in range(1, M + 1) if gcd(k, M) == 1)
            assert len(cyclotomic_poly(M)) - 1 == phi


class TestRootOfUnity:
    def test_identity(self):
        assert root_of_unity(1, 0) == Scalar.one()

    def test_i(self):
        z = root_of_unity(4, 1)
        re, im = eval_complex(z)
        assert approx_eq(complex(re, im), 1j, 1e-14)

    def test_product_of_eighth_roots(self):
        z = root_of_unity(8, 2) * root_of_unity(8, 2)
        assert z == root_of_unity(8, 4)
        assert z == Scalar.rational(-1)
        # numeric cross-check of the derived value
        assert approx_eq(complex(*eval_complex(z)), -1.0, 1e-14)

    def test_exponent_reduced_mod_m(self):
        assert root_of_unity(6, 7) == root_of_unity(6, 1)
        assert root_of_unity(5, -1) == root_of_unity(5, 4)


class TestConjugate:
    def test_identity(self):
        assert conjugate(Scalar.one()) == Scalar.one()

    def test_root_inversion(self):
        for M, k in [(5, 2), (8, 3), (12, 7)]:
            assert conjugate(root_of_unity(M, k)) == root_of_unity(M, -k)

    def test_radical_fixed(self):
        # (1/sqrt 2)(1+i) -> (1/sqrt 2)(1-i), checked exactly and in floats
        s = Scalar.exact(Cyc.rational(1), 1, 2) * (Scalar.one() + root_of_unity(4, 1))
        c = conjugate(s)
        expect = Scalar.exact(Cyc.rational(1), 1, 2) * (Scalar.one() + root_of_unity(4, 3))
        assert c == expect
        assert approx_eq(complex(*eval_complex(c)), (1 - 1j) / cmath.sqrt(2), 1e-12)

    def test_involution(self):
        rng = random.Random(7)
        for _ in range(20):
            s = root_of_unity(24, rng.randrange(24)) * Scalar.exact(
                Cyc.rational(Fraction(rng.randrange(1, 5), rng.randrange(1, 5))), rng.choice([1, 2, 3, 5]), 1
            )
            assert conjugate(conjugate(s)) == s

    def test_ring_automorphism(self):
        rng = random.Random(11)
        for _ in range(10):
            a = root_of_unity(12, rng.randrange(12)) + root_of_unity(8, rng.randrange(8))
            b = root_of_unity(6, rng.randrange(6)) + Scalar.rational(rng.randrange(-3, 4))
            assert conjugate(a * b) == conjugate(a) * conjugate(b)
            assert conjugate(a + b) == conjugate(a) + conjugate(b)


class TestGaussSum:
    def test_n1(self):
        assert gauss_sum(1) == Scalar.one()

    def test_n2_direct(self):
        # two-term summation: 1 + e^{i pi /2} = 1 + i
        assert gauss_sum(2) == Scalar.one() + root_of_unity(4, 1)

    def test_n4_float(self):
        re, im = eval_complex(gauss_sum(4))
        assert approx_eq(complex(re, im), complex(1.41421356237, 1.41421356237), 1e-9)

    @pytest.mark.parametrize("N", list(range(2, 129, 2)))
    def test_modulus_squared_exact(self, N):
        g = gauss_sum(N)
        assert g * conjugate(g) == Scalar.rational(N)

    @pytest.mark.parametrize("N", [2, 4, 6, 12, 18, 30, 64])
    def test_even_closed_form_exact(self, N):
        # G(N) = sqrt(N) e^{i pi/4} for even N
        target = Scalar.exact(Cyc.zeta(8, 1), N, 1)
        assert gauss_sum(N) == target

    def test_float_backend_matches_exact(self):
        for N in (3, 5, 7, 9, 12):
            assert approx_eq(complex(*eval_complex(gauss_sum(N))), gauss_sum_float(N), 1e-10)


class TestScalarAlgebra:
    def test_split_square(self):
        assert split_square(1) == (1, 1)
        assert split_square(4) == (2, 1)
        assert split_square(18) == (3, 2)
        assert split_square(360) == (6, 10)

    def test_radical_merging(self):
        a = Scalar.exact(Cyc.rational(1), 2, 1)
        b = Scalar.exact(Cyc.rational(1), 8, 1)
        assert a * b == Scalar.rational(4)

    def test_sqrt_as_cyc_values(self):
        import math

        for n in (2, 3, 5, 6, 7, 10, 13):
            assert approx_eq(sqrt_as_cyc(n).eval(), math.sqrt(n), 1e-10)

    def test_mixed_radicand_addition(self):
        import math

        s = Scalar.exact(Cyc.rational(1), 2, 1) + Scalar.exact(Cyc.rational(1), 3, 1)
        assert approx_eq(complex(*eval_complex(s)), math.sqrt(2) + math.sqrt(3), 1e-10)

    def test_division(self):
        a = root_of_unity(12, 5) * Scalar.exact(Cyc.rational(3), 2, 1)
        b = root_of_unity(8, 3) * Scalar.rational(Fraction(2, 7))
        assert (a / b) * b == a

    def test_inverse_of_sum(self):
        a = Scalar.one() + root_of_unity(5, 1)
        assert a * a.inv() == Scalar.one()

    def test_float_promotion(self):
        a = Scalar.from_float(1 + 2j)
        b = root_of_unity(4, 1)
        assert approx_eq((a * b).to_complex(), (1 + 2j) * 1j, 1e-14)

    @settings(max_examples=60, deadline=None)
    @given(
        st.integers(0, 23),
        st.integers(0, 23),
        st.fractions(min_value=-3, max_value=3),
        st.fractions(min_value=-3, max_value=3),
    )
    def test_product_evaluation_homomorphism(self, k1, k2, c1, c2):
        # eval(x*y) == eval(x)*eval(y) for Q(zeta_24) elements
        if c1 == 0 or c2 == 0:
            return
        x = Cyc.zeta(24, k1).scale(c1) + Cyc.rational(1)
        y = Cyc.zeta(24, k2).scale(c2)
        assert approx_eq((x * y).eval(), x.eval() * y.eval(), 1e-12)

    def test_canonical_equality_random_products(self):
        # canonical-form equality cross-validated against float evaluation
        rng = random.Random(3)
        for _ in range(40):
            factors = [
                root_of_unity(rng.choice([3, 4, 8, 12]), rng.randrange(12))
                for _ in range(rng.randrange(1, 8))
            ]
            s = Scalar.one()
            for f in factors:
                s = s * f
            t = Scalar.one()
            for f in reversed(factors):
                t = t * f
            assert s == t
            assert approx_eq(complex(*eval_complex(s)), complex(*eval_complex(t)), 1e-10)

    def test_unequal_scalars_detected(self):
        assert root_of_unity(7, 1) != root_of_unity(7, 2)
        assert Scalar.exact(Cyc.rational(1), 2, 1) != Scalar.rational(1)


class TestEvalPrecision:
    def test_high_precision_eval(self):
        z = root_of_unity(360, 77)
        re, im = eval_complex(z, 120)
        expect = cmath.exp(2j * cmath.pi * 77 / 360)
        assert approx_eq(complex(re, im), expect, 1e-13)
