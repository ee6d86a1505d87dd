"""Integer and Laurent polynomial arithmetic."""

import random
from fractions import Fraction

import pytest

from statechrome.polynomials import IntPolynomial, LaurentPolynomial, binom


class TestBinom:
    def test_small_values(self):
        assert binom(5, 2) == 10
        assert binom(2, 5) == 0
        assert binom(0, 0) == 1

    def test_negative_upper_index(self):
        assert binom(-1, 0) == 1
        assert binom(-1, 3) == -1
        assert binom(-2, 2) == 3

    def test_negative_lower_index(self):
        assert binom(4, -1) == 0

    def test_pascal(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(-6, 9)
            k = rng.randint(1, 6)
            assert binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k)


class TestIntPolynomial:
    def test_normalization(self):
        assert IntPolynomial((1, 2, 0, 0)).coeffs == (1, 2)
        assert IntPolynomial().is_zero()
        assert IntPolynomial().degree == -1

    def test_ring_ops(self):
        x = IntPolynomial.variable()
        p = (x - 1) * (x - 2)
        assert p.coeffs == (2, -3, 1)
        assert (p + 3 * x).coeffs == (2, 0, 1)
        assert (p - p).is_zero()
        assert (x ** 3).coeffs == (0, 0, 0, 1)

    def test_evaluation(self):
        p = IntPolynomial((2, -3, 1))
        assert p(1) == 0 and p(2) == 0 and p(0) == 2
        assert p(Fraction(1, 2)) == Fraction(3, 4)

    def test_shift_argument(self):
        p = IntPolynomial((0, 0, 1))  # x^2
        assert p.shift_argument(1).coeffs == (1, 2, 1)
        q = IntPolynomial((5, -1, 7, 2))
        for x in range(-3, 4):
            assert q.shift_argument(-2)(x) == q(x - 2)

    def test_json_round_trip(self):
        p = IntPolynomial((-4, 0, 12345678901234567890))
        assert IntPolynomial.from_json(p.to_json()) == p

    def test_format(self):
        assert IntPolynomial((2, -3, 1)).format() == "x^2-3x+2"
        assert IntPolynomial().format() == "0"

    def test_monomial_guard(self):
        with pytest.raises(ValueError):
            IntPolynomial.monomial(-1)


class TestLaurentPolynomial:
    def test_normalization(self):
        p = LaurentPolynomial([(2, 1), (2, -1), (0, 5)])
        assert p.terms() == [(0, 5)]
        assert LaurentPolynomial({3: 0}).is_zero()

    def test_ring_ops(self):
        q = LaurentPolynomial.q_power(1)
        qinv = LaurentPolynomial.q_power(-1)
        assert (q + qinv) * (q - qinv) == LaurentPolynomial({2: 1, -2: -1})
        assert ((q + qinv) ** 2).terms() == [(-2, 1), (0, 2), (2, 1)]
        assert (q - q).is_zero()
        assert (3 - q).terms() == [(0, 3), (1, -1)]

    def test_exponent_range(self):
        p = LaurentPolynomial({-5: 2, 3: -1})
        assert (p.min_exp, p.max_exp) == (-5, 3)
        with pytest.raises(ValueError):
            LaurentPolynomial().min_exp

    def test_shift_and_inverse(self):
        p = LaurentPolynomial({-1: 2, 4: 3})
        assert p.shifted(2).terms() == [(1, 2), (6, 3)]
        assert p.substitute_inverse().terms() == [(-4, 3), (1, 2)]
        assert p.substitute_inverse().substitute_inverse() == p

    def test_from_coeff_run(self):
        p = LaurentPolynomial.from_coeff_run(-3, 2, [1, -2, 0, 4])
        assert p.terms() == [(-3, 1), (-1, -2), (3, 4)]

    def test_exact_div(self):
        circle = LaurentPolynomial({1: 1, -1: 1})
        p = LaurentPolynomial({3: 1, 1: 1})
        assert p.exact_div(circle).terms() == [(2, 1)]
        khat = LaurentPolynomial({-9: -1, -5: 1, -3: 1, -1: 1})
        j = khat.exact_div(circle)
        assert j * circle == khat

    def test_exact_div_failures(self):
        circle = LaurentPolynomial({1: 1, -1: 1})
        with pytest.raises(ValueError):
            LaurentPolynomial.one().exact_div(circle)
        with pytest.raises(ValueError):
            LaurentPolynomial({2: 1, 1: 1}).exact_div(circle)
        with pytest.raises(ValueError):
            LaurentPolynomial({0: 3}).exact_div(LaurentPolynomial({0: 2}))
        with pytest.raises(ValueError):
            circle.exact_div(LaurentPolynomial())

    def test_random_division_round_trip(self):
        rng = random.Random(99)
        for _ in range(60):
            a = LaurentPolynomial(
                {rng.randint(-6, 6): rng.randint(-4, 4) for _ in range(rng.randint(1, 5))}
            )
            b = LaurentPolynomial(
                {rng.randint(-6, 6): rng.randint(-4, 4) for _ in range(rng.randint(1, 5))}
            )
            if a.is_zero() or b.is_zero():
                continue
            assert (a * b).exact_div(b) == a

    def test_evaluate(self):
        p = LaurentPolynomial({-1: 1, 1: 1})
        assert p.evaluate(1) == 2
        assert p.evaluate(2) == Fraction(5, 2)
        assert p.evaluate(-1) == -2

    def test_json_round_trip(self):
        p = LaurentPolynomial({-2: 7, 0: -1, 5: 3})
        assert LaurentPolynomial.from_json(p.to_json()) == p
        assert p.to_json() == [
            {"exp": -2, "coeff": 7},
            {"exp": 0, "coeff": -1},
            {"exp": 5, "coeff": 3},
        ]

    def test_str(self):
        assert str(LaurentPolynomial({-2: -1, 0: 2, 1: 1})) == "-q^-2+2+q"
        assert str(LaurentPolynomial()) == "0"
