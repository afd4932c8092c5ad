import math
from fractions import Fraction

import pytest

from genfact.core import (
    DomainError,
    FactorialParams,
    alpha_factorial,
    binomial,
    falling_factorial,
    generalized_product,
    gould_polynomial,
    pochhammer,
)


def slow_alpha_factorial(n, alpha):
    # independent oracle: literal product n(n-a)(n-2a)... while positive
    if n <= -alpha:
        return 0
    acc = 1
    while n > 0:
        acc *= n
        n -= alpha
    return acc


class TestPochhammer:
    def test_half_cubed(self):
        assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)

    def test_empty_product(self):
        assert pochhammer(Fraction(7, 3), 0) == 1
        assert pochhammer(-5, 0) == 1

    def test_negative_index_extension(self):
        # oracle: 1 / ((x-2)(x-1)) at x = 1/2
        want = Fraction(1) / (Fraction(-3, 2) * Fraction(-1, 2))
        assert pochhammer(Fraction(1, 2), -2) == want == Fraction(4, 3)

    def test_negative_index_pole(self):
        with pytest.raises(DomainError):
            pochhammer(2, -3)  # factor x - 2 vanishes


class TestFallingFactorial:
    def test_simple(self):
        assert falling_factorial(5, 2) == 20

    def test_empty(self):
        assert falling_factorial(Fraction(9, 4), 0) == 1

    def test_half_integer(self):
        assert falling_factorial(Fraction(-1, 2), 3) == Fraction(-15, 8)

    def test_negative_n_rejected(self):
        with pytest.raises(DomainError):
            falling_factorial(3, -1)


class TestGeneralizedProduct:
    def test_odd_double_factorial(self):
        assert generalized_product(2, 1, 4) == 105

    def test_empty(self):
        assert generalized_product(17, -3, 0) == 1

    def test_factorial_as_negative_slope(self):
        assert generalized_product(-1, 5, 5) == 120

    def test_pochhammer_scaling_grid(self):
        for alpha in (-3, -2, -1, 1, 2, 3):
            for r in range(-5, 6):
                for n in range(0, 21):
                    want = alpha**n * pochhammer(Fraction(r, alpha), n)
                    assert generalized_product(alpha, r, n) == want


class TestAlphaFactorial:
    def test_triple_factorial(self):
        assert alpha_factorial(8, 3) == 80

    def test_base_window(self):
        assert alpha_factorial(0, 4) == 1
        assert alpha_factorial(-3, 4) == 1

    def test_below_window(self):
        assert alpha_factorial(-5, 3) == 0

    def test_bad_alpha(self):
        with pytest.raises(DomainError):
            alpha_factorial(5, 0)

    def test_against_direct_loop(self):
        for alpha in (1, 2, 3, 4, 5):
            for n in range(-alpha - 2, 41):
                assert alpha_factorial(n, alpha) == slow_alpha_factorial(n, alpha)

    def test_single_and_double_special_cases(self):
        for n in range(0, 31):
            assert alpha_factorial(n, 1) == math.factorial(n)
        for n in range(1, 31):
            want = 1
            for k in range(1, 2 * n, 2):
                want *= k
            assert alpha_factorial(2 * n - 1, 2) == want

    def test_product_representations(self):
        # (a n - d)!_(a) = p_n(a, a-d) = p_n(-a, a n - d)
        for alpha in (1, 2, 3, 4):
            for d in range(alpha):
                for n in range(0, 41):
                    val = alpha_factorial(alpha * n - d, alpha)
                    assert val == generalized_product(alpha, alpha - d, n)
                    assert val == generalized_product(-alpha, alpha * n - d, n)


class TestGouldPolynomial:
    def test_degree_zero(self):
        assert gould_polynomial(0, 3, 1, 1) == 1

    def test_direct_evaluation(self):
        assert gould_polynomial(1, 2, 0, 1) == 2

    def test_pole(self):
        with pytest.raises(DomainError):
            gould_polynomial(2, 4, 2, 1)

    def test_product_identity_single_point(self):
        # both sides equal p_2(1, 2) = 6 at (alpha, beta, gamma) = (1, 1, 0)
        alpha, beta, gamma, n = 1, 1, 0, 2
        lhs = generalized_product(alpha, beta * n + gamma, n)
        x = gamma - alpha - beta
        rhs = Fraction((-alpha) ** (n + 1), x) * gould_polynomial(n + 1, x, -beta, -alpha)
        assert lhs == rhs == 6

    def test_product_identity_grid(self):
        for alpha in (-3, -2, -1, 1, 2, 3):
            for beta in range(-3, 4):
                for gamma in range(-3, 4):
                    x = gamma - alpha - beta
                    if x == 0:
                        continue
                    for n in range(0, 16):
                        if x + beta * (n + 1) == 0:
                            continue  # pole of the Gould factor
                        lhs = generalized_product(alpha, beta * n + gamma, n)
                        rhs = Fraction((-alpha) ** (n + 1), x) \
                            * gould_polynomial(n + 1, x, -beta, -alpha)
                        assert lhs == rhs, (alpha, beta, gamma, n)


class TestBinomial:
    def test_plain(self):
        assert binomial(10, 3) == 120

    def test_negative_upper(self):
        assert binomial(-4, 2) == 10
        assert binomial(-1, 5) == -1

    def test_rational_upper(self):
        assert binomial(Fraction(1, 2), 2) == Fraction(-1, 8)

    def test_negative_lower(self):
        assert binomial(7, -1) == 0


class TestFactorialParams:
    def test_fixed(self):
        p = FactorialParams.fixed(2, 1)
        assert p.r_at(10) == 1 and not p.is_linear
        assert p.product(4) == 105

    def test_linear(self):
        p = FactorialParams.linear(-2, 2, -1)
        assert p.r_at(4) == 7 and p.is_linear
        assert p.product(4) == 105  # 7!!

    def test_validation(self):
        with pytest.raises(DomainError):
            FactorialParams.fixed(0, 1)
        with pytest.raises(DomainError):
            FactorialParams.linear(1, 0, 0)
        with pytest.raises(DomainError):
            FactorialParams(alpha=1)
