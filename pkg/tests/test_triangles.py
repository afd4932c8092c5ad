import math
from fractions import Fraction
from functools import lru_cache

import pytest

from genfact.core import DomainError, alpha_factorial
from genfact.triangles import (
    alpha_factorial_coeff,
    fcf2,
    stirling1,
    stirling1_row_mod,
    stirling2,
    verify_alpha_expansion,
)


@lru_cache(maxsize=None)
def s1_oracle(n, k):
    # independent memoized recurrence, top-down
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    return (n - 1) * s1_oracle(n - 1, k) + s1_oracle(n - 1, k - 1)


@lru_cache(maxsize=None)
def s2_oracle(n, k):
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    return k * s2_oracle(n - 1, k) + s2_oracle(n - 1, k - 1)


class TestStirling:
    def test_first_kind_examples(self):
        assert stirling1(4, 2) == s1_oracle(4, 2) == 11
        assert stirling1(5, 1) == math.factorial(4)
        for n in range(0, 10):
            assert stirling1(n, n) == 1

    def test_second_kind_examples(self):
        assert stirling2(4, 2) == s2_oracle(4, 2) == 7
        assert stirling2(5, 3) == s2_oracle(5, 3) == 25
        for n in range(1, 10):
            assert stirling2(n, 1) == 1

    def test_out_of_range(self):
        assert stirling1(3, 5) == 0
        assert stirling2(3, -1) == 0
        with pytest.raises(DomainError):
            stirling1(-1, 0)

    def test_against_oracle(self):
        for n in range(0, 13):
            for k in range(0, n + 1):
                assert stirling1(n, k) == s1_oracle(n, k)
                assert stirling2(n, k) == s2_oracle(n, k)

    def test_row_sums(self):
        for n in range(0, 21):
            assert sum(stirling1(n, k) for k in range(n + 1)) == math.factorial(n)

    def test_orthogonality(self):
        for n in range(0, 13):
            for m in range(0, 13):
                total = sum(
                    stirling1(n, k) * stirling2(k, m) * (-1) ** (n - k)
                    for k in range(n + 1)
                )
                assert total == (1 if n == m else 0), (n, m)

    def test_row_mod(self):
        rows = stirling1_row_mod(9, 97)
        for n in range(10):
            for k in range(n + 1):
                assert rows[n][k] == stirling1(n, k) % 97


def egf_coeff_oracle(alpha, n, m):
    # independent expansion: multiply the two series directly with Fractions.
    binser = [Fraction(1)]
    for k in range(1, n + 1):
        # (1 - az)^(-1/a): c_k = c_{k-1} * (1/a + k - 1) * a / k
        binser.append(binser[-1] * (Fraction(1, alpha) + k - 1) * alpha / k)
    log = [Fraction(0)] + [Fraction(alpha**k, k) for k in range(1, n + 1)]
    acc = binser
    for _ in range(m):
        new = [Fraction(0)] * (n + 1)
        for i, a in enumerate(acc):
            for j in range(1, n + 1 - i):
                new[i + j] += a * log[j]
        acc = new
    return acc[n] * math.factorial(n) / (math.factorial(m) * alpha**m)


class TestAlphaFactorialCoeff:
    def test_reduces_to_stirling1_at_alpha_one(self):
        for n in range(0, 9):
            for m in range(0, 9):
                assert alpha_factorial_coeff(1, n, m) == stirling1(n + 1, m + 1)

    def test_constant_term(self):
        for alpha in (1, 2, 3, 5):
            assert alpha_factorial_coeff(alpha, 0, 0) == 1

    def test_hand_expanded_value(self):
        # 2! [z^2] of (1-2z)^(-1/2) * (1/2) log(1/(1-2z)): the series product
        # has [z^2] = 1*1 + 1*1 = 2, so the coefficient is 4.
        assert alpha_factorial_coeff(2, 2, 1) == egf_coeff_oracle(2, 2, 1) == 4

    def test_against_series_oracle(self):
        for alpha in (2, 3):
            for n in range(0, 8):
                for m in range(0, n + 1):
                    assert alpha_factorial_coeff(alpha, n, m) == egf_coeff_oracle(alpha, n, m)

    def test_integrality(self):
        for alpha in (1, 2, 3, 4):
            for n in range(0, 13):
                for m in range(0, 13):
                    value = alpha_factorial_coeff(alpha, n, m)
                    assert value.denominator == 1, (alpha, n, m, value)

    def test_fcf2_indexing(self):
        assert fcf2(2, 3, 2) == alpha_factorial_coeff(2, 2, 1) == 4
        assert fcf2(2, 0, 1) == 0


class TestAlphaExpansion:
    @pytest.mark.parametrize("alpha,d,n,value", [
        (2, 1, 3, 15),   # 5!!
        (1, 0, 4, 24),   # 4!
        (3, 2, 2, 4),    # 4!!!
    ])
    def test_examples(self, alpha, d, n, value):
        assert alpha_factorial(alpha * n - d, alpha) == value
        report = verify_alpha_expansion(alpha, d, n)
        assert report.passed and report.lhs == value
        assert all(s == value for s in report.details["sides"])

    def test_grid(self):
        for alpha in (1, 2, 3, 4):
            for d in range(alpha):
                for n in range(1, 13):
                    assert verify_alpha_expansion(alpha, d, n).passed, (alpha, d, n)

    def test_domain(self):
        with pytest.raises(DomainError):
            verify_alpha_expansion(2, 2, 3)
