from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genfact.core import DomainError, NonInvertibleError
from genfact.polyseries import (
    Poly1,
    Poly3,
    Series,
    poly3_reduce,
    poly_mod_reduce_substitute,
    series_of_rational,
)

small_fracs = st.fractions(
    min_value=-5, max_value=5, max_denominator=6)
poly_coeffs = st.lists(small_fracs, min_size=0, max_size=5)


class TestPoly1:
    def test_canonical_form(self):
        assert Poly1([1, 2, 0, 0]).coeffs == (1, 2)
        assert Poly1([0, 0]).is_zero()

    def test_arith(self):
        p = Poly1([1, 1])
        q = Poly1([-1, 1])
        assert (p * q).coeffs == (-1, 0, 1)
        assert (p + q).coeffs == (0, 2)
        assert (p - p).is_zero()
        assert (3 * p).coeffs == (3, 3)

    def test_eval(self):
        assert Poly1([1, 2, 1])(3) == 16
        assert Poly1([])(5) == 0

    def test_divmod(self):
        # x^3 + x = x * x^2 + x
        q, r = Poly1([0, 1, 0, 1]).divmod(Poly1([0, 0, 1]))
        assert q.coeffs == (0, 1) and r.coeffs == (0, 1)
        # non-monic divisor gives rational quotient
        q, r = Poly1([3, 2]).divmod(Poly1([1, 2]))
        assert q.coeffs == (1,) and r.coeffs == (2,)

    def test_divmod_by_zero(self):
        with pytest.raises(DomainError):
            Poly1([1]).divmod(Poly1([]))


class TestSeriesOfRational:
    def test_geometric(self):
        s = series_of_rational(Poly1([1]), Poly1([1, -1]), 4)
        assert s.coeffs == (1, 1, 1, 1, 1)

    def test_hand_division(self):
        # (1 - 3z)/(1 - 4z + 2z^2): s0=1, s1=-3+4=1, s2=4-2=2, s3=8-2=6
        s = series_of_rational(Poly1([1, -3]), Poly1([1, -4, 2]), 3)
        assert s.coeffs == (1, 1, 2, 6)

    def test_zero_numerator(self):
        s = series_of_rational(Poly1([]), Poly1([2, 5]), 5)
        assert all(c == 0 for c in s.coeffs)

    def test_noninvertible(self):
        with pytest.raises(NonInvertibleError):
            series_of_rational(Poly1([1]), Poly1([0, 1]), 3)

    @given(p=poly_coeffs, q=poly_coeffs, q0=st.fractions(
        min_value=Fraction(1, 4), max_value=5, max_denominator=4))
    @settings(max_examples=60, deadline=None)
    def test_division_inverts_multiplication(self, p, q, q0):
        order = 12
        poly_p = Poly1(p)
        poly_q = Poly1([q0] + q)
        s = series_of_rational(poly_p, poly_q, order)
        prod = Series.from_poly(poly_q, order) * s
        for k in range(order + 1):
            assert prod[k] == (poly_p[k] if k <= poly_p.degree else 0)


class TestPolyModReduceSubstitute:
    def test_trivial_zero(self):
        assert poly_mod_reduce_substitute(Poly1([0, 0, 1]), Poly1([0, 0, 1]), 5, 25) == 0

    def test_nonmonic_rational_remainder(self):
        # 2x + 3 mod (2x + 1) leaves remainder 2 over the rationals
        assert poly_mod_reduce_substitute(Poly1([3, 2]), Poly1([1, 2]), 3, 7) == 2

    def test_power_truncation(self):
        # x^3 + x mod x^2 = x, at x = 4 gives 4 mod 16
        assert poly_mod_reduce_substitute(Poly1([0, 1, 0, 1]), Poly1([0, 0, 1]), 4, 16) == 4

    def test_noninvertible_denominator(self):
        # x mod (2x + 1) leaves -1/2; 2 has no inverse mod 8
        with pytest.raises(NonInvertibleError):
            poly_mod_reduce_substitute(Poly1([0, 1]), Poly1([1, 2]), 3, 8)

    @given(
        expr=poly_coeffs,
        g=st.lists(small_fracs, min_size=0, max_size=4),
        n=st.integers(min_value=0, max_value=9),
    )
    @settings(max_examples=60, deadline=None)
    def test_depends_only_on_residue_class(self, expr, g, n):
        modulus = Poly1([1, 2])  # 2x + 1, odd outer modulus keeps inverses alive
        outer = 15
        base = Poly1(expr)
        shifted = base + Poly1(g) * modulus
        assert poly_mod_reduce_substitute(base, modulus, n, outer) \
            == poly_mod_reduce_substitute(shifted, modulus, n, outer)


class TestPoly3:
    def test_reduce_drops_zero(self):
        p = Poly3({(1, 0, 0): 7})
        assert poly3_reduce(p, 7).terms == {}

    def test_reduce_termwise(self):
        p = Poly3({(0, 2, 0): 10, (0, 0, 0): 3})
        assert poly3_reduce(p, 7).terms == {(0, 2, 0): 3, (0, 0, 0): 3}

    def test_least_nonnegative(self):
        assert poly3_reduce(Poly3({(0, 0, 0): -1}), 5).terms == {(0, 0, 0): 4}

    def test_rational_coefficient(self):
        p = Poly3({(0, 0, 1): Fraction(1, 2)})
        assert poly3_reduce(p, 7).terms == {(0, 0, 1): 4}

    def test_eval_commutes_with_reduce(self):
        p = Poly3({(1, 0, 0): 9, (0, 1, 1): -4, (0, 0, 0): 2})
        for m in (5, 7, 12):
            direct = p.evaluate(1, 1, 1) % m
            reduced = poly3_reduce(p, m).evaluate(1, 1, 1) % m
            assert direct == reduced

    def test_marginal(self):
        p = Poly3({(1, 2, 0): 3, (1, 0, 5): 4, (0, 0, 0): 1})
        assert p.marginal(0) == {1: 7, 0: 1}
