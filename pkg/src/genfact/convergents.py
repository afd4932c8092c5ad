"""Convergent numerator/denominator polynomials of the factorial-product
generating functions, the numerator-coefficient formulas, and the series
expansions with their exact / mod-h windows.

The h-th convergent is rational: FP_h / FQ_h.  Its series agrees with
p_n(alpha, R) exactly up to order h, and mod h beyond for h odd or prime.
All five multiple-sum forms of the numerator coefficients stay in
production code so any instance can be cross-validated on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    DomainError,
    FactorialParams,
    Scalar,
    binomial,
    factorial,
    generalized_product,
    pochhammer,
)
from .polyseries import Poly1, Series, series_of_rational
from .report import CongruenceReport
from .triangles import stirling1, stirling2

CHN_VARIANTS = ("v1", "v2", "v3", "v4", "v5")


def fq_poly(h: int, params: FactorialParams, n: int | None = None) -> Poly1:
    """Denominator polynomial FQ_h(alpha, R; z) of degree h.

    Coefficient of z^k is C(h,k) (-1)^k prod_{j<k} (R + (h-1-j) alpha);
    the equivalent Pochhammer form is asserted alongside.
    """
    if h < 1:
        raise DomainError(f"fq_poly: h must be >= 1, got {h}")
    alpha, r = params.alpha, params.r_at(n if n is not None else 0)
    coeffs: list[Scalar] = [1]
    prod: Scalar = 1
    for k in range(1, h + 1):
        prod *= r + (h - k) * alpha
        coeffs.append(binomial(h, k) * (-1) ** k * prod)
    poly = Poly1(coeffs)
    for k in range(h + 1):
        alt = binomial(h, k) * pochhammer(Fraction(r, alpha) + h - k, k) * (-alpha) ** k
        assert poly[k] == alt, f"fq_poly: Pochhammer form mismatch at k={k}"
    return poly


def chn_product_form(h: int, n: int, params: FactorialParams, index: int | None = None) -> Scalar:
    """Numerator coefficient C_{h,n}(alpha, R) by the binomial convolution."""
    if not 0 <= n < h:
        raise IndexError(f"chn_product_form: need 0 <= n < h, got n={n}, h={h}")
    alpha, r = params.alpha, params.r_at(index if index is not None else n)
    shifted = r + (h - 1) * alpha
    total: Scalar = 0
    p_left: Scalar = 1  # p_i(-alpha, R + (h-1) alpha)
    for i in range(n + 1):
        if i > 0:
            p_left *= shifted - (i - 1) * alpha
        total += binomial(h, i) * (-1) ** i * p_left * generalized_product(alpha, r, n - i)
    return total


def chn_pochhammer_form(h: int, n: int, params: FactorialParams, index: int | None = None) -> Scalar:
    """Same coefficient through the Vandermonde-like Pochhammer expansion."""
    if not 0 <= n < h:
        raise IndexError(f"chn_pochhammer_form: need 0 <= n < h, got n={n}, h={h}")
    alpha, r = params.alpha, params.r_at(index if index is not None else n)
    ra = Fraction(r, alpha)
    total = Fraction(0)
    for i in range(n + 1):
        total += binomial(h, i) * pochhammer(1 - h - ra, i) * pochhammer(ra, n - i)
    return total * Fraction(alpha) ** n


def chn_multisum(variant: str, h: int, n: int, params: FactorialParams,
                 index: int | None = None) -> Scalar:
    """One of the five Stirling-triangle multiple-sum forms of C_{h,n}."""
    if variant not in CHN_VARIANTS:
        raise DomainError(f"chn_multisum: unknown variant {variant!r}")
    if not 0 <= n < h:
        raise IndexError(f"chn_multisum: need 0 <= n < h, got n={n}, h={h}")
    alpha, r = params.alpha, params.r_at(index if index is not None else n)
    if variant == "v2":
        return _chn_v2(h, n, alpha, r)
    ra = Fraction(r, alpha)
    if variant == "v1":
        return _chn_v1(h, n, alpha, ra)
    if variant == "v3":
        return _chn_v3(h, n, alpha, ra)
    if variant == "v4":
        return _chn_v4(h, n, alpha, ra)
    return _chn_v5(h, n, alpha, ra)


def _poch_table(x: Scalar, n: int) -> list[Scalar]:
    out: list[Scalar] = [1]
    for j in range(n):
        out.append(out[-1] * (x + j))
    return out


def _chn_v1(h: int, n: int, alpha: int, ra: Fraction) -> Scalar:
    poch_ra = _poch_table(ra, n)
    total = Fraction(0)
    for k in range(n + 1):
        ch_k = binomial(h, k)
        for m in range(k + 1):
            s1 = stirling1(k, m)
            if not s1:
                continue
            base = ch_k * s1 * (-1) ** m * poch_ra[n - k]
            for s in range(m + 1):
                total += base * binomial(m, s) * (ra - 1) ** (m - s) * h**s
    return total * Fraction(alpha) ** n


def _chn_v2(h: int, n: int, alpha: int, r: Scalar) -> Scalar:
    total: Scalar = 0
    for k in range(n + 1):
        ch_k = binomial(h, k)
        for m in range(k + 1):
            s1a = stirling1(k, m)
            if not s1a:
                continue
            for t in range(m + 1):
                pre = ch_k * binomial(m, t) * s1a * (-1) ** m * (h - 1) ** (m - t)
                for s in range(t, n + 1):
                    s1b = stirling1(n - k, s - t)
                    if s1b:
                        total += pre * s1b * alpha ** (n - s) * r**s
    return total


def _chn_v3(h: int, n: int, alpha: int, ra: Fraction) -> Scalar:
    poch_ra = _poch_table(ra, n)
    inner = [
        sum(binomial(h, i) * stirling2(s, i) * factorial(i) for i in range(s + 1))
        for s in range(n + 1)
    ]
    total = Fraction(0)
    for k in range(n + 1):
        ch_k = binomial(h, k)
        for m in range(k + 1):
            s1 = stirling1(k, m)
            if not s1:
                continue
            base = ch_k * s1 * (-1) ** m * poch_ra[n - k]
            for s in range(m + 1):
                total += base * binomial(m, s) * (ra - 1) ** (m - s) * inner[s]
    return total * Fraction(alpha) ** n


def _chn_v4(h: int, n: int, alpha: int, ra: Fraction) -> Scalar:
    poch_ra = _poch_table(ra, n)
    w = [
        sum(binomial(i, v) * binomial(h + v, v) * (-1) ** (i - v) for v in range(i + 1))
        for i in range(n + 1)
    ]
    inner = [
        sum(stirling2(s, i) * factorial(i) * w[i] for i in range(s + 1))
        for s in range(n + 1)
    ]
    total = Fraction(0)
    for k in range(n + 1):
        ch_k = binomial(h, k)
        for m in range(k + 1):
            s1 = stirling1(k, m)
            if not s1:
                continue
            base = ch_k * s1 * (-1) ** m * poch_ra[n - k]
            for s in range(m + 1):
                total += base * binomial(m, s) * (ra - 1) ** (m - s) * inner[s]
    return total * Fraction(alpha) ** n


def chn_v5_bracket(h: int, n: int, i: int) -> int:
    """The v5 inner factor, a polynomial function of h only."""
    total = 0
    for k in range(n + 1):
        ch_k = binomial(h, k)
        for m in range(k + 1):
            s1a = stirling1(k, m)
            if not s1a:
                continue
            for t in range(m + 1):
                pre = ch_k * binomial(m, t) * s1a * (h - 1) ** (m - t)
                for s in range(t, n + 1):
                    s1b = stirling1(n - k, s - t)
                    s2 = stirling2(s, i)
                    if s1b and s2:
                        total += pre * s1b * s2 * (-1) ** (m + s - i)
    return total


def _chn_v5(h: int, n: int, alpha: int, ra: Fraction) -> Scalar:
    poch_ra = _poch_table(ra, n)
    total = Fraction(0)
    for i in range(n + 1):
        total += chn_v5_bracket(h, n, i) * poch_ra[i]
    return total * Fraction(alpha) ** n


def fp_poly(h: int, params: FactorialParams, index: int | None = None) -> Poly1:
    """Numerator polynomial FP_h(alpha, R; z), degree < h."""
    return Poly1([chn_product_form(h, n, params, index) for n in range(h)])


@dataclass(frozen=True)
class ConvergentPair:
    """Numerator/denominator pair of the h-th convergent function."""

    h: int
    params: FactorialParams
    numerator: Poly1
    denominator: Poly1

    def __post_init__(self) -> None:
        if self.denominator[0] != 1:
            raise DomainError("ConvergentPair: denominator constant term must be 1")
        if not self.numerator.is_zero() and self.numerator.degree >= self.h:
            raise DomainError("ConvergentPair: numerator degree must be < h")

    def series(self, order: int) -> Series:
        return series_of_rational(self.numerator, self.denominator, order)


def convergent_pair(h: int, params: FactorialParams, index: int | None = None) -> ConvergentPair:
    return ConvergentPair(h, params, fp_poly(h, params, index), fq_poly(h, params, index))


def convergent_series(h: int, params: FactorialParams, order: int,
                      index: int | None = None) -> Series:
    """Series of FP_h/FQ_h to the given order."""
    return convergent_pair(h, params, index).series(order)


def convergent_coeff_mod(h: int, alpha: int, r: int, n: int, m: int) -> int:
    """[z^n] of the h-th convergent reduced mod m, for integer parameters.

    Runs the series division recurrence entirely over residues; binomials
    C(h, k) are exact before reduction.  O(n^2) work, independent of h
    beyond the first n coefficient products, which is what makes the
    Wilson / Clement convergent forms affordable at h = p(p+2).
    """
    if not 0 <= n:
        raise DomainError("convergent_coeff_mod: n must be >= 0")
    kmax = min(n, h)
    # FQ coefficients mod m.
    q = [1 % m]
    prod = 1
    comb = 1
    for k in range(1, kmax + 1):
        prod = prod * ((r + (h - k) * alpha) % m) % m
        comb = comb * (h - k + 1) // k
        q.append((-1) ** k * (comb % m) * prod % m)
    # p_i(-alpha, R + (h-1) alpha) and p_j(alpha, R) mod m.
    shifted = (r + (h - 1) * alpha) % m
    left = [1 % m]
    for i in range(1, n + 1):
        left.append(left[-1] * ((shifted - (i - 1) * alpha) % m) % m)
    right = [1 % m]
    for j in range(1, n + 1):
        right.append(right[-1] * ((r + (j - 1) * alpha) % m) % m)
    combs = [1 % m]
    comb = 1
    for i in range(1, n + 1):
        comb = comb * (h - i + 1) // i
        combs.append(comb % m)
    # FP coefficients mod m (zero at and beyond degree h).
    p = []
    for j in range(n + 1):
        if j >= h:
            p.append(0)
            continue
        acc = 0
        for i in range(j + 1):
            term = combs[i] * left[i] % m * right[j - i] % m
            acc = (acc - term if i & 1 else acc + term) % m
        p.append(acc)
    # Division recurrence mod m (q[0] = 1).
    s = []
    for j in range(n + 1):
        acc = p[j]
        for k in range(1, min(j, kmax) + 1):
            acc -= q[k] * s[j - k]
        s.append(acc % m)
    return s[n]


def laguerre_identity_check(h: int, params: FactorialParams,
                            index: int | None = None) -> CongruenceReport:
    """Compare FQ_h with its associated-Laguerre expansion coefficientwise.

    (-az)^h h! L_h^{(R/a - 1)}((az)^{-1}) expands to coefficients
    (-1)^j a^j h!/(h-j)! C(h + R/a - 1, j) of z^j.
    """
    if params.alpha == 0:
        raise DomainError("laguerre_identity_check: alpha must be nonzero")
    alpha, r = params.alpha, params.r_at(index if index is not None else 0)
    beta = Fraction(r, alpha) - 1
    lag = Poly1([
        (-1) ** j * Fraction(alpha) ** j * (factorial(h) // factorial(h - j))
        * binomial(h + beta, j)
        for j in range(h + 1)
    ])
    fq = fq_poly(h, params, index)
    return CongruenceReport.check(
        "laguerre_fq",
        {"h": h, "alpha": alpha, "r": r},
        lhs=0 if lag == fq else 1,
        rhs=0,
        modulus=0,
        details={"fq": list(fq.coeffs), "laguerre": list(lag.coeffs)},
    )
