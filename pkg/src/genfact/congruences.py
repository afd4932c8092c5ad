"""Finite difference equations for the factorial products and the whole
family of finite-sum identities and congruences built on them: the
order-h expansions mod h and mod h*a^t, the multifactorial congruences,
double-factorial and central-binomial congruences, and the exact triple /
multiple sum identities for single and double factorials.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .core import (
    DomainError,
    FactorialParams,
    Scalar,
    alpha_factorial,
    binomial,
    double_factorial,
    factorial,
    generalized_product,
    pochhammer,
)
from .convergents import chn_product_form
from .polyseries import Poly1, poly_mod_reduce_substitute
from .report import CongruenceReport
from .triangles import fcf2, stirling1


def _sign(e: int) -> int:
    """(-1)^e as an exact int, valid for negative exponents too."""
    return -1 if e % 2 else 1


def is_proven_modulus(h: int) -> bool:
    """h odd or prime: the cases the order-h congruences are proved for."""
    return h == 2 or h % 2 == 1


def is_proven_alpha(alpha: int) -> bool:
    """|alpha| <= 2: the slopes the key congruence proof covers."""
    return abs(alpha) in (1, 2)


def prop1_exact(n: int, r: int, params: FactorialParams) -> Scalar:
    """Right-hand side of the exact order-(n+r) difference equation.

    Equals p_n(alpha, R): the binomial convolution of p_{k+1}(-a, R+(n-1+r)a)
    with p_{n-1-k}(a, R), plus the numerator coefficient C_{n+r,n}
    (zero by convention when r = 0).
    """
    if n < 0 or r < 0:
        raise DomainError("prop1_exact: need n, r >= 0")
    if n == 0:
        return 1
    alpha, rr = params.alpha, params.r_at(n)
    shifted = rr + (n - 1 + r) * alpha
    total: Scalar = 0
    p_left: Scalar = 1
    for k in range(n):
        p_left *= shifted - k * alpha
        total += binomial(n + r, k + 1) * (-1) ** k * p_left \
            * generalized_product(alpha, rr, n - 1 - k)
    c_term: Scalar = 0
    if r > 0:
        c_term = chn_product_form(n + r, n, FactorialParams.fixed(alpha, rr))
    return total + c_term


def _order_h_sum(n: int, h: int, t: int, alpha: int, r: Scalar) -> Scalar:
    """sum_k C(h,k) a^((t+1)k) p_k(a, a(1-h)-R) p_{n-k}(a, R).

    Integerized form of the order-h expansion with weight a^(n+(t+1)k):
    both Pochhammer factors are absorbed into plain products.
    """
    left = [1]
    base = alpha * (1 - h) - r
    for k in range(1, n + 1):
        left.append(left[-1] * (base + (k - 1) * alpha))
    right = [1]
    for j in range(1, n + 1):
        right.append(right[-1] * (r + (j - 1) * alpha))
    weight = alpha ** (t + 1)
    total: Scalar = 0
    wk: Scalar = 1
    for k in range(n + 1):
        total += binomial(h, k) * wk * left[k] * right[n - k]
        wk *= weight
    return total


def prop1_mod_h(n: int, h: int, params: FactorialParams) -> CongruenceReport:
    """Both displayed order-h sums vs p_n(alpha, beta n + gamma) mod h.

    The two printed shapes are algebraically identical; both are computed
    and their exact agreement recorded.  Composite even h and |alpha| >= 3
    are conjectural: reported, never asserted upstream.
    """
    return prop1_mod_h_alpha_t(n, h, 0, params)


def prop1_mod_h_alpha_t(n: int, h: int, t: int, params: FactorialParams) -> CongruenceReport:
    """Order-h sum with weight a^(n+(t+1)k) vs p_n mod h*|a|^t."""
    if n < 0 or h < 2 or t < 0:
        raise DomainError("prop1_mod_h_alpha_t: need n >= 0, h >= 2, t >= 0")
    alpha, r = params.alpha, params.r_at(n)
    target = generalized_product(alpha, r, n)
    rhs = _order_h_sum(n, h, t, alpha, r)
    # Second printed shape of the t = 0 congruence, via the product form.
    alt = None
    if t == 0:
        shifted = r + (h - 1) * alpha
        alt = 0
        p_left: Scalar = 1
        for k in range(n + 1):
            if k > 0:
                p_left *= shifted - (k - 1) * alpha
            alt += binomial(h, k) * (-alpha) ** k * p_left \
                * generalized_product(alpha, r, n - k)
    modulus = h * abs(alpha) ** t
    return CongruenceReport.check(
        "prop1_v2" if t else "prop1_v1",
        {"n": n, "h": h, "t": t, "alpha": alpha, "r": r},
        lhs=target,
        rhs=rhs,
        modulus=modulus,
        conjectural=not (is_proven_modulus(h) and is_proven_alpha(alpha)),
        details={} if alt is None else {"product_form": alt},
        extra_pass=alt is None or alt == rhs,
    )


def alpha_fact_congruence(form: int, n: int, h: int, t: int,
                          alpha: int, d: int) -> CongruenceReport:
    """Multifactorial congruence (a*n - d)!_(a) mod h*a^t, two printed sums.

    Form 1 carries Pochhammer offsets (d/a - h, (a-d)/a); form 2 the
    index-shifted pair (d/a + n + 1 - h, d/a - n).  Both reduce to integer
    products once the powers of `a` are distributed.
    """
    if form not in (1, 2):
        raise DomainError(f"alpha_fact_congruence: form must be 1 or 2, got {form}")
    if alpha < 1 or not 0 <= d < alpha or t < 0 or h < 2:
        raise DomainError("alpha_fact_congruence: need alpha >= 1, 0 <= d < alpha, h >= 2, t >= 0")
    target = alpha_factorial(alpha * n - d, alpha)
    if form == 1:
        # sum_i C(h,i) (-1)^((t+1)i) a^((t+1)i) p_i(a, d - h a) p_{n-i}(a, a - d)
        left = _product_table(alpha, d - h * alpha, n)
        right = _product_table(alpha, alpha - d, n)
        sign_base = (-alpha) ** (t + 1)
    else:
        # sum_i C(h,i) (-1)^n a^((t+1)i) p_i(a, d + (n+1-h)a) p_{n-i}(a, d - n a)
        left = _product_table(alpha, d + (n + 1 - h) * alpha, n)
        right = _product_table(alpha, d - n * alpha, n)
        sign_base = alpha ** (t + 1)
    total = 0
    w = 1
    for i in range(n + 1):
        total += binomial(h, i) * w * left[i] * right[n - i]
        w *= sign_base
    if form == 2:
        total *= (-1) ** n
    modulus = h * alpha**t
    return CongruenceReport.check(
        f"alpha_fact_congruence_f{form}",
        {"n": n, "h": h, "t": t, "alpha": alpha, "d": d},
        lhs=target,
        rhs=total,
        modulus=modulus,
        conjectural=not (is_proven_modulus(h) and is_proven_alpha(alpha)),
    )


def _product_table(alpha: int, r: Scalar, n: int) -> list[Scalar]:
    out: list[Scalar] = [1]
    for k in range(n):
        out.append(out[-1] * (r + k * alpha))
    return out


def dbl_fact_congruence(form: int, n: int, h: int, s: int) -> CongruenceReport:
    """(2n-1)!! mod 2^s h through one of the three printed sums."""
    if form not in (1, 2, 3):
        raise DomainError(f"dbl_fact_congruence: form must be in 1..3, got {form}")
    if h < 2 or not 0 <= s:
        raise DomainError("dbl_fact_congruence: need h >= 2, s >= 0")
    target = double_factorial(2 * n - 1)
    if form == 1:
        left = _product_table(2, 1 - 2 * h, n)
        right = _product_table(2, 1, n)
        total: Scalar = sum(
            binomial(h, i) * 2 ** ((s + 1) * i) * left[i] * right[n - i]
            for i in range(n + 1)
        )
    elif form == 3:
        left = _product_table(2, 1 + 2 * n - 2 * h, n)
        right = _product_table(2, 1 - 2 * n, n)
        total = sum(
            binomial(h, i) * (-1) ** (n + (s + 1) * i) * 2 ** ((s + 1) * i)
            * left[i] * right[n - i]
            for i in range(n + 1)
        )
    else:
        total = sum(
            binomial(h, i) * binomial(2 * n - 2 * i, n - i)
            * Fraction(2 ** (n + (s + 1) * i), 4 ** (n - i))
            * pochhammer(Fraction(1, 2) - h, i) * factorial(n - i)
            for i in range(n + 1)
        )
    return CongruenceReport.check(
        f"dbl_fact_congruence_f{form}",
        {"n": n, "h": h, "s": s},
        lhs=target,
        rhs=total,
        modulus=2**s * h,
        conjectural=not is_proven_modulus(h),
    )


def central_binomial_semi_poly(form: str, n: int, p: int = 2) -> CongruenceReport:
    """Central binomial coefficient by the reduce-then-substitute procedure.

    form 'mod_2n1': reduce mod (2x + 1), substitute x := n, compare with
    C(2n, n) mod 2n+1.  form 'mod_np': reduce mod x^p, substitute, compare
    mod n^p.
    """
    if form not in ("mod_2n1", "mod_np"):
        raise DomainError(f"central_binomial_semi_poly: unknown form {form!r}")
    target = math.comb(2 * n, n)
    if form == "mod_2n1":
        if n < 1:
            raise DomainError("central_binomial_semi_poly: need n >= 1")
        outer = 2 * n + 1
        mod_poly = Poly1([1, 2])
        # term_i = C(2x+1, i) (-2)^i ff(1/2 + 2x, i) (1/2)_{n-i} 4^n / n!
        # where each step folds (2x+1-j)(-2)(1/2+2x-j) = -(2x+1-j)(4x+1-2j).
        expr = Poly1()
        running = Poly1.const(1)
        scale = Fraction(4**n, factorial(n))
        for i in range(n + 1):
            if i > 0:
                j = i - 1
                running = running * Poly1([-(2 * j * j - 3 * j + 1), 8 * j - 6, -8])
            expr = expr + running * (Fraction(1, factorial(i)) * pochhammer(Fraction(1, 2), n - i) * scale)
        residue_val = poly_mod_reduce_substitute(expr, mod_poly, n, outer)
    else:
        if n < 2 or p < 1:
            raise DomainError("central_binomial_semi_poly: need n >= 2, p >= 1")
        outer = n**p
        mod_poly = Poly1.x_power(p)
        # term_i = C(x^p, i) C(2n-2i, n-i) (1/2 - x^p)_i 8^i (n-i)! / n!
        expr = Poly1()
        running_y = [Fraction(1)]  # coefficients in y = x^p of C(y,i)(1/2 - y)_i * i!
        for i in range(n + 1):
            if i > 0:
                # multiply by (y - (i-1)) (1/2 - y + (i-1))
                a = Fraction(2 * i - 1, 2)  # 1/2 + (i-1)
                new = [Fraction(0)] * (len(running_y) + 2)
                for e, c in enumerate(running_y):
                    # c*y^e * (y - (i-1)) * (a - y)
                    new[e] += c * (-(i - 1) * a)
                    new[e + 1] += c * (a + (i - 1))
                    new[e + 2] += c * (-1)
                running_y = new
            const = Fraction(
                math.comb(2 * n - 2 * i, n - i) * 8**i * factorial(n - i),
                factorial(i) * factorial(n),
            )
            dense = [Fraction(0)] * (p * (len(running_y) - 1) + 1)
            for e, c in enumerate(running_y):
                dense[p * e] += c * const
            expr = expr + Poly1(dense)
        residue_val = poly_mod_reduce_substitute(expr, mod_poly, n, outer)
    return CongruenceReport.check(
        f"central_binomial_{form}",
        {"n": n, "p": p},
        lhs=target,
        rhs=residue_val,
        modulus=outer,
    )


LEMMA_SUM_FORMS = ("a1", "a2", "a3", "b1", "b2")


def single_fact_lemma_sum(form: str, n: int, s: int, h: int) -> int:
    """One of the five printed finite-sum expansions of (n-s)! mod h.

    The value is returned exactly; the caller reduces mod h.  The a-forms
    agree exactly with each other (all equal C_{h,n-s}(1,1)), as do the two
    b-forms; across families only the congruence mod h holds.
    """
    if form not in LEMMA_SUM_FORMS:
        raise DomainError(f"single_fact_lemma_sum: unknown form {form!r}")
    m = n - s
    if m < 0:
        raise DomainError("single_fact_lemma_sum: need n - s >= 0")
    if h < 2:
        raise DomainError("single_fact_lemma_sum: need h >= 2")
    total = 0
    if form == "a1":
        for i in range(m + 1):
            total += binomial(h, i) * pochhammer(-h, i) * factorial(m - i)
    elif form == "a2":
        for i in range(m + 1):
            total += binomial(h, i) ** 2 * (-1) ** i * factorial(i) * factorial(m - i)
    elif form == "a3":
        for i in range(m + 1):
            total += binomial(h, i) * binomial(i - h - 1, i) * factorial(i) * factorial(m - i)
    elif form == "b1":
        for i in range(m + 1):
            total += binomial(h, i) * pochhammer(m + 1 - h, i) \
                * (-1) ** (m - i) * pochhammer(-m, m - i)
    else:
        for i in range(m + 1):
            total += binomial(h, i) * binomial(m, i) * binomial(h - m - 1, i) \
                * (-1) ** i * factorial(i) * factorial(m - i)
    return total


def multiple_sum_expansion(variant: str, n: int, s: int, params: FactorialParams) -> Scalar:
    """Exact multiple-sum polynomial expansion of p_{n-s}(a, b n + g).

    'quad' is the five-index sum, 'five' the seven-index one; both carry
    the Iverson term for 0 <= n <= s.
    """
    if variant not in ("quad", "five"):
        raise DomainError(f"multiple_sum_expansion: unknown variant {variant!r}")
    if not params.is_linear:
        raise DomainError("multiple_sum_expansion: linear params required")
    alpha, beta, gamma = params.alpha, params.beta, params.gamma
    m_len = n - s
    if m_len < 1:
        if 0 <= n <= s:
            return 1
        raise DomainError("multiple_sum_expansion: need n - s >= 1 or 0 <= n <= s")
    aps = alpha * (s + 1) - gamma
    apb = alpha + beta
    total: Scalar = 0
    if variant == "quad":
        for k in range(m_len):
            cnk = binomial(m_len, k)
            for m in range(k + 1):
                s1a = stirling1(k, m)
                if not s1a:
                    continue
                for t in range(m_len - k + 1):
                    s1b = stirling1(m_len - k, t)
                    if not s1b:
                        continue
                    base = cnk * s1a * s1b * alpha ** (m_len - m - t)
                    for r in range(m + 1):
                        pre = base * binomial(m, r) * beta**r * gamma ** (m - r)
                        for q in range(t + 1):  # q = p - r
                            total += pre * binomial(t, q) * (-1) ** (q + 1) \
                                * apb**q * aps ** (t - q) * n ** (q + r)
        return total
    for k in range(m_len):
        kfac = factorial(k)
        for m in range(k + 1):
            s1a = stirling1(k, m)
            if not s1a:
                continue
            for i in range(k + 1):
                s1c = stirling1(k, i)
                if not s1c:
                    continue
                for t in range(m_len - k + 1):
                    s1b = stirling1(m_len - k, t)
                    if not s1b:
                        continue
                    base = Fraction(s1a * s1b * s1c * (-1) ** (k + 1), kfac) \
                        * alpha ** (m_len - m - t)
                    for r in range(m + 1):
                        pre = base * binomial(m, r) * beta**r * gamma ** (m - r)
                        for q in range(t + 1):  # q = p - r ; p = q + r
                            p_idx = q + r
                            mid = pre * binomial(t, q) * apb**q * aps ** (t - q)
                            for w in range(i + 1):  # w = u - p ; u = p + w
                                u = p_idx + w
                                total += mid * binomial(i, w) * (-1) ** (u - r) \
                                    * s ** (p_idx - u + i) * n**u
    return total


def single_fact_triple_sum(form: int, n: int) -> int:
    """(n-1)! through one of the three exact triple sums."""
    if form not in (1, 2, 3):
        raise DomainError(f"single_fact_triple_sum: form must be in 1..3, got {form}")
    if n < 1:
        raise DomainError("single_fact_triple_sum: need n >= 1")
    total = 0
    if form == 1:
        for p in range(n + 1):
            inner = 0
            for k in range(n):
                s1a = stirling1(n - 1 - k, p)
                if not s1a:
                    continue
                row = sum(stirling1(k, k - t) for t in range(k + 1))
                inner += math.comb(n, n - 1 - k) * s1a * row
            total += inner * _sign(n - 1 - p) * (n - 1) ** p
    elif form == 2:
        for p in range(n + 1):
            inner = 0
            for k in range(n):
                s1a = stirling1(k, p)
                if not s1a:
                    continue
                row = sum(stirling1(n - 1 - k, n - 1 - k - t) for t in range(n - k))
                inner += math.comb(n, k) * s1a * row
            total += inner * _sign(n - 1 - p) * (n - 1) ** p
    else:
        for p in range(n + 1):
            inner = 0
            for k in range(n):
                s1a = stirling1(n - 1 - k, n - p)
                if not s1a:
                    continue
                row = sum(stirling1(k, k - t) for t in range(k + 1))
                inner += math.comb(n, n - 1 - k) * s1a * row
            total += inner * _sign(p + 1) * (n - 1) ** (n - p)
    return total


def riordan_check(n: int) -> CongruenceReport:
    """n^n against both binomial-factorial expansions."""
    if n < 1:
        raise DomainError("riordan_check: need n >= 1")
    lhs = n**n
    f1 = sum(math.comb(n - 1, k) * factorial(k + 1) * n ** (n - 1 - k) for k in range(n))
    f2 = sum(math.comb(n - 1, k) * factorial(n - k) * n**k for k in range(n))
    return CongruenceReport.check(
        "riordan",
        {"n": n},
        lhs=lhs,
        rhs=f1,
        modulus=0,
        details={"reindexed": f2},
        extra_pass=f2 == lhs,
    )


def dbl_fact_triple_sum(form: int, n: int) -> Scalar:
    """(2n-1)!! through one of the five double/triple sums."""
    if form not in (1, 2, 3, 4, 5):
        raise DomainError(f"dbl_fact_triple_sum: form must be in 1..5, got {form}")
    if n < 1:
        raise DomainError("dbl_fact_triple_sum: need n >= 1")
    total: Scalar = 0
    if form == 1:
        for k in range(1, n + 1):
            row = sum(stirling1(k - 1, j - 1) * 2 ** (n - j) for j in range(1, k + 1))
            total += row * (-1) ** (n - k) * pochhammer(1 - n, n - k)
    elif form == 2:
        for k in range(1, n + 1):
            row = sum(stirling1(k - 1, j - 1) * 2 ** (n - j) for j in range(1, k + 1))
            for m in range(n - k + 1):
                total += row * stirling1(n - k + 1, m + 1) * (-1) ** (n - k - m) * n**m
    elif form == 3:
        for k in range(1, n + 1):
            row = sum(stirling1(k, j) for j in range(1, k + 1))
            total += math.comb(2 * n - k - 1, k - 1) * row * double_factorial(2 * n - 2 * k - 1)
    elif form == 4:
        for k in range(1, n + 1):
            row = sum(stirling1(k, j) for j in range(1, k + 1))
            inner = sum(stirling1(n - k, m) * 2 ** (n - k - m) for m in range(n - k + 1))
            total += math.comb(2 * n - k - 1, k - 1) * row * inner
    else:
        for k in range(1, n + 1):
            row = sum(stirling1(k, j) for j in range(1, k + 1))
            inner = sum(
                fcf2(2, n - k + 1, m + 1) * (-1) ** (n - k - m) * (2 * n - 2 * k) ** m
                for m in range(n - k + 1)
            )
            total += math.comb(2 * n - k - 1, k - 1) * row * inner
    return total


def alpha_fact_exact_sums(form: str, alpha: int, n: int) -> Scalar:
    """(a*n - 1)!_(a) by one of the exact convolution identities.

    'pochhammer' and 'binomial' are the single sums (the first through the
    negative-index Pochhammer extension); 'double1'/'double2' are the
    two double sums.
    """
    if form not in ("pochhammer", "binomial", "double1", "double2"):
        raise DomainError(f"alpha_fact_exact_sums: unknown form {form!r}")
    if alpha < 2:
        raise DomainError("alpha_fact_exact_sums: need alpha >= 2")
    if n < 2:
        raise DomainError("alpha_fact_exact_sums: identities need n >= 2")
    inv_a = Fraction(1, alpha)
    total: Scalar = 0
    if form == "pochhammer":
        for k in range(n):
            total += binomial(n - 1, k + 1) * (-1) ** k \
                * pochhammer(inv_a, -(k + 1)) * pochhammer(inv_a - n, k + 1) \
                * alpha_factorial(alpha * (k + 1) - 1, alpha) \
                * alpha_factorial(alpha * (n - k - 1) - 1, alpha)
    elif form == "binomial":
        for k in range(n):
            total += binomial(n - 1, k + 1) * (-1) ** k \
                * binomial(inv_a + k - n, k + 1) / binomial(inv_a - 1, k + 1) \
                * alpha_factorial(alpha * (k + 1) - 1, alpha) \
                * alpha_factorial(alpha * (n - k - 1) - 1, alpha)
    elif form == "double1":
        for k in range(n):
            for i in range(k + 2):
                total += binomial(n - 1, k + 1) * binomial(k + 1, i) \
                    * (-1) ** k * alpha ** (k + 1 - i) \
                    * alpha_factorial(alpha * i - 1, alpha) \
                    * alpha_factorial(alpha * (n - 1 - k) - 1, alpha) \
                    * pochhammer(n - 1 - k, k + 1 - i)
    else:
        for k in range(n):
            for i in range(k + 2):
                total += binomial(n - 1, k + 1) * binomial(k + 1, i) \
                    * binomial(n - 1 - i, k + 1 - i) \
                    * (-1) ** k * alpha ** (k + 1 - i) \
                    * alpha_factorial(alpha * i - 1, alpha) \
                    * alpha_factorial(alpha * (n - 1 - k) - 1, alpha) \
                    * factorial(k + 1 - i)
    return total


def single_fact_via_dblfact(n: int) -> Scalar:
    """(n-1)! as (2n-3)!! plus two double sums of double-factorial convolutions."""
    if n < 2:
        raise DomainError("single_fact_via_dblfact: need n >= 2")
    total: Scalar = double_factorial(2 * n - 3)
    for k in range(1, n - 1):
        for j in range(k, n):
            total += (-1) ** (j + 1) * pochhammer(-j, k) \
                * pochhammer(-(2 * n - k - j - 2), j - k) * double_factorial(2 * n - 2 * j - 3)
        for j in range(k + 1, n):
            total += (-1) ** j * pochhammer(-j, k + 1) \
                * pochhammer(-(2 * n - k - j - 3), j - k - 1) * double_factorial(2 * n - 2 * j - 3)
    return total
