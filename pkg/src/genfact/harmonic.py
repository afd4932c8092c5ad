"""Exact harmonic numbers, their stepped generalizations, and the
harmonic-number identity suites: Stirling-triangle expansions, the
multifactorial coefficient identities, and the symbolically-derived
closed forms for the Wilson-style binomial sums.

Everything is checked over exact rationals; the registry in
``SIGMA_REGISTRY`` keys each closed-form family so new ones can be added
without touching the API.
"""

from __future__ import annotations

from fractions import Fraction

from .core import DomainError, Scalar, binomial, factorial, pochhammer
from .report import CongruenceReport
from .triangles import fcf2, stirling1


def harmonic(n: int, r: int = 1) -> Fraction:
    """r-order harmonic number; 0 for n <= 0 by convention."""
    if r < 1:
        raise DomainError(f"harmonic: order must be >= 1, got {r}")
    return sum((Fraction(1, k**r) for k in range(1, n + 1)), Fraction(0))


harmonic_number = harmonic  # module-shadow-safe alias for CLI use


def harmonic_alpha(alpha: int, n: int, r: int = 1) -> Fraction:
    """Stepped harmonic number: sum of 1/(alpha*k + 1 - alpha)^r, k = 1..n."""
    if alpha < 1 or r < 1:
        raise DomainError("harmonic_alpha: need alpha >= 1 and r >= 1")
    return sum(
        (Fraction(1, (alpha * k + 1 - alpha) ** r) for k in range(1, n + 1)),
        Fraction(0),
    )


def stirling_harmonic_identity(k: int, n: int) -> CongruenceReport:
    """[n+1, k] against its harmonic-number closed form, k in 2..5."""
    if k not in (2, 3, 4, 5):
        raise DomainError(f"stirling_harmonic_identity: k must be in 2..5, got {k}")
    if n < 0:
        raise DomainError("stirling_harmonic_identity: need n >= 0")
    h1 = harmonic(n, 1)
    lhs = Fraction(stirling1(n + 1, k))
    nf = factorial(n)
    if k == 2:
        rhs = nf * h1
    elif k == 3:
        rhs = Fraction(nf, 2) * (h1**2 - harmonic(n, 2))
    elif k == 4:
        h2, h3 = harmonic(n, 2), harmonic(n, 3)
        rhs = Fraction(nf, 6) * (h1**3 - 3 * h1 * h2 + 2 * h3)
    else:
        h2, h3, h4 = harmonic(n, 2), harmonic(n, 3), harmonic(n, 4)
        rhs = Fraction(nf, 24) * (
            h1**4 - 6 * h1**2 * h2 + 3 * h2**2 + 8 * h1 * h3 - 6 * h4
        )
    return CongruenceReport.check(
        f"stirling_harmonic_k{k}", {"k": k, "n": n}, lhs=lhs, rhs=rhs, modulus=0)


FCF_HARMONIC_FORMS = ("m1_sum", "m2_sum", "m1_closed", "m2_closed", "m3_closed")


def fcf_harmonic_identity(form: str, alpha: int, n: int) -> CongruenceReport:
    """Multifactorial-coefficient columns against their harmonic expansions."""
    if form not in FCF_HARMONIC_FORMS:
        raise DomainError(f"fcf_harmonic_identity: unknown form {form!r}")
    if alpha < 1 or n < 0:
        raise DomainError("fcf_harmonic_identity: need alpha >= 1, n >= 0")
    nf = factorial(n)
    a = Fraction(alpha)
    if form == "m1_sum":
        lhs = fcf2(alpha, n + 1, 2) / nf
        rhs = a ** (n - 1) * sum(
            binomial(1 - Fraction(1, alpha), k) * (-1) ** k * harmonic(n - k)
            for k in range(n + 1)
        )
    elif form == "m2_sum":
        lhs = fcf2(alpha, n + 1, 3) / nf
        rhs = a ** (n - 2) / 2 * sum(
            binomial(1 - Fraction(1, alpha), k) * (-1) ** k
            * (harmonic(n - k) ** 2 - harmonic(n - k, 2))
            for k in range(n + 1)
        )
    else:
        front = a**n * binomial(n + Fraction(1 - alpha, alpha), n)
        h1 = harmonic_alpha(alpha, n, 1)
        if form == "m1_closed":
            lhs = fcf2(alpha, n + 1, 2) / nf
            rhs = front * h1
        elif form == "m2_closed":
            lhs = fcf2(alpha, n + 1, 3) / nf
            rhs = front / 2 * (h1**2 - harmonic_alpha(alpha, n, 2))
        else:
            lhs = fcf2(alpha, n + 1, 4) / nf
            h2, h3 = harmonic_alpha(alpha, n, 2), harmonic_alpha(alpha, n, 3)
            rhs = front / 6 * (h1**3 - 3 * h1 * h2 + 2 * h3)
    return CongruenceReport.check(
        f"fcf_harmonic_{form}", {"alpha": alpha, "n": n, "form": form},
        lhs=lhs, rhs=rhs, modulus=0)


def wolstenholme_stirling_check(p: int) -> CongruenceReport:
    """Necessary primality condition: p^2 | [p,2] and p^2 divides the
    alternating combination p[p,3] - p^2[p,4] + ... + p^(p-2)[p,p]."""
    if p < 5:
        raise DomainError("wolstenholme_stirling_check: need p >= 5")
    sq = p * p
    first = stirling1(p, 2) % sq
    combo = sum((-1) ** (j + 1) * p**j * stirling1(p, j + 2) for j in range(1, p - 1))
    return CongruenceReport.check(
        "wolstenholme_stirling", {"p": p},
        lhs=first, rhs=0, modulus=sq,
        details={"combination_residue": combo % sq},
        extra_pass=combo % sq == 0)


# ---------------------------------------------------------------------------
# Symbolic-summation closed forms (the "Sigma" registry)
# ---------------------------------------------------------------------------

def wilson_style_sum(h: int, m: int) -> int:
    """sum C(h,i)^2 (-1)^i i! (m-i)!, i = 0..m; congruent to m! mod h."""
    return sum(
        binomial(h, i) ** 2 * (-1) ** i * factorial(i) * factorial(m - i)
        for i in range(m + 1)
    )


def s1d_sum(d: int, n: int) -> Fraction:
    """The defining closed sum: (-1)^n d^2 sum C(i+d,d)^2 i! (2d+i)_{n-i} / (i+d)^2."""
    total = Fraction(0)
    for i in range(n + 1):
        total += Fraction(binomial(i + d, d) ** 2 * factorial(i)
                          * pochhammer(2 * d + i, n - i), (i + d) ** 2)
    return (-1) ** n * d * d * total


def _s1d_middle(d: int, n: int) -> Fraction:
    inner = Fraction(0)
    for i in range(1, n + 1):
        inner += Fraction(binomial(i + d, i) * (-1) ** i * pochhammer(-(i + d), i),
                          (i + d) ** 2 * pochhammer(2 * d, i))
    return (-1) ** n * pochhammer(2 * d, n) * (1 + d * d * inner)


def _s1d_general(d: int, n: int) -> Fraction:
    inner = Fraction(0)
    for i in range(1, d + 1):
        inner += Fraction((-1) ** (d - i) * factorial(d + i - 2),
                          factorial(i - 1) ** 2 * factorial(d - i)) \
            * (harmonic(n - 1 + d + i) - harmonic(d + i - 1))
    return (-1) ** n * pochhammer(2 * d, n) \
        * (1 + Fraction(d, 2) * binomial(2 * d, d) * inner)


def _s1d_closed(d: int, n: int) -> list[Fraction]:
    """Explicit harmonic closed forms for d = 1..4 (both printed variants).

    The second-variant prefactors carry an extra factor d^2 relative to the
    printed ones; the printed versions reproduce S_{1,d}/d^2.
    """
    sign = (-1) ** n
    h = harmonic
    if d == 1:
        return [sign * factorial(n + 1) * h(n + 1)]
    if d == 2:
        v1 = sign * factorial(n + 2) * ((n + 3) * h(n + 2) - 2 * (n + 2))
        v2 = 6 * sign * pochhammer(4, n) * (
            h(n) - Fraction(2 * n**3 + 8 * n**2 + 7 * n - 1,
                            (n + 1) * (n + 2) * (n + 3)))
        return [v1, v2]
    if d == 3:
        v1 = Fraction(sign, 4) * factorial(n + 4) * ((n + 5) * h(n + 3) - 3 * (n + 3))
        v2 = 30 * sign * pochhammer(6, n) * (
            h(n) - Fraction(3 * n**4 + 24 * n**3 + 60 * n**2 + 46 * n - 1,
                            (n + 1) * (n + 2) * (n + 3) * (n + 5)))
        return [v1, v2]
    if d == 4:
        v1 = Fraction(sign, 108) * factorial(n + 4) * (
            3 * (n + 5) * (n + 6) * (n + 7) * h(n + 4)
            - (n + 4) * (11 * n**2 + 118 * n + 327))
        big = (11 * n**7 + 260 * n**6 + 2498 * n**5 + 12404 * n**4
               + 33329 * n**3 + 45548 * n**2 + 24426 * n - 108)
        den = 1
        for j in range(1, 8):
            den *= n + j
        v2 = Fraction(140, 3) * sign * pochhammer(8, n) * (3 * h(n) - Fraction(big, den))
        return [v1, v2]
    raise DomainError(f"s1d closed forms cover d = 1..4, got {d}")


def nfact_mod_2np1_forms(n: int) -> list[Fraction]:
    """The binomial-square sum congruent to n! mod 2n+1, in all five
    symbolically-derived shapes; all are exactly equal."""
    f1 = Fraction(wilson_style_sum(2 * n + 1, n))
    sign = (-1) ** n
    lead = Fraction(factorial(3 * n + 1), factorial(n) ** 2)

    def weight_a(i: int) -> Fraction:
        return 11 + Fraction(20, i) - Fraction(8, 2 * i + 1) + Fraction(1, (2 * i + 1) ** 2)

    def weight_b(i: int) -> Fraction:
        return (Fraction(10, i) + Fraction(5, 2 * i + 1)
                - Fraction(1, (2 * i + 1) ** 2) - Fraction(32, 3 * i + 1))

    sum2 = sum((binomial(2 * i + 1, i) ** 2
                * Fraction(factorial(i) ** 3, 2 * factorial(3 * i + 1)) * weight_a(i)
                for i in range(1, n + 1)), Fraction(0))
    f2 = sign * lead / 8 * (8 - sum2)
    sum3 = sum((binomial(2 * i + 1, i) ** 2
                * Fraction(factorial(i) * pochhammer(3 * i + 2, 3 * n - 3 * i),
                           pochhammer(i + 1, n - i) ** 2) * weight_a(i)
                for i in range(1, n + 1)), Fraction(0))
    f3 = sign * lead - Fraction(sign, 16) * sum3
    sum4 = sum((binomial(2 * i + 1, i) ** 2
                * Fraction(factorial(i) ** 3, factorial(3 * i)) * weight_b(i)
                for i in range(1, n + 1)), Fraction(0))
    f4 = sign * lead / 8 * (8 - sum4)
    sum5 = sum((binomial(2 * i + 1, i) ** 2
                * Fraction(factorial(i) * pochhammer(3 * i + 1, 3 * n - 3 * i),
                           pochhammer(i + 1, n - i) ** 2) * weight_b(i)
                for i in range(1, n + 1)), Fraction(0))
    f5 = sign * lead - Fraction((3 * n + 1) * sign, 8) * sum5
    return [f1, f2, f3, f4, f5]


def t_product(h: int, n: int) -> Fraction:
    """T_{h,n}: the quadratic-parameter product, h > n required."""
    total = Fraction(1)
    for j in range(1, n + 1):
        den = 2 * (2 * h + 1 - 2 * j) * (h - j)
        if den == 0:
            raise DomainError(f"t_product: factor (h - {j}) or (2h+1-2{j}) vanishes")
        total *= Fraction((h - 2 * j) ** 2 * (h + 1 - 2 * j) ** 2, den)
    return total


def t_product_forms(h: int, n: int) -> list[Fraction]:
    """T_{h,n} in its three printed shapes."""
    v1 = t_product(h, n)
    v2 = 4**n * pochhammer(Fraction(1 - h, 2), n) ** 2 \
        * pochhammer(1 - Fraction(h, 2), n) ** 2 \
        / (pochhammer(Fraction(1, 2) - h, n) * pochhammer(1 - h, n))
    v3 = Fraction(pochhammer(1 - h, 2 * n) ** 2, pochhammer(1 - 2 * h, 2 * n))
    return [v1, Fraction(v2), v3]


def t_ratio_forms(h: int, n: int, i: int) -> list[Fraction]:
    """T_{h,n}/T_{h,i} as a quotient and as the shifted Pochhammer ratio."""
    if i > n:
        raise DomainError("t_ratio_forms: need n >= i")
    v1 = t_product(h, n) / t_product(h, i)
    v2 = Fraction(pochhammer(1 - h + 2 * i, 2 * n - 2 * i) ** 2,
                  pochhammer(1 - 2 * h + 2 * i, 2 * n - 2 * i))
    return [v1, v2]


def h_weight_forms(h: int, i: int) -> list[Fraction]:
    """H_{h,i} in the three-term partial-fraction shape and the product shape.

    The first term of the printed three-term shape carries a sign typo in
    the source material; the minus sign used here makes the two shapes
    agree identically.
    """
    for name, val in (("h-1", h - 1), ("h-i", h - i), ("2h+1-2i", 2 * h + 1 - 2 * i),
                      ("h+1-2i", h + 1 - 2 * i), ("h", h)):
        if val == 0:
            raise DomainError(f"h_weight_forms: factor {name} vanishes")
    v1 = (-Fraction(h * (h + 1) * (2 * h - 1), (h - 1) * (h - i))
          + Fraction(2 * (h + 1) ** 2 * (2 * h + 1), h * (2 * h + 1 - 2 * i))
          + Fraction(2 * (h + 1), h * (h - 1) * (h + 1 - 2 * i)))
    v2 = Fraction((h + 1) * (2 * h + 1 - 4 * i) * (h - 2 * i),
                  (2 * h + 1 - 2 * i) * (h + 1 - 2 * i) * (h - i))
    return [v1, v2]


def snh_sum(h: int, n: int) -> int:
    """S_n(h) = sum C(h,i)^2 (-1)^i i! (2n-i)!, i = 0..2n."""
    return wilson_style_sum(h, 2 * n)


def snh_forms(h: int, n: int) -> list[Fraction]:
    """S_n(h) directly and through the two T/H-weighted even-index sums."""
    if h < 2 * n + 1:
        raise DomainError("snh_forms: need h >= 2n+1")
    direct = Fraction(snh_sum(h, n))
    v2 = sum(
        (binomial(h, 2 * i) ** 2 * factorial(2 * i)
         * t_ratio_forms(h, n, i)[1] * h_weight_forms(h, i)[1]
         for i in range(n + 1)),
        Fraction(0),
    )
    v3 = Fraction(0)
    for i in range(n + 1):
        j = n - i
        v3 += binomial(h, 2 * j) ** 2 * factorial(2 * j) \
            * Fraction(pochhammer(1 - h + 2 * j, 2 * i) ** 2,
                       pochhammer(1 - 2 * h + 2 * j, 2 * i)) \
            * Fraction((h + 1) * (2 * h + 1 - 4 * j) * (h - 2 * j),
                       (2 * h + 1 - 2 * j) * (h + 1 - 2 * j) * (h - j))
    return [direct, v2, v3]


def _report_equal_family(identity_id: str, inputs: dict, values: list[Scalar],
                         modulus: int = 0, target: Scalar | None = None) -> CongruenceReport:
    ref = values[0] if target is None else target
    agree = all(v == values[0] for v in values)
    return CongruenceReport.check(
        identity_id, inputs, lhs=ref, rhs=values[0],
        modulus=modulus, details={"forms": list(values)}, extra_pass=agree)


def _sigma_s1d(params: dict) -> CongruenceReport:
    d, n = params["d"], params["n"]
    direct = Fraction(wilson_style_sum(n + d, n))
    forms = [direct, s1d_sum(d, n), _s1d_middle(d, n)]
    rep = _report_equal_family("sigma_s1d", {"d": d, "n": n}, forms)
    cong = direct % (n + d) == factorial(n) % (n + d)
    return CongruenceReport.check(
        "sigma_s1d", {"d": d, "n": n}, lhs=factorial(n), rhs=direct,
        modulus=n + d, details={"forms": forms}, extra_pass=rep.passed and cong)


def _sigma_s1d_closed(params: dict) -> CongruenceReport:
    d, n = params["d"], params["n"]
    direct = Fraction(wilson_style_sum(n + d, n))
    forms = [direct] + _s1d_closed(d, n)
    return _report_equal_family("sigma_s1d_closed", {"d": d, "n": n}, forms)


def _sigma_s1d_general(params: dict) -> CongruenceReport:
    d, n = params["d"], params["n"]
    direct = Fraction(wilson_style_sum(n + d, n))
    return _report_equal_family(
        "sigma_s1d_general", {"d": d, "n": n}, [direct, _s1d_general(d, n)])


def _sigma_nfact_2np1(params: dict) -> CongruenceReport:
    n = params["n"]
    forms = nfact_mod_2np1_forms(n)
    rep = _report_equal_family("sigma_nfact_2np1", {"n": n}, forms)
    cong = forms[0] % (2 * n + 1) == factorial(n) % (2 * n + 1)
    return CongruenceReport.check(
        "sigma_nfact_2np1", {"n": n}, lhs=factorial(n), rhs=forms[0],
        modulus=2 * n + 1, details={"forms": forms}, extra_pass=rep.passed and cong)


def _sigma_thn(params: dict) -> CongruenceReport:
    h, n = params["h"], params["n"]
    return _report_equal_family("sigma_thn", {"h": h, "n": n}, t_product_forms(h, n))


def _sigma_thn_ratio(params: dict) -> CongruenceReport:
    h, n, i = params["h"], params["n"], params["i"]
    return _report_equal_family(
        "sigma_thn_ratio", {"h": h, "n": n, "i": i}, t_ratio_forms(h, n, i))


def _sigma_hhi(params: dict) -> CongruenceReport:
    h, i = params["h"], params["i"]
    return _report_equal_family("sigma_hhi", {"h": h, "i": i}, h_weight_forms(h, i))


def _sigma_snh(params: dict) -> CongruenceReport:
    h, n = params["h"], params["n"]
    return _report_equal_family("sigma_snh", {"h": h, "n": n}, snh_forms(h, n))


SIGMA_REGISTRY = {
    "s1d": _sigma_s1d,
    "s1d_closed": _sigma_s1d_closed,
    "s1d_general": _sigma_s1d_general,
    "nfact_2np1": _sigma_nfact_2np1,
    "thn": _sigma_thn,
    "thn_ratio": _sigma_thn_ratio,
    "hhi": _sigma_hhi,
    "snh": _sigma_snh,
}


def sigma_identity(identity_id: str, params: dict) -> CongruenceReport:
    """Evaluate one registered closed-form identity exactly."""
    try:
        fn = SIGMA_REGISTRY[identity_id]
    except KeyError:
        raise DomainError(f"sigma_identity: unknown identity {identity_id!r}") from None
    return fn(params)
