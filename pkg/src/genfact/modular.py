"""Modular helpers for the large scans: binomial rows, factorial tables.

Factorials like (2^p - 2)! never get materialized; everything is a running
product modulo the target.  Binomial coefficients C(N, i) for huge N use an
exact incremental recurrence while i stays small, and Lucas' theorem glued
with CRT once i gets big (which requires the modulus to be squarefree --
true for every large-scan modulus in this package).
"""

from __future__ import annotations

from typing import Iterator

from .core import NonInvertibleError
from .report import modinv

EXACT_BINOM_ROW_LIMIT = 4096


def factorial_mod(n: int, m: int) -> int:
    acc = 1 % m
    for i in range(2, n + 1):
        acc = acc * i % m
    return acc


def factorial_table_mod(n_max: int, m: int) -> list[int]:
    table = [1 % m] * (n_max + 1)
    for i in range(1, n_max + 1):
        table[i] = table[i - 1] * i % m
    return table


def double_factorial_mod(n: int, m: int) -> int:
    """(n)!_(2) mod m for n >= -1."""
    acc = 1 % m
    k = n
    while k > 0:
        acc = acc * (k % m) % m
        k -= 2
    return acc


def trial_factorize(m: int, limit: int = 10**7) -> dict[int, int]:
    """Prime factorization by trial division; m must stay desk-scale."""
    if m > limit * limit:
        raise NonInvertibleError(f"trial_factorize: {m} too large to factor here")
    factors: dict[int, int] = {}
    n = m
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def crt(residues: list[int], moduli: list[int]) -> int:
    """Combine pairwise-coprime congruences x = r_i mod m_i."""
    x, m = residues[0], moduli[0]
    for r, q in zip(residues[1:], moduli[1:]):
        k = (r - x) * modinv(m % q, q) % q
        x += m * k
        m *= q
    return x % m


class _LucasTable:
    """Factorial and inverse-factorial tables mod a prime, for Lucas digits."""

    def __init__(self, p: int):
        self.p = p
        fact = factorial_table_mod(p - 1, p)
        inv_last = modinv(fact[-1], p)
        invfact = [1] * p
        invfact[-1] = inv_last
        for i in range(p - 1, 0, -1):
            invfact[i - 1] = invfact[i] * i % p
        self.fact = fact
        self.invfact = invfact

    def binom(self, a: int, b: int) -> int:
        if b < 0 or b > a:
            return 0
        return self.fact[a] * self.invfact[b] % self.p * self.invfact[a - b] % self.p

    def binom_lucas(self, n: int, k: int) -> int:
        res = 1
        p = self.p
        while n or k:
            res = res * self.binom(n % p, k % p) % p
            if res == 0:
                return 0
            n //= p
            k //= p
        return res


def binom_row_mod(n: int, k_max: int, m: int) -> Iterator[int]:
    """Yield C(n, i) mod m for i = 0..k_max.

    Small rows run the exact multiplicative recurrence (always correct).
    Long rows need a squarefree modulus so that Lucas + CRT applies;
    otherwise NonInvertibleError is raised.
    """
    if k_max <= EXACT_BINOM_ROW_LIMIT:
        acc = 1
        yield acc % m
        for i in range(1, k_max + 1):
            acc = acc * (n - i + 1) // i
            yield acc % m
        return
    factors = trial_factorize(m)
    if any(e > 1 for e in factors.values()):
        raise NonInvertibleError(
            f"binom_row_mod: modulus {m} not squarefree; long row unsupported")
    tables = [_LucasTable(p) for p in factors]
    moduli = [t.p for t in tables]
    for i in range(k_max + 1):
        yield crt([t.binom_lucas(n, i) for t in tables], moduli)


def chn_one_one_sum_mod(h: int, m_index: int, mod: int) -> int:
    """Sum C(h,i)^2 (-1)^i i! (m-i)!  (i = 0..m) reduced mod `mod`.

    This is the C_{h,m}(1,1) congruence expansion of m!; it is the
    workhorse sum behind the Wilson-flavoured large scans.
    """
    fact = factorial_table_mod(m_index, mod)
    total = 0
    for i, c in enumerate(binom_row_mod(h, m_index, mod)):
        term = c * c % mod * fact[i] % mod * fact[m_index - i] % mod
        total = (total - term if i & 1 else total + term) % mod
    return total


def chn_neg_one_sum_mod(h: int, m_index: int, mod: int) -> int:
    """Sum C(h,i) (m+1-h)_i (-1)^(m-i) (-m)_(m-i)  (i = 0..m) mod `mod`.

    The C_{h,m}(-1,m)-family expansion of m!; the Pochhammer factors are
    run as products mod `mod`, never materialized.
    """
    # (-1)^(m-i) (-m)_(m-i) = m!/i!; iterate i downward so it grows by *i.
    binoms = list(binom_row_mod(h, m_index, mod))
    poch = [1 % mod] * (m_index + 1)  # (m+1-h)_i mod `mod`
    acc = 1 % mod
    for i in range(1, m_index + 1):
        acc = acc * ((m_index + 1 - h + i - 1) % mod) % mod
        poch[i] = acc
    total = 0
    ff = 1 % mod  # m!/i! for the current i, walking i = m .. 0
    for i in range(m_index, -1, -1):
        total = (total + binoms[i] * poch[i] % mod * ff) % mod
        ff = ff * (i % mod) % mod
    return total
