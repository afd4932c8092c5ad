"""Stirling number triangles and the multifactorial coefficient triangle.

Both Stirling kinds are filled row by row under a lock and never evicted.
The multifactorial coefficients come from their exponential generating
function (1-az)^(-1/a) * log(1/(1-az))^m / (m! a^m), expanded with exact
truncated series arithmetic; integrality of the results is checked by the
tests, never assumed here.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .core import DomainError, Scalar, alpha_factorial, pochhammer
from .polyseries import Series
from .report import CongruenceReport


class TriangleCache:
    """Lazily grown triangle indexed (n, k), safe for concurrent readers."""

    def __init__(self, name: str, first_row: list[int], step):
        self.name = name
        self._rows = [list(first_row)]
        self._step = step
        self._lock = threading.Lock()

    def value(self, n: int, k: int) -> int:
        if n < 0:
            raise DomainError(f"{self.name}: n must be >= 0, got {n}")
        if k < 0 or k > n:
            return 0
        self._grow(n)
        return self._rows[n][k]

    def row(self, n: int) -> list[int]:
        self._grow(n)
        return list(self._rows[n])

    def _grow(self, n: int) -> None:
        if n < len(self._rows):
            return
        with self._lock:
            while len(self._rows) <= n:
                self._rows.append(self._step(len(self._rows), self._rows[-1]))


def _stirling1_step(n: int, prev: list[int]) -> list[int]:
    # [n, k] = (n-1) [n-1, k] + [n-1, k-1]
    row = [0] * (n + 1)
    for k in range(n + 1):
        row[k] = (n - 1) * (prev[k] if k <= n - 1 else 0)
        if k >= 1:
            row[k] += prev[k - 1]
    return row


def _stirling2_step(n: int, prev: list[int]) -> list[int]:
    # {n, k} = k {n-1, k} + {n-1, k-1}
    row = [0] * (n + 1)
    for k in range(n + 1):
        row[k] = k * (prev[k] if k <= n - 1 else 0)
        if k >= 1:
            row[k] += prev[k - 1]
    return row


STIRLING1 = TriangleCache("stirling1", [1], _stirling1_step)
STIRLING2 = TriangleCache("stirling2", [1], _stirling2_step)


def stirling1(n: int, k: int) -> int:
    """Unsigned Stirling number of the first kind [n, k]."""
    return STIRLING1.value(n, k)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind {n, k}."""
    return STIRLING2.value(n, k)


def stirling1_row_mod(n: int, m: int) -> list[list[int]]:
    """All rows [0..n] of the first-kind triangle reduced mod m.

    Built locally (not cached): the big scans need single throwaway
    triangles mod a per-candidate modulus.
    """
    rows = [[1 % m]]
    for i in range(1, n + 1):
        prev = rows[-1]
        row = [0] * (i + 1)
        for k in range(i + 1):
            row[k] = (i - 1) * (prev[k] if k <= i - 1 else 0)
            if k >= 1:
                row[k] += prev[k - 1]
            row[k] %= m
        rows.append(row)
    return rows


_fcf_lock = threading.Lock()
_fcf_series: dict[tuple[int, int, int], Series] = {}


def _fcf_egf(alpha: int, m: int, order: int) -> Series:
    key = (alpha, m, order)
    with _fcf_lock:
        hit = _fcf_series.get(key)
    if hit is not None:
        return hit
    # (1 - az)^(-1/a) = sum_k (1/a)_k a^k z^k / k!
    binser = Series(
        [Fraction(pochhammer(Fraction(1, alpha), k) * alpha**k, _factorial(k))
         for k in range(order + 1)],
        order,
    )
    # log(1/(1 - az)) = sum_{k>=1} a^k z^k / k
    log = Series([Fraction(0)] + [Fraction(alpha**k, k) for k in range(1, order + 1)], order)
    acc = binser
    for _ in range(m):
        acc = acc * log
    result = acc * Fraction(1, _factorial(m) * alpha**m)
    with _fcf_lock:
        _fcf_series[key] = result
    return result


def _factorial(n: int) -> int:
    import math

    return math.factorial(n)


def alpha_factorial_coeff(alpha: int, n: int, m: int) -> Fraction:
    """n! [z^n] of the m-th coefficient EGF; equals FcfII(alpha, n+1, m+1)."""
    if alpha < 1:
        raise DomainError(f"alpha_factorial_coeff: alpha must be >= 1, got {alpha}")
    if n < 0 or m < 0:
        raise DomainError("alpha_factorial_coeff: n and m must be >= 0")
    if m > n:
        return Fraction(0)
    series = _fcf_egf(alpha, m, n)
    return series[n] * _factorial(n)


def fcf2(alpha: int, n: int, m: int) -> Fraction:
    """FcfII(alpha, n, m) in the triangle's own 1-based indexing."""
    if n < 1 or m < 1:
        return Fraction(0)
    return alpha_factorial_coeff(alpha, n - 1, m - 1)


def verify_alpha_expansion(alpha: int, d: int, n: int) -> CongruenceReport:
    """Check the four polynomial expansions of (a*n - d)!_(a).

    All four right-hand sides (first-kind Stirling form, the two
    coefficient-triangle forms indexed at n+1, and the (a-d)-prefixed form
    indexed at n) are evaluated exactly and compared with the
    multifactorial itself.
    """
    if alpha < 1 or not (0 <= d < alpha) or n < 1:
        raise DomainError("verify_alpha_expansion: need alpha >= 1, 0 <= d < alpha, n >= 1")
    target = alpha_factorial(alpha * n - d, alpha)
    big_n = alpha * n - d  # ceil(big_n / alpha) == n for 0 <= d < alpha

    e1: Scalar = sum(
        stirling1(n, m) * (-alpha) ** (n - m) * big_n**m for m in range(n + 1)
    )
    e2 = sum(
        fcf2(alpha, n + 1, m + 1) * (-1) ** (n - m) * (big_n + 1) ** m
        for m in range(n + 1)
    )
    e3 = (alpha - d) * sum(
        fcf2(alpha, n, m) * (-1) ** (n - m) * (big_n + 1) ** (m - 1)
        for m in range(1, n + 1)
    )
    e4 = sum(
        fcf2(alpha, n + 1, m + 1) * (-1) ** (n - m) * (big_n + 1) ** m
        for m in range(n + 1)
    )
    sides = [e1, e2, e3, e4]
    return CongruenceReport.check(
        "alpha_expansion",
        {"alpha": alpha, "d": d, "n": n},
        lhs=target,
        rhs=e1,
        modulus=0,
        details={"sides": sides},
        extra_pass=all(s == target for s in sides),
    )
