"""Exact scalar arithmetic and the primitive factorial-product functions.

Everything here is exact: integers are Python ints, rationals are
``fractions.Fraction``, and no operation ever touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Scalar = int | Fraction


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NonInvertibleError(ArithmeticError):
    """A denominator has no inverse modulo the requested modulus."""


class ResourceGuardError(RuntimeError):
    """A computation would exceed its configured cost ceiling."""


def pochhammer(x: Scalar, n: int) -> Scalar:
    """Rising factorial x(x+1)...(x+n-1); the empty product (n=0) is 1.

    Negative n uses the reciprocal extension
    (x)_{-m} = 1 / ((x-m)(x-m+1)...(x-1)); a vanishing factor in the
    denominator raises DomainError.
    """
    if n >= 0:
        acc: Scalar = 1
        for j in range(n):
            acc *= x + j
        return acc
    den: Scalar = 1
    for j in range(1, -n + 1):
        factor = x - j
        if factor == 0:
            raise DomainError(f"pochhammer({x}, {n}): factor x - {j} vanishes")
        den *= factor
    return Fraction(1) / den


def falling_factorial(x: Scalar, n: int) -> Scalar:
    """Falling factorial x(x-1)...(x-n+1); 1 when n = 0."""
    if n < 0:
        raise DomainError(f"falling_factorial: n must be >= 0, got {n}")
    acc: Scalar = 1
    for j in range(n):
        acc *= x - j
    return acc


def binomial(x: Scalar, k: int) -> Scalar:
    """Binomial coefficient C(x, k) for integer or rational upper index.

    Negative or rational x is handled through the falling factorial; the
    result is an exact int whenever x is an int.
    """
    if k < 0:
        return 0
    if isinstance(x, int):
        if x >= 0:
            return math.comb(x, k) if k <= x else 0
        # C(-m, k) = (-1)^k C(m+k-1, k)
        return (-1) ** k * math.comb(-x + k - 1, k)
    return Fraction(falling_factorial(x, k), math.factorial(k))


def generalized_product(alpha: Scalar, r: Scalar, n: int) -> Scalar:
    """Product R(R+a)(R+2a)...(R+(n-1)a); 1 when n = 0."""
    if n < 0:
        raise DomainError(f"generalized_product: n must be >= 0, got {n}")
    acc: Scalar = 1
    for j in range(n):
        acc *= r + j * alpha
    return acc


def alpha_factorial(n: int, alpha: int) -> int:
    """Multifactorial n!_(a): n*(n-a)!_(a) for n > 0, 1 for -a < n <= 0, else 0."""
    if alpha < 1:
        raise DomainError(f"alpha_factorial: alpha must be >= 1, got {alpha}")
    if n <= -alpha:
        return 0
    acc = 1
    m = n
    while m > 0:
        acc *= m
        m -= alpha
    return acc


def factorial(n: int) -> int:
    return math.factorial(n)


def double_factorial(n: int) -> int:
    return alpha_factorial(n, 2) if n > -2 else 0


def gould_polynomial(n: int, x: Scalar, a: Scalar, b: Scalar) -> Fraction:
    """G_n(x; a, b) = x/(x - a*n) * falling_factorial((x - a*n)/b, n)."""
    if n < 0:
        raise DomainError(f"gould_polynomial: n must be >= 0, got {n}")
    if b == 0:
        raise DomainError("gould_polynomial: b must be nonzero")
    shift = x - a * n
    if shift == 0:
        raise DomainError(f"gould_polynomial: pole at x = a*n = {x}")
    return Fraction(x, 1) / shift * falling_factorial(Fraction(shift, 1) / b, n)


@dataclass(frozen=True)
class FactorialParams:
    """Parameter bundle for p_n(alpha, R), with R fixed or linear in n.

    Exactly one of the two shapes is populated: ``r_offset`` for a fixed
    offset R, or ``(beta, gamma)`` for R = beta*n + gamma.
    """

    alpha: int
    r_offset: Scalar | None = None
    beta: int | None = None
    gamma: int | None = None

    def __post_init__(self) -> None:
        if self.alpha == 0:
            raise DomainError("FactorialParams: alpha must be nonzero")
        fixed = self.r_offset is not None
        linear = self.beta is not None or self.gamma is not None
        if fixed == linear:
            raise DomainError("FactorialParams: exactly one of r_offset or (beta, gamma)")
        if linear:
            if self.beta is None or self.gamma is None:
                raise DomainError("FactorialParams: beta and gamma must both be given")
            if self.beta == 0 and self.gamma == 0:
                raise DomainError("FactorialParams: (beta, gamma) must not both be zero")

    @classmethod
    def fixed(cls, alpha: int, r: Scalar) -> "FactorialParams":
        return cls(alpha=alpha, r_offset=r)

    @classmethod
    def linear(cls, alpha: int, beta: int, gamma: int) -> "FactorialParams":
        return cls(alpha=alpha, beta=beta, gamma=gamma)

    @property
    def is_linear(self) -> bool:
        return self.r_offset is None

    def r_at(self, n: int) -> Scalar:
        if self.r_offset is not None:
            return self.r_offset
        return self.beta * n + self.gamma

    def product(self, n: int) -> Scalar:
        """p_n(alpha, R) with R evaluated at index n."""
        return generalized_product(self.alpha, self.r_at(n), n)
