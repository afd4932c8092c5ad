"""Exact univariate polynomials, truncated power series, and the trivariate
congruence polynomials, all over rational coefficients.

Includes the "reduce as a polynomial, then substitute" procedure used by the
semi-polynomial central-binomial congruences: the expression is reduced mod
f(x) over the rationals, x is set to an integer, and leftover denominators
are cleared by modular inverses.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .core import DomainError, NonInvertibleError, Scalar
from .report import modinv


def _canonical(coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Poly1:
    """Dense univariate polynomial with Fraction coefficients.

    Canonical form: no trailing zero coefficient; the zero polynomial has an
    empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs = _canonical(coeffs)

    @classmethod
    def const(cls, c: Scalar) -> "Poly1":
        return cls([c])

    @classmethod
    def x_power(cls, k: int, c: Scalar = 1) -> "Poly1":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly1) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Poly1") -> "Poly1":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly1([self[k] + other[k] for k in range(n)])

    def __sub__(self, other: "Poly1") -> "Poly1":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly1([self[k] - other[k] for k in range(n)])

    def __neg__(self) -> "Poly1":
        return Poly1([-c for c in self.coeffs])

    def __mul__(self, other) -> "Poly1":
        if isinstance(other, (int, Fraction)):
            return Poly1([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly1()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly1(out)

    __rmul__ = __mul__

    def __call__(self, x: Scalar) -> Scalar:
        acc: Scalar = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "Poly1") -> tuple["Poly1", "Poly1"]:
        """Quotient and remainder over the rationals."""
        if other.is_zero():
            raise DomainError("Poly1.divmod: division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly1(), Poly1(rem)
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly1(quot), Poly1(rem[: other.degree])

    def __mod__(self, other: "Poly1") -> "Poly1":
        return self.divmod(other)[1]

    def __repr__(self) -> str:
        return f"Poly1({list(self.coeffs)!r})"


class Series:
    """Power series truncated at order N (coefficients of z^0..z^N)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Scalar], order: int):
        cs = [Fraction(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def from_poly(cls, p: Poly1, order: int) -> "Series":
        return cls(p.coeffs, order)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Series)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.coeffs, self.order))

    def __add__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series([self[k] + other[k] for k in range(n + 1)], n)

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            return Series([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a:
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return Series(out, n)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Series({list(self.coeffs)!r}, order={self.order})"


def series_of_rational(p: Poly1, q: Poly1, order: int) -> Series:
    """The unique S with q*S = p (mod z^(order+1)), by the division recurrence."""
    if order < 0:
        raise DomainError("series_of_rational: order must be >= 0")
    q0 = q[0]
    if q0 == 0:
        raise NonInvertibleError("series_of_rational: denominator has q(0) = 0")
    out: list[Fraction] = []
    for n in range(order + 1):
        acc = p[n]
        for k in range(1, min(n, q.degree) + 1):
            acc -= q[k] * out[n - k]
        out.append(acc / q0)
    return Series(out, order)


def poly_mod_reduce_substitute(expr: Poly1, modulus: Poly1, n: int, outer_mod: int) -> int:
    """Reduce expr mod the polynomial `modulus` over Q, set x := n, then
    return the least non-negative residue mod outer_mod.

    Denominators surviving the rational remainder are cleared through
    modular inverses; a non-invertible one raises NonInvertibleError.
    """
    if modulus.is_zero():
        raise DomainError("poly_mod_reduce_substitute: zero polynomial modulus")
    if outer_mod < 2:
        raise DomainError("poly_mod_reduce_substitute: outer_mod must be >= 2")
    rem = expr % modulus
    value = rem(Fraction(n))
    value = Fraction(value)
    den = value.denominator
    if den == 1:
        return value.numerator % outer_mod
    try:
        inv = modinv(den, outer_mod)
    except NonInvertibleError as exc:
        raise NonInvertibleError(
            f"denominator {den} not invertible modulo {outer_mod}") from exc
    return value.numerator * inv % outer_mod


class Poly3:
    """Trivariate polynomial in formal x_p, x_t, x_k with exact coefficients.

    Stored as a monomial map (i, j, k) -> coefficient with no zero entries.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int, int], Scalar] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly3) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def add_term(self, mono: tuple[int, int, int], c: Scalar) -> None:
        new = self.terms.get(mono, 0) + c
        if new:
            self.terms[mono] = new
        else:
            self.terms.pop(mono, None)

    def evaluate(self, xp: Scalar, xt: Scalar, xk: Scalar) -> Scalar:
        total: Scalar = 0
        for (i, j, k), c in self.terms.items():
            total += c * xp**i * xt**j * xk**k
        return total

    def marginal(self, axis: int) -> dict[int, Scalar]:
        """Collapse the other two variables to 1; axis 0 = x_p, 1 = x_t, 2 = x_k."""
        out: dict[int, Scalar] = {}
        for mono, c in self.terms.items():
            e = mono[axis]
            out[e] = out.get(e, 0) + c
        return {e: c for e, c in out.items() if c != 0}

    def __repr__(self) -> str:
        return f"Poly3({self.terms!r})"


def poly3_reduce(p: Poly3, m: int) -> Poly3:
    """Coefficient-wise least non-negative residues mod m; zeros dropped.

    Rational coefficients are cleared through modular inverses of their
    denominators.
    """
    if m < 2:
        raise DomainError("poly3_reduce: modulus must be >= 2")
    out = Poly3()
    for mono, c in p.terms.items():
        if isinstance(c, Fraction) and c.denominator != 1:
            r = c.numerator * modinv(c.denominator, m) % m
        else:
            r = int(c) % m
        if r:
            out.terms[mono] = r
    return out
