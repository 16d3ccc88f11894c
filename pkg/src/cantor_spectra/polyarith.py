"""
Dense integer polynomials.

A polynomial is stored as a tuple of Python ints, constant term first, so
1 - 2x + x^3 is ``IntPolynomial((1, -2, 0, 1))``.  Trailing zeros are always
stripped; the zero polynomial has an empty coefficient tuple.
"""
from __future__ import annotations

import dataclasses
import functools
import itertools
import math
from typing import Iterable

from .errors import DomainError, InexactDivisionError, InvalidDigitSetError


@dataclasses.dataclass(frozen=True)
class IntPolynomial:
    """
    Polynomial with arbitrary-precision integer coefficients.

    >>> IntPolynomial((1, 0, 1))
    IntPolynomial('x^2 + 1')
    >>> IntPolynomial((0, 0, 0)).is_zero()
    True
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        end = len(cs)
        while end and cs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", cs[:end])

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        return cls((0,) * degree + (coeff,))

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __call__(self, x):
        # Horner
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> int:
        return functools.reduce(math.gcd, self.coeffs, 0)

    def primitive(self) -> IntPolynomial:
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def reverse(self) -> IntPolynomial:
        """x^deg * f(1/x)."""
        return IntPolynomial(self.coeffs[::-1])

    def strip_x_power(self) -> tuple[IntPolynomial, int]:
        """Split f = x^k * g with g(0) != 0; returns (g, k)."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return IntPolynomial(self.coeffs[k:]), k

    def __add__(self, other: int | IntPolynomial) -> IntPolynomial:
        other = _coerce(other)
        return IntPolynomial(tuple(a + b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __sub__(self, other: int | IntPolynomial) -> IntPolynomial:
        other = _coerce(other)
        return IntPolynomial(tuple(a - b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other: int | IntPolynomial) -> IntPolynomial:
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other: int) -> IntPolynomial:
        return _coerce(other) - self

    def __pow__(self, n: int) -> IntPolynomial:
        if n < 0:
            raise DomainError("negative power of a polynomial")
        result = IntPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def compose_power(self, k: int) -> IntPolynomial:
        """f(x^k)."""
        if k < 1:
            raise DomainError("compose_power needs k >= 1")
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPolynomial(tuple(out))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            var = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            body = str(mag) if (mag != 1 or not var) else ""
            term = body + var
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(f" {sign} {term}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"IntPolynomial('{self}')"


def _coerce(value: int | IntPolynomial) -> IntPolynomial:
    if isinstance(value, IntPolynomial):
        return value
    return IntPolynomial((value,))


X = IntPolynomial((0, 1))
ONE = IntPolynomial((1,))


def poly_from_digit_set(digits: Iterable[int]) -> IntPolynomial:
    """
    The digit polynomial: sum of x^d over the digits.

    >>> poly_from_digit_set({0, 2})
    IntPolynomial('x^2 + 1')
    """
    ds = list(digits)
    if not ds:
        raise InvalidDigitSetError("digit set is empty")
    if len(set(ds)) != len(ds):
        dup = next(d for d in ds if ds.count(d) > 1)
        raise InvalidDigitSetError(f"digit {dup} is repeated")
    for d in ds:
        if d < 0:
            raise InvalidDigitSetError(f"digit {d} is negative")
    coeffs = [0] * (max(ds) + 1)
    for d in ds:
        coeffs[d] = 1
    return IntPolynomial(tuple(coeffs))


def _divmod_int(f: IntPolynomial, q: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial, bool]:
    """Long division over Z.

    Returns (quotient, remainder, exact).  If a step needs a non-integral
    quotient coefficient the division stops there; ``exact`` is False and the
    remainder is the partial one reached so far.
    """
    if q.is_zero():
        raise DomainError("division by the zero polynomial")
    rem = list(f.coeffs)
    dq = q.degree
    lq = q.leading
    quot = [0] * max(len(rem) - dq, 0)
    for shift in range(len(rem) - 1 - dq, -1, -1):
        top = rem[shift + dq]
        if top == 0:
            continue
        c, r = divmod(top, lq)
        if r:
            return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem)), False
        quot[shift] = c
        for i, b in enumerate(q.coeffs):
            rem[shift + i] -= c * b
    remainder = IntPolynomial(tuple(rem))
    return IntPolynomial(tuple(quot)), remainder, remainder.is_zero()


def exact_div(f: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """f / q, raising InexactDivisionError (with the remainder) unless q | f over Z."""
    quot, rem, exact = _divmod_int(f, q)
    if not exact:
        raise InexactDivisionError(f, q, rem)
    return quot


def divides(q: IntPolynomial, f: IntPolynomial) -> bool:
    """True iff q divides f exactly over the integers."""
    return _divmod_int(f, q)[2]


@functools.lru_cache(maxsize=None)
def _cyclotomic(n: int) -> IntPolynomial:
    acc = IntPolynomial.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            acc = exact_div(acc, _cyclotomic(d))
    return acc


def cyclotomic(n: int) -> IntPolynomial:
    """
    The n-th cyclotomic polynomial, via (x^n - 1) / prod_{d | n, d < n} Phi_d.

    >>> cyclotomic(8)
    IntPolynomial('x^4 + 1')
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"cyclotomic order must be a positive integer, got {n!r}")
    return _cyclotomic(n)


def pseudo_remainder(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """prem(f, g) = lc(g)^(deg f - deg g + 1) * f mod g, computed in Z[x]."""
    if g.is_zero():
        raise DomainError("pseudo-remainder by zero polynomial")
    if f.degree < g.degree:
        return f
    rem = list(f.coeffs)
    dg, lg = g.degree, g.leading
    for shift in range(len(rem) - 1 - dg, -1, -1):
        top = rem[shift + dg]
        rem = [c * lg for c in rem]
        for i, b in enumerate(g.coeffs):
            rem[shift + i] -= top * b
    return IntPolynomial(tuple(rem))


def poly_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """
    gcd over Q, returned primitive with positive leading coefficient.

    Uses the subresultant polynomial remainder sequence so every intermediate
    stays in Z[x] with controlled coefficient growth.

    >>> poly_gcd(IntPolynomial((-1, 0, 1)), IntPolynomial((1, 2, 1)))
    IntPolynomial('x + 1')
    """
    if f.is_zero() and g.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    if g.is_zero():
        return f.primitive()
    if f.is_zero():
        return g.primitive()
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    gs, h = 1, 1
    while True:
        delta = a.degree - b.degree
        r = pseudo_remainder(a, b)
        if r.is_zero():
            return b.primitive()
        if r.degree == 0:
            return ONE
        a = b
        div = gs * h**delta
        b = IntPolynomial(tuple(c // div for c in r.coeffs))
        gs = a.leading
        if delta >= 1:
            h = gs**delta // h ** (delta - 1)


def self_reciprocal_part(f: IntPolynomial) -> IntPolynomial:
    """
    gcd(f, reverse f) after removing any x^k factor.

    Every root of f on the unit circle satisfies z = 1/conj(z), so it is a
    root of both f and its reverse and survives in the result.

    >>> self_reciprocal_part(IntPolynomial((-2, 1)))
    IntPolynomial('1')
    """
    if f.is_zero():
        raise DomainError("self-reciprocal part of the zero polynomial")
    g, _ = f.strip_x_power()
    return poly_gcd(g, g.reverse())
