"""Validated Cantor system parameters and the cyclotomic data derived from them."""
from __future__ import annotations

import dataclasses
import json
from typing import Iterable

from .errors import (
    CapExceededError,
    DomainError,
    EmptyDigitSetError,
    ExponentError,
    NegativeDigitError,
    NotPrimeError,
    ResidueCollisionError,
)
from .polyarith import (
    IntPolynomial,
    cyclotomic,
    divides,
    exact_div,
    poly_from_digit_set,
    self_reciprocal_part,
)

MAX_DIGIT = 10**4
MAX_N = 10**6


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def p_adic_valuation(k: int, p: int) -> int:
    """Largest v with p^v | k.  Undefined (DomainError) for k == 0."""
    if k == 0:
        raise DomainError("valuation of 0 is infinite")
    k = abs(k)
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


@dataclasses.dataclass(frozen=True)
class CantorSystem:
    """Contraction N = p^alpha with digit set D, plus the derived set T.

    ``T`` holds the t in [1, alpha] for which Phi_{p^t} divides the digit
    polynomial.  The two flags gate the structural theorems:

    * ``is_cyclotomic_product``: P_D is exactly the product of those Phi_{p^t};
    * ``circle_hypothesis``: every unit-circle root of P_D is a root of some
      Phi_{p^t} with t in T.

    Build instances with :func:`build_system`.
    """

    p: int
    alpha: int
    N: int
    D: tuple[int, ...]
    T: tuple[int, ...]
    is_cyclotomic_product: bool
    circle_hypothesis: bool

    @property
    def m(self) -> int:
        return len(self.D)

    @property
    def branching_bound(self) -> int:
        """p^|T|, the maximal number of next digits under a fixed prefix."""
        return self.p ** len(self.T)

    @property
    def digit_polynomial(self) -> IntPolynomial:
        return poly_from_digit_set(self.D)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "alpha": self.alpha,
            "N": self.N,
            "D": list(self.D),
            "T": list(self.T),
            "is_cyclotomic_product": self.is_cyclotomic_product,
            "circle_hypothesis": self.circle_hypothesis,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> CantorSystem:
        """Rebuild from serialized form; derived fields are recomputed and checked."""
        system = build_system(data["p"], data["alpha"], data["D"])
        for key in ("N", "T", "is_cyclotomic_product", "circle_hypothesis"):
            if key in data:
                got = list(data[key]) if key == "T" else data[key]
                want = list(system.T) if key == "T" else getattr(system, key)
                if got != want:
                    raise DomainError(f"serialized {key}={got!r} disagrees with recomputed {want!r}")
        return system

    @classmethod
    def from_json(cls, text: str) -> CantorSystem:
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        return f"CantorSystem(N={self.p}^{self.alpha}={self.N}, D={list(self.D)}, T={list(self.T)})"


def _divide_out(f: IntPolynomial, factors: Iterable[IntPolynomial]) -> IntPolynomial:
    """Remove every occurrence (any multiplicity) of each factor."""
    for q in factors:
        while f.degree >= q.degree and divides(q, f):
            f = exact_div(f, q)
    return f


def build_system(p: int, alpha: int, digits: Iterable[int]) -> CantorSystem:
    """Validate (p, alpha, D) and compute T and the hypothesis flags."""
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrimeError(f"p={p!r} is not prime", p)
    if not isinstance(alpha, int) or alpha < 1:
        raise ExponentError(f"alpha={alpha!r} must be an integer >= 1", alpha)
    N = p**alpha
    if N > MAX_N:
        raise CapExceededError(f"N={N} exceeds the cap {MAX_N}", N)
    D = list(digits)
    if not D:
        raise EmptyDigitSetError("digit set is empty", D)
    seen: dict[int, int] = {}
    for d in D:
        if not isinstance(d, int):
            raise DomainError(f"digit {d!r} is not an integer")
        if d < 0:
            raise NegativeDigitError(f"digit {d} is negative", d)
        if d > MAX_DIGIT:
            raise CapExceededError(f"digit {d} exceeds the cap {MAX_DIGIT}", d)
        r = d % N
        if r in seen:
            raise ResidueCollisionError(
                f"digits {seen[r]} and {d} are congruent modulo N={N}", (seen[r], d)
            )
        seen[r] = d
    D_sorted = tuple(sorted(D))
    P = poly_from_digit_set(D_sorted)

    T = tuple(t for t in range(1, alpha + 1) if divides(cyclotomic(p**t), P))
    factors = [cyclotomic(p**t) for t in T]
    prod = IntPolynomial((1,))
    for q in factors:
        prod = prod * q
    quotient = exact_div(P, prod)
    is_product = quotient.coeffs == (1,)

    core, _ = quotient.strip_x_power()
    residual = _divide_out(self_reciprocal_part(core), factors)
    circle = residual.is_constant()

    return CantorSystem(
        p=p,
        alpha=alpha,
        N=N,
        D=D_sorted,
        T=T,
        is_cyclotomic_product=is_product,
        circle_hypothesis=circle,
    )


def admissible_label_difference(system: CantorSystem, delta: int) -> bool:
    """
    Whether two labels differing by ``delta`` can be siblings.

    The mask vanishes at delta/N exactly when e(delta/N), a primitive
    p^(alpha - v)-th root of unity with v = v_p(delta), is a root of P_D,
    i.e. when alpha - v is in T.
    """
    if delta == 0 or abs(delta) >= system.N:
        raise DomainError(f"label difference must satisfy 0 < |delta| < N={system.N}, got {delta}")
    return system.alpha - p_adic_valuation(delta, system.p) in system.T
