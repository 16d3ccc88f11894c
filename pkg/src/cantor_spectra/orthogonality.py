"""
Orthogonality of integer exponentials in L^2(mu).

For integers, e_a and e_b are orthogonal iff the transform vanishes at a - b.
Along the product formula the factors tend to 1, so the transform vanishes iff
one factor m_D(k / N^j) does.  With v = v_p(k), k / N^j is (mod 1) a primitive
p^(alpha j - v)-th root of unity whenever alpha j > v, and the factor vanishes
iff alpha j - v lies in T.  Everything here is therefore exact integer work.
"""
from __future__ import annotations

import dataclasses
import functools
import itertools
import logging
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Sequence

import numpy as np

from .errors import DomainError, InstanceTooLargeError, PreconditionError
from .expansion import FrequencySet, leading_digits
from .system import CantorSystem, admissible_label_difference, build_system, is_prime, p_adic_valuation

log = logging.getLogger(__name__)

UNITARITY_TOL = 1e-10


@functools.lru_cache(maxsize=256)
def _zero_valuations(alpha: int, T: tuple[int, ...], v: int) -> bool:
    # exists j >= 1 with alpha*j - v in T
    return any((v + t) % alpha == 0 and v + t >= alpha for t in T)


def mu_hat_is_zero(system: CantorSystem, k: int) -> bool:
    """Exact test for mu_hat(k) == 0 at an integer k."""
    if k == 0:
        return False
    return _zero_valuations(system.alpha, system.T, p_adic_valuation(k, system.p))


def are_orthogonal(system: CantorSystem, lambda1: int, lambda2: int) -> bool:
    return lambda1 != lambda2 and mu_hat_is_zero(system, lambda1 - lambda2)


def is_orthogonal_family(system: CantorSystem, S: Iterable[int]) -> tuple[bool, tuple[int, int] | None]:
    """(True, None) if all distinct pairs are orthogonal, else (False, first bad pair)."""
    elems = sorted(set(S))
    for i, a in enumerate(elems):
        for b in elems[i + 1:]:
            if not mu_hat_is_zero(system, b - a):
                return False, (a, b)
    return True, None


# --- branching -------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class BranchingRecord:
    prefix: tuple[int, ...]
    digits: frozenset[int]
    within_bound: bool

    @property
    def count(self) -> int:
        return len(self.digits)


@dataclasses.dataclass(frozen=True)
class BranchingProfile:
    """Observed next digits under every nonempty prefix of length < depth."""

    bound: int
    depth: int
    records: tuple[BranchingRecord, ...]

    def __iter__(self) -> Iterator[BranchingRecord]:
        return iter(self.records)

    def __getitem__(self, prefix: Sequence[int]) -> BranchingRecord:
        return self._index[tuple(prefix)]

    @functools.cached_property
    def _index(self) -> dict[tuple[int, ...], BranchingRecord]:
        return {r.prefix: r for r in self.records}

    def get(self, prefix: Sequence[int]) -> BranchingRecord | None:
        return self._index.get(tuple(prefix))

    @property
    def max_count(self) -> int:
        return max((r.count for r in self.records), default=0)

    def violations(self) -> list[BranchingRecord]:
        return [r for r in self.records if not r.within_bound]

    @property
    def within_bound(self) -> bool:
        return all(r.within_bound for r in self.records)


def branching_profile(system: CantorSystem, S: Iterable[int], depth: int) -> BranchingProfile:
    """Collect the digit sets {d_n(l) : l in S_n(prefix)} for all prefixes with n < depth."""
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    N = system.N
    seen: dict[tuple[int, ...], set[int]] = {}
    for k in set(S):
        ds = leading_digits(k, N, depth)
        for n in range(depth):
            seen.setdefault(ds[:n], set()).add(ds[n])
    bound = system.branching_bound
    records = tuple(
        BranchingRecord(prefix, frozenset(digs), len(digs) <= bound)
        for prefix, digs in sorted(seen.items(), key=lambda item: (len(item[0]), item[0]))
    )
    return BranchingProfile(bound, depth, records)


# --- Hadamard triples ------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class HadamardCandidate:
    N: int
    D: tuple[int, ...]
    L: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "D", tuple(self.D))
        object.__setattr__(self, "L", tuple(self.L))
        if len(set(self.L)) != len(self.L):
            raise DomainError(f"labels {self.L} are not distinct")
        if any(not 0 <= l < self.N for l in self.L):
            raise DomainError(f"labels {self.L} not all in [0, {self.N - 1}]")


def _prime_power(N: int) -> tuple[int, int]:
    for p in range(2, N + 1):
        if N % p == 0:
            alpha, rest = 0, N
            while rest % p == 0:
                rest //= p
                alpha += 1
            if rest != 1 or not is_prime(p):
                raise DomainError(f"N={N} is not a prime power")
            return p, alpha
    raise DomainError(f"N={N} is not a prime power")


@functools.lru_cache(maxsize=128)
def _system_for(N: int, D: tuple[int, ...]) -> CantorSystem:
    p, alpha = _prime_power(N)
    return build_system(p, alpha, D)


def hadamard_matrix(N: int, D: Sequence[int], L: Sequence[int]) -> np.ndarray:
    """(1/sqrt|D|) * e(d l / N) with rows indexed by D and columns by L."""
    phases = np.array([[(d * l) % N for l in L] for d in D], dtype=float) / N
    return np.exp(2j * np.pi * phases) / np.sqrt(len(D))


def unitarity_deviation(M: np.ndarray) -> float:
    """max |M^* M - I|."""
    G = M.conj().T @ M
    return float(np.max(np.abs(G - np.eye(G.shape[0]))))


def hadamard_triple_check(cand: HadamardCandidate, mode: Literal["exact", "numeric"] = "exact") -> bool:
    """Is (N, D, L) a Hadamard triple?"""
    if len(cand.L) != len(cand.D):
        raise DomainError(f"|L|={len(cand.L)} differs from |D|={len(cand.D)}")
    if mode == "exact":
        system = _system_for(cand.N, cand.D)
        return all(
            admissible_label_difference(system, b - a)
            for a, b in itertools.combinations(cand.L, 2)
        )
    if mode == "numeric":
        return unitarity_deviation(hadamard_matrix(cand.N, cand.D, cand.L)) < UNITARITY_TOL
    raise DomainError(f"unknown mode {mode!r}")


def _admissible_table(system: CantorSystem) -> list[bool]:
    # index by |delta| in [1, N-1]
    return [False] + [admissible_label_difference(system, d) for d in range(1, system.N)]


def _cliques_in_order(N: int, size: int, ok: list[bool], first: Iterable[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Lexicographic increasing tuples in [0, N) of given size, pairwise ok."""
    def extend(chosen: list[int], candidates: list[int]):
        if len(chosen) == size:
            yield tuple(chosen)
            return
        need = size - len(chosen)
        for i, c in enumerate(candidates):
            if len(candidates) - i < need:
                return
            rest = [x for x in candidates[i + 1:] if ok[x - c]]
            chosen.append(c)
            yield from extend(chosen, rest)
            chosen.pop()

    starts = range(N) if first is None else sorted(first)
    for s in starts:
        yield from extend([s], [x for x in range(s + 1, N) if ok[x - s]])


def enumerate_hadamard_L(system: CantorSystem, containing_zero: bool = False) -> list[tuple[int, ...]]:
    """All L in [0, N-1] with |L| = |D| forming a Hadamard triple, in lexicographic order."""
    if not system.is_cyclotomic_product:
        log.warning(
            "%s: P_D is not a product of Phi_{p^t}; |D|=%d but at most %d labels can be siblings",
            system, system.m, system.branching_bound,
        )
        return []
    ok = _admissible_table(system)
    first = [0] if containing_zero else None
    if system.m == 1:
        return [(0,)] if containing_zero else [(l,) for l in range(system.N)]
    return list(_cliques_in_order(system.N, system.m, ok, first))


# --- ratio-closed roots ----------------------------------------------------

def _root_orders_ok(p: int, betas: frozenset[int], x: Fraction) -> bool:
    if x == 0:
        return True
    den = x.denominator
    beta = 0
    while den % p == 0:
        den //= p
        beta += 1
    return den == 1 and beta in betas


def max_ratio_closed_subset(p: int, betas: Iterable[int]) -> tuple[Fraction, ...]:
    """
    A largest set of roots of (x - 1) * prod_j Phi_{p^beta_j} whose pairwise
    ratios are again roots.  Roots e(a) are stored as a in [0, 1) exactly.
    """
    bs = frozenset(betas)
    if not is_prime(p):
        raise DomainError(f"p={p} is not prime")
    if any(b < 1 for b in bs):
        raise DomainError(f"betas must be positive, got {sorted(bs)}")
    if len(bs) > 3 or (bs and p ** max(bs) > 64):
        raise InstanceTooLargeError(f"instance p={p}, betas={sorted(bs)} exceeds the brute-force guard")
    if not bs:
        return (Fraction(0),)
    roots = [Fraction(0)] + [
        Fraction(s, p**b) for b in sorted(bs) for s in range(1, p**b) if s % p
    ]

    def good(a: Fraction, b: Fraction) -> bool:
        return _root_orders_ok(p, bs, (a - b) % 1)

    # translating a valid set by one of its members keeps it valid, so 0 may be fixed
    best: list[Fraction] = [Fraction(0)]

    def search(chosen: list[Fraction], candidates: list[Fraction]):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) + len(candidates) <= len(best):
            return
        for i, c in enumerate(candidates):
            if len(chosen) + len(candidates) - i <= len(best):
                return
            chosen.append(c)
            search(chosen, [x for x in candidates[i + 1:] if good(x, c)])
            chosen.pop()

    search([Fraction(0)], [r for r in roots[1:]])
    return tuple(sorted(best))


def max_ratio_closed_subset_size(p: int, betas: Iterable[int]) -> int:
    return len(max_ratio_closed_subset(p, betas))


# --- greedy completion -----------------------------------------------------

def scan_order(bound: int) -> Iterator[int]:
    """0, 1, -1, 2, -2, ..., bound, -bound."""
    yield 0
    for k in range(1, bound + 1):
        yield k
        yield -k


def greedy_maximal_completion(system: CantorSystem, seed: Iterable[int], bound: int) -> FrequencySet:
    """
    Extend an orthogonal seed greedily inside the window [-bound, bound].

    Integers are scanned by increasing absolute value, positive first, and kept
    when orthogonal to everything kept so far.  The result is maximal within
    the window: every other window integer clashes with some member.
    """
    seed_set = set(seed)
    ok, pair = is_orthogonal_family(system, seed_set)
    if not ok:
        raise PreconditionError(f"seed is not orthogonal: mu_hat({pair[1]} - {pair[0]}) != 0")
    if seed_set and bound < max(abs(s) for s in seed_set):
        raise PreconditionError(f"bound {bound} smaller than max |seed| = {max(abs(s) for s in seed_set)}")
    members = sorted(seed_set)
    alpha, T, p = system.alpha, system.T, system.p
    for k in scan_order(bound):
        if k in seed_set:
            continue
        if all(_zero_valuations(alpha, T, p_adic_valuation(k - m, p)) for m in members):
            members.append(k)
            seed_set.add(k)
    return FrequencySet(system.N, tuple(members))
