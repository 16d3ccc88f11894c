"""Base-N digit expansions of signed integers and prefix-filtered frequency sets.

Every integer k has a unique digit sequence d_0, d_1, ... in [0, N-1] given by
k_0 = k and k_n = d_n + N k_{n+1}.  The sequence is eventually all zeros
(k >= 0) or eventually all N-1 (k < 0).  We store the shortest prefix after
which the tail is constant.
"""
from __future__ import annotations

import dataclasses
import enum
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError


class Tail(enum.Enum):
    ALL_ZERO = "AllZero"
    ALL_N_MINUS_ONE = "AllNMinusOne"


def _tail_digit(tail: Tail, N: int) -> int:
    return 0 if tail is Tail.ALL_ZERO else N - 1


@dataclasses.dataclass(frozen=True)
class DigitExpansion:
    N: int
    prefix: tuple[int, ...]
    tail: Tail

    @property
    def tail_digit(self) -> int:
        return _tail_digit(self.tail, self.N)

    def is_canonical(self) -> bool:
        if self.N < 2 or any(not 0 <= d < self.N for d in self.prefix):
            return False
        return not self.prefix or self.prefix[-1] != self.tail_digit

    def digit(self, n: int) -> int:
        return self.prefix[n] if n < len(self.prefix) else self.tail_digit

    def __str__(self) -> str:
        return ".".join(map(str, self.prefix)) + f"|{self.tail_digit}"


def _check_base(N: int) -> None:
    if N < 2:
        raise DomainError(f"base must be >= 2, got {N}")


def expand(k: int, N: int) -> DigitExpansion:
    """
    Canonical expansion of ``k`` in base ``N``.

    >>> str(expand(405, 8))
    '5.2.6|0'
    >>> str(expand(-1, 8))
    '|7'
    """
    _check_base(N)
    digits = []
    # -1 is the fixed point of the recursion for negative k
    while k not in (0, -1):
        k, d = divmod(k, N)
        digits.append(d)
    return DigitExpansion(N, tuple(digits), Tail.ALL_ZERO if k == 0 else Tail.ALL_N_MINUS_ONE)


def collapse(e: DigitExpansion) -> int:
    """Inverse of :func:`expand`."""
    if not e.is_canonical():
        raise DomainError(f"expansion {e!r} is not canonical")
    value = 0
    for d in reversed(e.prefix):
        value = value * e.N + d
    if e.tail is Tail.ALL_N_MINUS_ONE:
        value -= e.N ** len(e.prefix)
    return value


@dataclasses.dataclass(frozen=True)
class ExpansionBatch:
    """Canonical expansions of many integers at once.

    Row i of ``digits`` holds the prefix of element i in its first
    ``lengths[i]`` columns (the rest is padding); ``negative[i]`` selects the
    all-(N-1) tail.
    """

    N: int
    digits: np.ndarray
    lengths: np.ndarray
    negative: np.ndarray

    def __len__(self) -> int:
        return len(self.lengths)

    def __getitem__(self, i: int) -> DigitExpansion:
        n = int(self.lengths[i])
        tail = Tail.ALL_N_MINUS_ONE if self.negative[i] else Tail.ALL_ZERO
        return DigitExpansion(self.N, tuple(int(d) for d in self.digits[i, :n]), tail)


_BATCH_LIMIT = 2**62


def expand_many(ks, N: int) -> ExpansionBatch:
    """Vectorized :func:`expand` for integers with |k| < 2^62."""
    _check_base(N)
    k = np.asarray(ks)
    if k.dtype.kind not in "iu":
        k = np.asarray(ks, dtype=object)
    if k.size and max(abs(int(k.max())), abs(int(k.min()))) >= _BATCH_LIMIT // N:
        raise DomainError("expand_many is limited to |k| < 2^62 / N; use expand")
    k = k.astype(np.int64).ravel()
    cols = []
    lengths = np.zeros(k.shape, dtype=np.int64)
    live = ~((k == 0) | (k == -1))
    while live.any():
        k, d = np.divmod(k, N)
        cols.append(np.where(live, d, 0))
        lengths += live
        live &= ~((k == 0) | (k == -1))
    digits = np.stack(cols, axis=1) if cols else np.zeros((k.size, 0), dtype=np.int64)
    return ExpansionBatch(N, digits, lengths, k == -1)


def collapse_many(batch: ExpansionBatch) -> np.ndarray:
    """Vectorized :func:`collapse`; returns an int64 array."""
    N = batch.N
    width = batch.digits.shape[1]
    powers = N ** np.arange(width, dtype=np.int64)
    mask = np.arange(width)[None, :] < batch.lengths[:, None]
    values = (batch.digits * powers[None, :] * mask).sum(axis=1)
    return values - np.where(batch.negative, N ** batch.lengths, 0)


def digit_at(k: int, N: int, n: int) -> int:
    """The n-th base-N digit of k (0-indexed, least significant first)."""
    _check_base(N)
    if n < 0:
        raise DomainError(f"digit index must be >= 0, got {n}")
    return (k // N**n) % N


def leading_digits(k: int, N: int, n: int) -> tuple[int, ...]:
    """(d_0(k), ..., d_{n-1}(k))."""
    out = []
    for _ in range(n):
        k, d = divmod(k, N)
        out.append(d)
    return tuple(out)


@dataclasses.dataclass(frozen=True)
class FrequencySet:
    """A finite set of integer frequencies, kept sorted, tied to a base N."""

    N: int
    elements: tuple[int, ...]

    def __post_init__(self):
        _check_base(self.N)
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    @classmethod
    def of(cls, N: int, elements: Iterable[int]) -> FrequencySet:
        return cls(N, tuple(elements))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, k) -> bool:
        return k in set(self.elements)

    def prefix(self, digits: Sequence[int]) -> FrequencySet:
        return prefix_subset(self, digits)


def prefix_subset(S: FrequencySet, digits: Sequence[int]) -> FrequencySet:
    """Elements of S whose first len(digits) base-N digits equal ``digits``."""
    for d in digits:
        if not 0 <= d < S.N:
            raise DomainError(f"digit {d} outside [0, {S.N - 1}]")
    n = len(digits)
    if n == 0:
        return S
    target = tuple(digits)
    return FrequencySet(S.N, tuple(k for k in S.elements if leading_digits(k, S.N, n) == target))
