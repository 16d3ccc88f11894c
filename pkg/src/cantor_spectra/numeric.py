"""
Floating-point evaluation of the mask and of the Fourier transform of the
Cantor measure as a truncated infinite product.

Two masks are available.  ``mask_eval`` is N^{-1} sum_d e(d t), the literal
filter; it equals |D|/N at t = 0.  ``mask_eval_normalized`` divides by |D|
instead, which is the factor appearing in the product formula for the
probability measure (weights 1/|D|).  Both vanish at exactly the same t.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import math
import sys
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .system import CantorSystem

CSV_COLUMNS = ("xi", "re", "im", "abs", "tail_bound")


def _mask_sum(digits: Sequence[int], t) -> np.ndarray | complex:
    t_arr = np.asarray(t, dtype=float)
    d = np.asarray(digits, dtype=float).reshape((-1,) + (1,) * t_arr.ndim)
    # reduce the phase mod 1 before exponentiating to keep large arguments exact-ish
    phase = np.mod(d * t_arr, 1.0)
    total = np.exp(2j * np.pi * phase).sum(axis=0)
    return complex(total) if t_arr.ndim == 0 else total


def mask_eval(system: CantorSystem, t):
    """N^{-1} * sum_{d in D} e^{2 pi i d t}."""
    return _mask_sum(system.D, t) / system.N


def mask_eval_normalized(system: CantorSystem, t):
    """|D|^{-1} * sum_{d in D} e^{2 pi i d t}; modulus at most 1."""
    return _mask_sum(system.D, t) / len(system.D)


@dataclasses.dataclass(frozen=True)
class TruncatedTransformValue:
    xi: float
    J: int
    value: complex
    tail_bound: float

    @property
    def abs(self) -> float:
        return abs(self.value)


def tail_bound(system: CantorSystem, xi: float, J: int) -> float:
    """Bound on |prod_{j>J} m(N^-j xi) - 1| from |m(t) - 1| <= 2 pi d_max |t|."""
    d_max = max(system.D)
    s = 2 * math.pi * d_max * abs(xi) * system.N ** (-J) / (system.N - 1)
    if s > 700:
        return sys.float_info.max
    return math.expm1(s)


def truncation_level(system: CantorSystem, xi_max: float, tol: float = 1e-10) -> int:
    """Smallest J >= 1 with tail_bound(xi_max, J) < tol."""
    J = 1
    while tail_bound(system, xi_max, J) >= tol:
        J += 1
    return J


def mu_hat_truncated(system: CantorSystem, xi: float, J: int) -> TruncatedTransformValue:
    """prod_{j=1}^J m(N^-j xi) with the normalized mask, plus its tail bound.

    The true transform satisfies |mu_hat(xi) - value| <= |value| * tail_bound.
    """
    if J < 1:
        raise DomainError(f"truncation level J must be >= 1, got {J}")
    value = complex(mu_hat_values(system, [xi], J)[0])
    return TruncatedTransformValue(float(xi), J, value, tail_bound(system, xi, J))


def mu_hat_values(system: CantorSystem, xis: Iterable[float], J: int) -> np.ndarray:
    """Vectorized truncated product over many frequencies; returns complex array."""
    if J < 1:
        raise DomainError(f"truncation level J must be >= 1, got {J}")
    xi = np.asarray(list(xis), dtype=float)
    scales = float(system.N) ** -np.arange(1, J + 1, dtype=float)
    factors = mask_eval_normalized(system, np.outer(scales, xi))
    return np.prod(factors, axis=0)


def mu_hat_grid(system: CantorSystem, lo: float, hi: float, step: float, J: int) -> list[tuple[float, float, float, float, float]]:
    """Rows (xi, re, im, abs, tail_bound) for xi = lo, lo + step, ..., <= hi."""
    if step <= 0 or not math.isfinite(step):
        raise DomainError(f"grid step must be positive, got {step}")
    if lo > hi or not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError(f"grid range must satisfy lo <= hi, got {lo}:{hi}")
    # tolerate float rounding when hi - lo is an exact multiple of step
    count = math.floor((hi - lo) / step + 1e-9) + 1
    xis = [lo + i * step for i in range(count)]
    values = mu_hat_values(system, xis, J)
    return [
        (xi, v.real, v.imag, abs(v), tail_bound(system, xi, J))
        for xi, v in zip(xis, values)
    ]


def grid_to_csv(rows: Iterable[Sequence[float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([f"{float(x):.17g}" for x in row])
    return buf.getvalue()
