"""Direct O(k) summation of the cotangent sums, used as ground truth."""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from itertools import chain
from typing import Iterator, Optional

import numpy as np

from .core_functions import g

__all__ = ["EvalReport", "SumIndex", "c0_exact", "c0_exact_error_bound", "c_exact", "harmonic"]

_CHUNK = 1 << 20
_EPS = sys.float_info.epsilon


def SumIndex(k) -> int:
    """Validate a cotangent-sum modulus and return it as ``int``."""
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise TypeError(f"k must be an integer, got {k!r}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return int(k)


def _c0_terms(k: int, descending: bool = False) -> Iterator[np.ndarray]:
    # -(m/k) cot(m pi/k), with cot reduced through m <-> k - m so the angle
    # fed to tan never exceeds pi/2
    starts = range(1, k, _CHUNK)
    if descending:
        starts = reversed(starts)
    for start in starts:
        m = np.arange(start, min(start + _CHUNK, k), dtype=np.int64)
        if descending:
            m = m[::-1]
        mirrored = 2 * m > k
        r = np.where(mirrored, k - m, m).astype(float)
        cot = 1.0 / np.tan(np.pi * r / k)
        cot = np.where(2 * m == k, 0.0, np.where(mirrored, -cot, cot))
        yield -(m * cot) / k


def c0_exact(k, descending: bool = False) -> float:
    """c0(1/k) = -sum_{m=1}^{k-1} (m/k) cot(m pi / k), correctly rounded sum.

    The terms are accumulated with :func:`math.fsum`, so the result does not
    depend on summation order; ``descending`` exists to check exactly that.
    """
    k = SumIndex(k)
    if k <= 2:
        return 0.0
    return math.fsum(chain.from_iterable(t.tolist() for t in _c0_terms(k, descending)))


def c0_exact_error_bound(k) -> float:
    """Rounding-error bound for :func:`c0_exact`.

    Each term carries a few roundings (tan, reciprocal, product, quotient),
    and fsum adds half an ulp of the result.
    """
    k = SumIndex(k)
    if k <= 2:
        return 0.0
    total = math.fsum(chain.from_iterable(np.abs(t).tolist() for t in _c0_terms(k)))
    return 8.0 * _EPS * total + _EPS * abs(c0_exact(k))


def c_exact(k) -> float:
    """c(1/k) = sum_{m=1}^{k-1} g(m/k), summed directly."""
    k = SumIndex(k)
    if k == 1:
        return 0.0
    parts = []
    for start in range(1, k, _CHUNK):
        m = np.arange(start, min(start + _CHUNK, k), dtype=float)
        parts.append(g(m / k).tolist())
    return math.fsum(chain.from_iterable(parts))


def harmonic(n: int) -> float:
    """H_n = 1 + 1/2 + ... + 1/n (H_0 = 0)."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"n must be an integer, got {n!r}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return math.fsum((1.0 / np.arange(1, int(n) + 1, dtype=float)).tolist())


@dataclass(frozen=True)
class EvalReport:
    """Exact value of c0(1/k) against one approximation of it."""

    k: int
    exact: float
    approx: float
    abs_err: float
    rel_err: Optional[float]
    sig_digits: Optional[float]

    @classmethod
    def from_values(cls, k: int, exact: float, approx: float) -> "EvalReport":
        abs_err = abs(exact - approx)
        if exact == 0.0:
            return cls(k, exact, approx, abs_err, None, None)
        rel_err = abs_err / abs(exact)
        sig = math.inf if rel_err == 0.0 else -math.log10(rel_err)
        return cls(k, exact, approx, abs_err, rel_err, sig)
