"""Digamma at integers, Bernoulli numbers and even zeta values.

Bernoulli numbers are generated once, exactly, with the binomial recurrence
and kept as :class:`fractions.Fraction`.  Even zeta values are available both
as floats and as exact rational multiples of a power of pi, which is what the
expansion-term generator needs.
"""
from __future__ import annotations

import math
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, Mapping, Tuple, Union

import numpy as np

__all__ = [
    "EULER_GAMMA",
    "BERNOULLI_CAP",
    "PiForm",
    "bernoulli",
    "zeta_even",
    "zeta_even_rational",
    "digamma_integer",
    "digamma_asymptotic",
]

# Euler-Mascheroni constant, 40 digits.
EULER_GAMMA = 0.5772156649015328606065120900824024310422

BERNOULLI_CAP = 40

RationalCoefficient = Fraction


def _bernoulli_table(nmax: int) -> Tuple[Fraction, ...]:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0, B_1 = -1/2 convention
    b = [Fraction(1)]
    for m in range(1, nmax + 1):
        s = sum(comb(m + 1, j) * b[j] for j in range(m))
        b.append(-s / (m + 1))
    return tuple(b)


# Built at import so lookups are read-only and thread safe.
_BERNOULLI = _bernoulli_table(BERNOULLI_CAP)


def _check_even(two_n: int) -> None:
    if isinstance(two_n, bool) or not isinstance(two_n, (int, np.integer)):
        raise TypeError(f"index must be an integer, got {two_n!r}")
    if two_n < 2 or two_n % 2:
        raise ValueError(f"index must be an even integer >= 2, got {two_n}")
    if two_n > BERNOULLI_CAP:
        raise OverflowError(f"index {two_n} exceeds the cap {BERNOULLI_CAP}")


def bernoulli(two_n: int) -> Fraction:
    """Exact Bernoulli number B_{2n} for 2 <= 2n <= 40."""
    _check_even(two_n)
    return _BERNOULLI[two_n]


def zeta_even_rational(two_n: int) -> Fraction:
    """Rational r such that zeta(2n) = r * pi**(2n)."""
    _check_even(two_n)
    n = two_n // 2
    sign = 1 if n % 2 else -1
    return sign * _BERNOULLI[two_n] * 2 ** two_n / (2 * factorial(two_n))


def zeta_even(two_n: int) -> float:
    """zeta(2n) from the Bernoulli-number closed form."""
    return float(zeta_even_rational(two_n)) * math.pi ** two_n


def digamma_integer(k: int) -> float:
    """psi(k) = H_{k-1} - gamma, summed with exactly rounded accumulation."""
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise TypeError(f"k must be an integer, got {k!r}")
    if k < 1:
        raise ValueError(f"digamma_integer needs k >= 1, got {k}")
    terms = 1.0 / np.arange(1, int(k), dtype=float)
    return math.fsum(np.append(terms, -EULER_GAMMA).tolist())


def digamma_asymptotic(k: float, order: int) -> float:
    """Truncated large-k expansion of psi(k).

    ``order`` is the number of Bernoulli corrections ``-B_{2n}/(2n k^{2n})``
    kept.  ``order=0`` returns ``ln k`` alone; any ``order >= 1`` also
    includes ``-1/(2k)``, so the truncation error is O(k**-(2*order + 2)).
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if k <= 0:
        raise ValueError("k must be positive")
    value = math.log(k)
    if order == 0:
        return value
    terms = [value, -0.5 / k]
    for n in range(1, order + 1):
        terms.append(-float(bernoulli(2 * n)) / (2 * n * k ** (2 * n)))
    return math.fsum(terms)


class PiForm:
    """Exact finite sum ``sum_p q_p * pi**p`` with rational ``q_p``.

    Enough symbolic structure for expansion coefficients such as
    ``(pi**2 + 3) / (36 pi)``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[int, object], Iterable[Tuple[int, object]], None] = None):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        acc: Dict[int, Fraction] = {}
        for power, coef in items:
            acc[int(power)] = acc.get(int(power), Fraction(0)) + Fraction(coef)
        self._terms = {p: q for p, q in acc.items() if q != 0}

    @classmethod
    def rational(cls, q) -> "PiForm":
        return cls({0: q})

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def __add__(self, other):
        if not isinstance(other, PiForm):
            other = PiForm.rational(other)
        merged = dict(self._terms)
        for p, q in other._terms.items():
            merged[p] = merged.get(p, Fraction(0)) + q
        return PiForm(merged)

    __radd__ = __add__

    def __neg__(self):
        return PiForm({p: -q for p, q in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PiForm):
            out: Dict[int, Fraction] = {}
            for p1, q1 in self._terms.items():
                for p2, q2 in other._terms.items():
                    out[p1 + p2] = out.get(p1 + p2, Fraction(0)) + q1 * q2
            return PiForm(out)
        q = Fraction(other)
        return PiForm({p: c * q for p, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiForm):
            if len(other._terms) != 1:
                raise ZeroDivisionError("can only divide by a single-term PiForm")
            (p, q), = other._terms.items()
            return PiForm({p0 - p: c / q for p0, c in self._terms.items()})
        return self * (1 / Fraction(other))

    def __eq__(self, other):
        if not isinstance(other, PiForm):
            try:
                other = PiForm.rational(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __float__(self) -> float:
        return math.fsum(float(q) * math.pi ** p for p, q in self._terms.items())

    def __repr__(self):
        return f"PiForm({self._terms!r})"

    def __str__(self):
        return _format_pi_form(self._terms)


_SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def _pi_power(p: int) -> str:
    if p == 0:
        return ""
    return "π" if p == 1 else "π" + str(p).translate(_SUPERSCRIPT)


def _format_pi_form(terms: Mapping[int, Fraction]) -> str:
    if not terms:
        return "0"
    pmin = min(terms)
    denom = math.lcm(*(q.denominator for q in terms.values()))
    nums = {p: int(q * denom) for p, q in terms.items()}
    common = math.gcd(*nums.values())
    lead = nums[max(nums)]
    if lead < 0:
        common = -common
    scale = Fraction(common, denom)
    # value = scale * pi**pmin * sum_p (nums[p]/common) * pi**(p - pmin)
    inner = []
    for p in sorted(nums, reverse=True):
        c = nums[p] // common
        mag = abs(c)
        body = _pi_power(p - pmin)
        piece = (str(mag) if mag != 1 or not body else "") + body
        inner.append(("-" if c < 0 else "+", piece))
    sign = "-" if scale < 0 else ""
    a, b = abs(scale.numerator), scale.denominator
    num_factors = []
    if a != 1:
        num_factors.append(str(a))
    if pmin > 0:
        num_factors.append(_pi_power(pmin))
    den_factors = []
    if b != 1:
        den_factors.append(str(b))
    if pmin < 0:
        den_factors.append(_pi_power(-pmin))

    if len(inner) == 1:
        num = "".join(num_factors) or "1"
    else:
        s = inner[0][1] + "".join(f"{op}{piece}" for op, piece in inner[1:])
        num = "".join(num_factors) + f"({s})" if num_factors or den_factors else s
    if not den_factors:
        return sign + num
    den = "".join(den_factors)
    if len(den_factors) > 1:
        den = f"({den})"
    return f"{sign}{num}/{den}"
