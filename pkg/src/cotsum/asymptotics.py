"""Large-k expansions of c0(1/k) and three independent remainder evaluators.

The expansion comes from the finite Poisson summation formula applied to g
followed by repeated integration by parts.  Mode m contributes, at step j,

    (-1)^(j+1) [g^(2j-1)(1) - g^(2j-1)(0)] / (2 pi m k)^(2j)

and summing over m turns 1/m^(2j) into zeta(2j).  Nothing below hard-codes
a coefficient: every term is rebuilt from the endpoint derivatives of g, the
even zeta values and, for the ln k form, the Bernoulli terms of psi(k).
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

import numpy as np

from .core_functions import (
    endpoint_derivatives,
    endpoint_derivatives_exact,
    g_derivative,
    g_derivative_noise,
    max_abs_derivative,
)
from .exact_sum import SumIndex, c0_exact, c0_exact_error_bound
from .quadrature import QuadratureConfig, QuadratureError, g5_sin_integral, gauss_panels
from .special_functions import (
    BERNOULLI_CAP,
    EULER_GAMMA,
    PiForm,
    bernoulli,
    digamma_integer,
    zeta_even,
    zeta_even_rational,
)

__all__ = [
    "MAX_J",
    "ExpansionTerm",
    "RemainderEstimate",
    "expansion_terms",
    "c0_approx_series",
    "c0_approx_psi_form",
    "remainder_difference",
    "remainder_reference",
    "remainder_bernoulli_form",
    "bernoulli_kernel",
]

MAX_J = BERNOULLI_CAP // 2
_EPS = sys.float_info.epsilon
_LN_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class ExpansionTerm:
    """Coefficient of k**-power; power 0 is the constant term."""

    power: int
    coefficient_exact: PiForm
    coefficient_value: float

    def __str__(self):
        return f"k^-{self.power}: {self.coefficient_exact} = {self.coefficient_value:.17g}"


@lru_cache(maxsize=None)
def _terms(max_j: int, folded: bool) -> Tuple[ExpansionTerm, ...]:
    if not 1 <= max_j <= MAX_J:
        raise ValueError(f"max_j must be in 1..{MAX_J}, got {max_j}")
    order = 2 * max_j - 1
    zero_x, one_x = endpoint_derivatives_exact(order)
    table = endpoint_derivatives(order)

    # trapezoid endpoint correction -g(0)/2 - g(1)/2
    const_x = -(zero_x[0] + one_x[0]) * Fraction(1, 2)
    const_v = -0.5 * (table.at_zero[0] + table.at_one[0])
    if folded:
        # (k/pi) * (-1/(2k)) from psi(k) ~ ln k - 1/(2k) - ...
        const_x = const_x + PiForm({-1: Fraction(-1, 2)})
        const_v -= 0.5 / math.pi
    out = [ExpansionTerm(0, const_x, const_v)]

    for j in range(1, max_j + 1):
        n = 2 * j - 1
        sign = 1 if j % 2 else -1
        jump_x = one_x[n] - zero_x[n]
        jump_v = table.at_one[n] - table.at_zero[n]
        # 2 zeta(2j) / (2 pi)^(2j) = 2 r / 4^j with zeta(2j) = r pi^(2j)
        coef_x = jump_x * (sign * 2 * zeta_even_rational(2 * j) / 4 ** j)
        coef_v = sign * 2.0 * zeta_even(2 * j) * jump_v / (2.0 * math.pi) ** (2 * j)
        if folded:
            b = bernoulli(2 * j)
            coef_x = coef_x + PiForm({-1: -b / (2 * j)})
            coef_v -= float(b) / (2 * j * math.pi)
        out.append(ExpansionTerm(n, coef_x, coef_v))
    return tuple(out)


def expansion_terms(max_j: int, folded: bool = False) -> List[ExpansionTerm]:
    """Constant and k^-(2j-1) coefficients, j = 1..max_j.

    With ``folded=False`` these belong to the psi-form
    ``c0 = (k/pi)[psi(k) + gamma - ln 2pi] + sum_p a_p k^-p``;
    with ``folded=True`` psi(k) has been expanded and the coefficients belong
    to ``c0 = (k ln k)/pi - (k/pi)[ln 2pi - gamma] + sum_p b_p k^-p``.
    """
    return list(_terms(max_j, folded))


def _tail(k: int, terms: Tuple[ExpansionTerm, ...]) -> List[float]:
    return [t.coefficient_value / float(k) ** t.power for t in terms]


def c0_approx_series(k, max_j: int = 2) -> float:
    """ln k form of the expansion, O(1) work; max_j=2 gives the five-term formula."""
    k = SumIndex(k)
    lead = k * math.log(k) / math.pi - k * (_LN_2PI - EULER_GAMMA) / math.pi
    return math.fsum([lead, *_tail(k, _terms(max_j, True))])


def c0_approx_psi_form(k, max_j: int = 2, psi: Optional[Callable[[int], float]] = None) -> float:
    """psi(k) form of the expansion with the remainder dropped.

    ``psi`` defaults to the exact :func:`digamma_integer`; passing a truncated
    asymptotic digamma reproduces :func:`c0_approx_series`.
    """
    k = SumIndex(k)
    psi_k = (psi or digamma_integer)(k)
    lead = (k / math.pi) * math.fsum([psi_k, EULER_GAMMA, -_LN_2PI])
    return math.fsum([lead, *_tail(k, _terms(max_j, False))])


@dataclass(frozen=True)
class RemainderEstimate:
    """A remainder value with an error bound; ``bound`` is the sum of parts."""

    method: str
    k: int
    value: float
    tail_bound: float = 0.0
    quadrature_error: float = 0.0
    rounding_bound: float = 0.0

    @property
    def bound(self) -> float:
        return self.tail_bound + self.quadrature_error + self.rounding_bound

    def agrees_with(self, other: "RemainderEstimate") -> bool:
        return abs(self.value - other.value) <= self.bound + other.bound


def remainder_difference(k) -> RemainderEstimate:
    """r(k) = c0_exact(k) - c0_approx_psi_form(k), with a rounding bound."""
    k = SumIndex(k)
    exact = c0_exact(k)
    approx = c0_approx_psi_form(k)
    psi_k = digamma_integer(k)
    approx_bound = 16.0 * _EPS * ((k / math.pi) * (abs(psi_k) + EULER_GAMMA + _LN_2PI + math.log(k) + 1.0) + 1.0)
    return RemainderEstimate(
        "exact_minus_approx", k, exact - approx,
        rounding_bound=c0_exact_error_bound(k) + approx_bound + _EPS * abs(exact),
    )


def _remainder_prefactor(k: int) -> float:
    return -1.0 / (16.0 * math.pi ** 5 * float(k) ** 4)


def remainder_reference(k, M: Optional[int] = None, q: Optional[QuadratureConfig] = None) -> RemainderEstimate:
    """r(k) from its Fourier-mode series, truncated after M modes.

    r(k) = -1/(16 pi^5 k^4) sum_m m^-5 int_0^1 g^(5)(x) sin(2 pi m k x) dx.
    The dropped modes are bounded by max|g^(5)| sum_{m>M} m^-5 times the
    prefactor.
    """
    q = q or QuadratureConfig()
    k = SumIndex(k)
    M = q.max_modes if M is None else int(M)
    if M < 1:
        raise ValueError("M must be >= 1")
    pref = abs(_remainder_prefactor(k))
    results = [g5_sin_integral(m, k, q) for m in range(1, M + 1)]
    total = math.fsum(r.value / m ** 5 for m, r in enumerate(results, start=1))
    value = _remainder_prefactor(k) * total
    tail = pref * max_abs_derivative(5) * M ** -4 / 4.0
    quad = pref * math.fsum(r.error / m ** 5 for m, r in enumerate(results, start=1))
    return RemainderEstimate("fourier_modes", k, value, tail, quad, 8.0 * _EPS * abs(value))


def bernoulli_kernel(y):
    """sum_{m>=1} sin(2 pi m y) / m^5 in closed form, -(2 pi^5/15) B5({y})."""
    y = np.asarray(y, dtype=float)
    t = y - np.floor(y)
    # factored form: each factor is computed without cancellation on [0, 1)
    b5 = t * (t - 0.5) * (t - 1.0) * (t * t - t - 1.0 / 3.0)
    out = -(2.0 * math.pi ** 5 / 15.0) * b5
    return float(out) if out.ndim == 0 else out


def remainder_bernoulli_form(k, q: Optional[QuadratureConfig] = None) -> RemainderEstimate:
    """r(k) as one integral against the periodic degree-5 Bernoulli kernel.

    Summing the mode series under the integral gives
    r(k) = -1/(16 pi^5 k^4) int_0^1 g^(5)(x) K(kx) dx with K from
    :func:`bernoulli_kernel`.  Panels are the half-periods of K(kx).
    """
    q = q or QuadratureConfig()
    k = SumIndex(k)
    edges = np.arange(2 * k + 1) / (2.0 * k)
    res = gauss_panels(lambda x: g_derivative(x, 5) * bernoulli_kernel(k * x), edges, q.nodes_per_half_period,
                       lambda x: g_derivative_noise(x, 5) * np.abs(bernoulli_kernel(k * x)))
    if not res.error <= q.abs_tol:
        raise QuadratureError(f"Bernoulli-kernel remainder integral for k={k} did not converge", res.error)
    pref = _remainder_prefactor(k)
    value = pref * res.value
    return RemainderEstimate("bernoulli_kernel", k, value, 0.0, abs(pref) * res.error, 8.0 * _EPS * abs(value))
