"""The cotangent kernel g0(x) = -x cot(pi x) and its regularised form g.

``g(x) = g0(x) - 1/(pi (1 - x))`` is analytic on [0, 1] (nearest poles at
x = -1 and x = 2).  Near each endpoint it is evaluated from its Taylor
series, which follows from ``pi z cot(pi z) = 1 - 2 sum zeta(2n) z^(2n)``:

    g(x)     = -2/pi - (1/pi) sum_{n>=1} x^n + (2/pi) sum_{n>=1} zeta(2n) x^(2n)
    g(1 - t) = -1/pi - (2/pi) sum_{n>=1} zeta(2n) t^(2n-1)
                     + (2/pi) sum_{n>=1} zeta(2n) t^(2n)

In the interior the closed form is used, with derivatives of cot(pi x)
expressed as polynomials in u = cot(pi x).

All evaluators accept scalars or numpy arrays.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from .special_functions import BERNOULLI_CAP, PiForm, zeta_even, zeta_even_rational

__all__ = [
    "SERIES_THRESHOLD",
    "MAX_DERIVATIVE",
    "EndpointDerivatives",
    "g0",
    "g",
    "g_derivative",
    "g_derivative_noise",
    "endpoint_derivatives",
    "endpoint_derivatives_exact",
    "max_abs_derivative",
]

SERIES_THRESHOLD = 0.1
MAX_DERIVATIVE = 6
_SERIES_RTOL = 1e-17
_SERIES_MAX_TERMS = 40
_NMAX = BERNOULLI_CAP  # highest Taylor index with a tabulated zeta value


def _taylor_coefficients() -> Tuple[np.ndarray, np.ndarray]:
    at0 = np.empty(_NMAX + 1)
    at1 = np.empty(_NMAX + 1)
    at0[0] = -2.0 / math.pi
    at1[0] = -1.0 / math.pi
    for n in range(1, _NMAX + 1):
        at0[n] = (2.0 * zeta_even(n) - 1.0) / math.pi if n % 2 == 0 else -1.0 / math.pi
        z = zeta_even(2 * ((n + 1) // 2))
        at1[n] = 2.0 * z / math.pi if n % 2 == 0 else -2.0 * z / math.pi
    return at0, at1


# at0[n]: coefficient of x^n about 0; at1[n]: coefficient of t^n, t = 1 - x
_AT0, _AT1 = _taylor_coefficients()


def _cot_derivative_polys(order: int) -> List[Polynomial]:
    # d/dx cot(pi x) = -pi (1 + u^2); P_{j+1}(u) = -(1 + u^2) P_j'(u)
    polys = [Polynomial([0.0, 1.0])]
    one_plus_u2 = Polynomial([1.0, 0.0, 1.0])
    for _ in range(order):
        polys.append(-one_plus_u2 * polys[-1].deriv())
    return polys


_COT_POLYS = _cot_derivative_polys(MAX_DERIVATIVE)
_ABS_POLYS = [Polynomial(np.abs(p.coef)) for p in _COT_POLYS]
_EPS = sys.float_info.epsilon


def _series(coeffs: np.ndarray, z: np.ndarray, n: int) -> np.ndarray:
    """n-th derivative (in z) of sum_j coeffs[j] z^j, truncated adaptively."""
    total = np.zeros_like(z)
    scale = 0.0
    zpow = np.ones_like(z)
    terms = 0
    for j in range(n, _NMAX + 1):
        term = coeffs[j] * (math.factorial(j) // math.factorial(j - n)) * zpow
        total = total + term
        terms += 1
        scale = max(scale, float(np.max(np.abs(total), initial=0.0)))
        if float(np.max(np.abs(term), initial=0.0)) <= _SERIES_RTOL * scale or terms >= _SERIES_MAX_TERMS:
            break
        zpow = zpow * z
    return total


def _as_array(x, closed_right: bool) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    bad = (arr < 0.0) | ((arr > 1.0) if closed_right else (arr >= 1.0)) | np.isnan(arr)
    if np.any(bad):
        interval = "[0, 1]" if closed_right else "[0, 1)"
        raise ValueError(f"argument outside {interval}: {arr[bad].ravel()[:3]}")
    return arr, arr.ndim == 0


def _check_order(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"derivative order must be an integer, got {n!r}")
    if not 0 <= n <= MAX_DERIVATIVE:
        raise ValueError(f"derivative order must be in 0..{MAX_DERIVATIVE}, got {n}")


def _g_closed(x: np.ndarray, n: int, with_noise: bool = False):
    # u = cot(pi x), reduced through cot(pi x) = -cot(pi (1 - x)) on the right half
    right = x > 0.5
    u = np.where(right, -1.0 / np.tan(np.pi * (1.0 - x)), 1.0 / np.tan(np.pi * x))
    cot_n = x * math.pi ** n * _COT_POLYS[n](u)
    lower = n * math.pi ** (n - 1) * _COT_POLYS[n - 1](u) if n else 0.0
    pole = math.factorial(n) / (math.pi * (1.0 - x) ** (n + 1))
    value = -cot_n - lower - pole
    if not with_noise:
        return value
    au = np.abs(u)
    mag = x * math.pi ** n * _ABS_POLYS[n](au) + pole
    if n:
        mag = mag + n * math.pi ** (n - 1) * _ABS_POLYS[n - 1](au)
    # u carries ~2 ulps, amplified by the polynomial degree
    return value, (n + 4) * _EPS * mag


def _g_eval(x: np.ndarray, n: int) -> np.ndarray:
    out = np.empty_like(x)
    lo = x < SERIES_THRESHOLD
    hi = x > 1.0 - SERIES_THRESHOLD
    mid = ~(lo | hi)
    if np.any(lo):
        out[lo] = _series(_AT0, x[lo], n)
    if np.any(hi):
        t = 1.0 - x[hi]
        out[hi] = (-1) ** n * _series(_AT1, t, n)
    if np.any(mid):
        out[mid] = _g_closed(x[mid], n)
    return out


def g_derivative_noise(x, n: int):
    """Rounding-error estimate for :func:`g_derivative` at the same points.

    The series branches lose nothing to cancellation; the closed form
    cancels the cot derivatives against the pole term, and the estimate is
    a few ulps of the largest cancelling magnitude.
    """
    _check_order(n)
    arr, scalar = _as_array(x, closed_right=True)
    flat = arr.reshape(-1)
    mid = (flat >= SERIES_THRESHOLD) & (flat <= 1.0 - SERIES_THRESHOLD)
    out = 4 * _EPS * np.abs(_g_eval(flat, n))
    if np.any(mid):
        out[mid] = _g_closed(flat[mid], n, with_noise=True)[1]
    out = out.reshape(arr.shape)
    return float(out) if scalar else out


def g0(x):
    """-x cot(pi x) on [0, 1); the removable point x = 0 gives -1/pi."""
    arr, scalar = _as_array(x, closed_right=False)
    flat = arr.reshape(-1)
    out = np.empty_like(flat)
    lo = flat < SERIES_THRESHOLD
    if np.any(lo):
        xl = flat[lo]
        out[lo] = _series(_AT0, xl, 0) + 1.0 / (math.pi * (1.0 - xl))
    if np.any(~lo):
        xh = flat[~lo]
        right = xh > 0.5
        cot = np.where(right, -1.0 / np.tan(np.pi * (1.0 - xh)), 1.0 / np.tan(np.pi * xh))
        out[~lo] = -xh * cot
    out = out.reshape(arr.shape)
    return float(out) if scalar else out


def g(x):
    """Regularised kernel g(x) = -x cot(pi x) - 1/(pi (1 - x)) on [0, 1]."""
    return g_derivative(x, 0)


def g_derivative(x, n: int):
    """n-th derivative of g, 0 <= n <= 6, on [0, 1] (endpoints included)."""
    _check_order(n)
    arr, scalar = _as_array(x, closed_right=True)
    out = _g_eval(arr.reshape(-1), n).reshape(arr.shape)
    return float(out) if scalar else out


@dataclass(frozen=True)
class EndpointDerivatives:
    """Tables g^(n)(0) and g^(n)(1) for n = 0..max_order."""

    max_order: int
    at_zero: Tuple[float, ...]
    at_one: Tuple[float, ...]


def _check_max_order(max_order: int) -> None:
    if not 1 <= max_order <= _NMAX:
        raise ValueError(f"max_order must be in 1..{_NMAX}, got {max_order}")


def endpoint_derivatives(max_order: int) -> EndpointDerivatives:
    """Endpoint derivatives read off the floating Taylor coefficients."""
    _check_max_order(max_order)
    at_zero = tuple(math.factorial(n) * float(_AT0[n]) for n in range(max_order + 1))
    at_one = tuple((-1) ** n * math.factorial(n) * float(_AT1[n]) for n in range(max_order + 1))
    return EndpointDerivatives(max_order, at_zero, at_one)


def endpoint_derivatives_exact(max_order: int) -> Tuple[List[PiForm], List[PiForm]]:
    """Same tables as exact :class:`PiForm` values.

    g^(n)(0) is -n!/pi for odd n and n! (2 zeta(n) - 1)/pi for even n >= 2;
    g^(n)(1) = 2 n! zeta(2 ceil(n/2)) / pi for n >= 1.
    """
    _check_max_order(max_order)
    at_zero = [PiForm({-1: -2})]
    at_one = [PiForm({-1: -1})]
    for n in range(1, max_order + 1):
        nf = math.factorial(n)
        if n % 2:
            at_zero.append(PiForm({-1: -nf}))
        else:
            at_zero.append(PiForm({n - 1: 2 * nf * zeta_even_rational(n), -1: -nf}))
        two_j = 2 * ((n + 1) // 2)
        at_one.append(PiForm({two_j - 1: 2 * nf * zeta_even_rational(two_j)}))
    return at_zero, at_one


@lru_cache(maxsize=None)
def max_abs_derivative(n: int, samples: int = 4001) -> float:
    """Upper estimate of max |g^(n)| on [0, 1].

    Grid maximum plus half a grid step times the grid maximum of |g^(n+1)|,
    inflated by 10%.
    """
    if not 0 <= n < MAX_DERIVATIVE:
        raise ValueError(f"n must be in 0..{MAX_DERIVATIVE - 1}")
    xs = np.linspace(0.0, 1.0, samples)
    h = 1.0 / (samples - 1)
    peak = float(np.max(np.abs(g_derivative(xs, n))))
    slope = float(np.max(np.abs(g_derivative(xs, n + 1))))
    return 1.1 * (peak + 0.5 * h * slope)

