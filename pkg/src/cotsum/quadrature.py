"""Panel Gauss-Legendre quadrature for the Fourier integrals of g.

Every oscillatory integral over [0, 1] is split at the zeros of its
trigonometric weight, so each panel holds at most half a period and the
integrand is smooth and sign-definite there.  A fixed Gauss-Legendre rule is
applied per panel; the error estimate is the change under node doubling
plus a rounding floor.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .core_functions import endpoint_derivatives, g, g_derivative, g_derivative_noise, max_abs_derivative
from .exact_sum import SumIndex, c_exact

__all__ = [
    "QuadratureConfig",
    "QuadratureError",
    "QuadratureResult",
    "PSFReport",
    "gauss_panels",
    "integrate",
    "fourier_cos_integral",
    "g5_sin_integral",
    "integral_g",
    "psf_tail_bound",
    "verify_psf",
]

_EPS = sys.float_info.epsilon


class QuadratureError(ArithmeticError):
    """Raised when a doubling error estimate exceeds the requested tolerance."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (estimated error {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class QuadratureConfig:
    nodes_per_half_period: int = 8
    max_modes: int = 50
    abs_tol: float = 1e-8

    def __post_init__(self):
        if self.nodes_per_half_period < 4:
            raise ValueError("nodes_per_half_period must be >= 4")
        if self.max_modes < 1:
            raise ValueError("max_modes must be >= 1")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")


class QuadratureResult(NamedTuple):
    value: float
    error: float


@lru_cache(maxsize=None)
def _leggauss(n: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _panel_rule(f: Callable[[np.ndarray], np.ndarray], edges: np.ndarray, n: int,
                noise: Optional[Callable[[np.ndarray], np.ndarray]] = None) -> Tuple[float, float, float]:
    x0, w0 = _leggauss(n)
    a, b = edges[:-1, None], edges[1:, None]
    half = 0.5 * (b - a)
    nodes = 0.5 * (a + b) + half * x0
    weights = half * w0
    contrib = weights * f(nodes)
    panels = contrib.sum(axis=1)
    noise_sum = float((weights * noise(nodes)).sum()) if noise is not None else 0.0
    return math.fsum(panels.tolist()), float(np.abs(contrib).sum()), noise_sum


def gauss_panels(f: Callable[[np.ndarray], np.ndarray], edges: Sequence[float], n: int,
                 noise: Optional[Callable[[np.ndarray], np.ndarray]] = None) -> QuadratureResult:
    """Composite Gauss-Legendre over the given panel edges.

    Returns the 2n-node value and the error estimate
    ``|Q_n - Q_2n| + 16 eps sum |w f| + sum w noise``, where ``noise`` (if
    given) bounds the absolute evaluation error of f at each node.
    """
    edges = np.asarray(edges, dtype=float)
    coarse, _, noise_coarse = _panel_rule(f, edges, n, noise)
    fine, mass, noise_fine = _panel_rule(f, edges, 2 * n, noise)
    err = abs(fine - coarse) + 16.0 * _EPS * mass + max(noise_coarse, noise_fine)
    return QuadratureResult(float(fine), float(err))


def _checked(result: QuadratureResult, q: QuadratureConfig, what: str) -> QuadratureResult:
    if not result.error <= q.abs_tol:
        raise QuadratureError(f"{what} did not converge", result.error)
    return result


def integrate(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
              q: Optional[QuadratureConfig] = None, panels: int = 4) -> QuadratureResult:
    """Integral of a smooth, non-oscillatory f over [a, b]."""
    q = q or QuadratureConfig()
    noise = (lambda x: g_derivative_noise(x, 0)) if f is g else None
    res = gauss_panels(f, np.linspace(a, b, panels + 1), q.nodes_per_half_period, noise)
    return _checked(res, q, "integral")


def _cos_edges(n_half: int) -> np.ndarray:
    # zeros of cos(pi n_half x) on (0, 1), plus the endpoints
    zeros = (2 * np.arange(n_half) + 1) / (2.0 * n_half)
    return np.concatenate(([0.0], zeros, [1.0]))


def _sin_edges(n_half: int) -> np.ndarray:
    return np.arange(n_half + 1) / float(n_half)


def fourier_cos_integral(m: int, k: int, q: Optional[QuadratureConfig] = None,
                         f: Callable[[np.ndarray], np.ndarray] = g) -> QuadratureResult:
    """int_0^1 f(x) cos(2 pi m k x) dx, with f = g unless overridden."""
    q = q or QuadratureConfig()
    mk = int(m) * SumIndex(k)
    if mk < 1:
        raise ValueError("m * k must be >= 1")
    omega = 2.0 * math.pi * mk
    noise = (lambda x: g_derivative_noise(x, 0) * np.abs(np.cos(omega * x))) if f is g else None
    res = gauss_panels(lambda x: f(x) * np.cos(omega * x), _cos_edges(2 * mk), q.nodes_per_half_period, noise)
    return _checked(res, q, f"cosine integral m={m}, k={k}")


def g5_sin_integral(m: int, k: int, q: Optional[QuadratureConfig] = None) -> QuadratureResult:
    """int_0^1 g^(5)(x) sin(2 pi m k x) dx on half-period panels."""
    q = q or QuadratureConfig()
    mk = int(m) * SumIndex(k)
    if mk < 1:
        raise ValueError("m * k must be >= 1")
    omega = 2.0 * math.pi * mk
    res = gauss_panels(lambda x: g_derivative(x, 5) * np.sin(omega * x), _sin_edges(2 * mk),
                       q.nodes_per_half_period, lambda x: g_derivative_noise(x, 5) * np.abs(np.sin(omega * x)))
    return _checked(res, q, f"g5 sine integral m={m}, k={k}")


def integral_g(q: Optional[QuadratureConfig] = None) -> QuadratureResult:
    """int_0^1 g(x) dx by quadrature."""
    return integrate(g, 0.0, 1.0, q)


def _zeta_tail(p: int, M: int) -> float:
    # sum_{m>M} m^-p <= int_M^inf x^-p dx
    return M ** (1 - p) / (p - 1)


@lru_cache(maxsize=None)
def _jump_bounds() -> Tuple[float, float, float]:
    d = endpoint_derivatives(3)
    return abs(d.at_one[1] - d.at_zero[1]), abs(d.at_one[3] - d.at_zero[3]), max_abs_derivative(5)


def psf_tail_bound(k: int, M: int) -> float:
    """Bound on 2k sum_{m>M} |int_0^1 g(x) cos(2 pi m k x) dx|.

    Uses the exact two-step integration by parts with the last integral
    bounded by max |g^(5)|.
    """
    jump1, jump3, g5max = _jump_bounds()
    w = 2.0 * math.pi * k
    return 2.0 * k * (jump1 * _zeta_tail(2, M) / w ** 2
                      + jump3 * _zeta_tail(4, M) / w ** 4
                      + g5max * _zeta_tail(5, M) / w ** 5)


@dataclass(frozen=True)
class PSFReport:
    k: int
    modes: int
    lhs: float
    rhs: float
    residual: float
    tail_bound: float
    quadrature_error: float
    rounding_bound: float
    endpoint_constant_error: float
    integral_constant_error: float

    @property
    def bound(self) -> float:
        return self.tail_bound + self.quadrature_error + self.rounding_bound

    @property
    def passed(self) -> bool:
        return self.residual <= self.bound


def verify_psf(k: int, M: int, q: Optional[QuadratureConfig] = None) -> PSFReport:
    """Compare sum_{m=1}^{k-1} g(m/k) with its Poisson-summation form.

    The right side is truncated after M Fourier modes; every ingredient is
    computed numerically (g at the endpoints, the integral of g, each mode
    integral), and the closed endpoint and integral constants are checked
    against those numbers separately.
    """
    q = q or QuadratureConfig()
    k = SumIndex(k)
    if k < 2:
        raise ValueError("verify_psf needs k >= 2")
    if M < 1:
        raise ValueError("M must be >= 1")
    lhs = c_exact(k)
    endpoint = -0.5 * g(0.0) - 0.5 * g(1.0)
    integral = integral_g(q)
    modes = [fourier_cos_integral(m, k, q) for m in range(1, M + 1)]
    mode_sum = math.fsum(r.value for r in modes)
    rhs = math.fsum([endpoint, k * integral.value, 2.0 * k * mode_sum])
    quad_err = k * integral.error + 2.0 * k * math.fsum(r.error for r in modes)
    rounding = 16.0 * _EPS * (abs(lhs) + abs(endpoint) + k * abs(integral.value) + (k - 1) * max_abs_derivative(0))
    return PSFReport(
        k=k,
        modes=M,
        lhs=lhs,
        rhs=rhs,
        residual=abs(lhs - rhs),
        tail_bound=psf_tail_bound(k, M),
        quadrature_error=quad_err,
        rounding_bound=rounding,
        endpoint_constant_error=abs(endpoint - 3.0 / (2.0 * math.pi)),
        integral_constant_error=abs(integral.value + math.log(2.0 * math.pi) / math.pi),
    )
