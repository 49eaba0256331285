"""Exact, asymptotic and Poisson-summation evaluation of the cotangent sum c0(1/k)."""
from .asymptotics import (
    ExpansionTerm,
    RemainderEstimate,
    bernoulli_kernel,
    c0_approx_psi_form,
    c0_approx_series,
    expansion_terms,
    remainder_bernoulli_form,
    remainder_difference,
    remainder_reference,
)
from .core_functions import EndpointDerivatives, endpoint_derivatives, g, g0, g_derivative
from .exact_sum import EvalReport, c0_exact, c_exact, harmonic
from .quadrature import QuadratureConfig, QuadratureError, fourier_cos_integral, integral_g, verify_psf
from .special_functions import EULER_GAMMA, bernoulli, digamma_asymptotic, digamma_integer, zeta_even

__version__ = "0.1.0"
