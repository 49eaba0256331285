"""Acceptance criteria, one test (or parametrized group) per criterion.

The conftest prints a PASS/FAIL line for each criterion number at the end of
the run.
"""

import inspect
import math
import timeit

import numpy as np
import pytest

from cotsum import asymptotics
from cotsum.asymptotics import (
    c0_approx_psi_form,
    c0_approx_series,
    expansion_terms,
    remainder_bernoulli_form,
    remainder_difference,
    remainder_reference,
)
from cotsum.core_functions import g_derivative
from cotsum.exact_sum import c0_exact, c_exact
from cotsum.quadrature import integral_g, verify_psf
from cotsum.special_functions import EULER_GAMMA, digamma_integer

PI = math.pi


def rel_err(approx, exact):
    return abs(approx - exact) / abs(exact)


@pytest.mark.criterion(1, "eight significant digits at k = 10")
def test_c1_accuracy_k10():
    assert rel_err(c0_approx_series(10), c0_exact(10)) <= 5e-8


@pytest.mark.criterion(2, "three to four significant digits at k = 3")
def test_c2_accuracy_k3():
    exact = c0_exact(3)
    assert exact == pytest.approx(math.sqrt(3) / 9, rel=1e-15)
    assert 1e-6 <= rel_err(c0_approx_series(3), exact) <= 1e-3


@pytest.mark.criterion(3, "remainder decays like k^-5")
def test_c3_remainder_order():
    ks = np.array([8, 16, 32, 64])
    r = np.array([abs(c0_exact(int(k)) - c0_approx_psi_form(int(k))) for k in ks])
    slope = np.polyfit(np.log(ks), np.log(r), 1)[0]
    assert abs(slope + 5) <= 0.3


@pytest.mark.criterion(4, "expansion coefficients regenerated without literals")
def test_c4_coefficients():
    _, t1, t3 = expansion_terms(2)
    assert t1.coefficient_value == pytest.approx((PI ** 2 + 3) / (36 * PI), rel=1e-14, abs=0)
    assert t3.coefficient_value == pytest.approx(-(PI ** 4 + 45) / (5400 * PI), rel=1e-14, abs=0)
    _, f1, f3 = expansion_terms(2, folded=True)
    assert f1.coefficient_value == pytest.approx(PI / 36, rel=1e-14, abs=0)
    assert f3.coefficient_value == pytest.approx(-PI ** 3 / 5400, rel=1e-14, abs=0)
    src = inspect.getsource(asymptotics._terms)
    for literal in ("36", "5400", "45"):
        assert literal not in src


@pytest.mark.criterion(5, "endpoint derivative constants")
@pytest.mark.parametrize("x, n, expected", [
    (0.0, 1, -1 / PI),
    (1.0, 1, PI / 3),
    (0.0, 3, -6 / PI),
    (1.0, 3, 2 * PI ** 3 / 15),
])
def test_c5_endpoint_constants(x, n, expected):
    assert g_derivative(x, n) == pytest.approx(expected, rel=1e-14, abs=0)


@pytest.mark.criterion(6, "integral of g equals -ln(2 pi)/pi")
def test_c6_integral_constant():
    assert abs(integral_g().value + math.log(2 * PI) / PI) <= 1e-10


@pytest.mark.criterion(7, "Poisson summation residual below mode-tail bound at M = 80")
@pytest.mark.parametrize("k", [2, 5, 10])
def test_c7_psf(k):
    rep = verify_psf(k, 80)
    assert rep.residual < rep.tail_bound
    assert rep.passed


@pytest.mark.criterion(8, "three remainder evaluations agree within bounds")
@pytest.mark.parametrize("k", [4, 8, 16])
def test_c8_remainder_cross_check(k):
    ests = [remainder_reference(k), remainder_bernoulli_form(k), remainder_difference(k)]
    for i in range(3):
        for j in range(i + 1, 3):
            a, b = ests[i], ests[j]
            assert abs(a.value - b.value) <= a.bound + b.bound


@pytest.mark.criterion(9, "identity suite for k = 2..2000 and trivial values")
def test_c9_identity_suite():
    assert c0_exact(1) == 0.0
    assert c0_exact(2) == 0.0
    worst = 0.0
    for k in range(2, 2001):
        c0 = c0_exact(k)
        rhs = c0 - (k / PI) * (digamma_integer(k) + EULER_GAMMA)
        worst = max(worst, abs(c_exact(k) - rhs) / max(1.0, abs(c0)))
    assert worst <= 1e-10


@pytest.mark.criterion(10, "expansion is over 1000x faster than the exact sum at k = 10^7")
def test_c10_performance():
    k = 10 ** 7
    exact_time = min(timeit.repeat(lambda: c0_exact(k), number=1, repeat=2))
    approx_time = min(timeit.repeat(lambda: c0_approx_series(k), number=1000, repeat=5)) / 1000
    assert exact_time / approx_time > 1e3
