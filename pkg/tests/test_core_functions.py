import math
from math import comb

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cotsum import core_functions as cf
from cotsum.core_functions import (
    endpoint_derivatives,
    endpoint_derivatives_exact,
    g,
    g0,
    g_derivative,
    max_abs_derivative,
)

PI = math.pi
mpmath.mp.dps = 60


def _g_closed_mp(x):
    return -x * mpmath.cot(mpmath.pi * x) - 1 / (mpmath.pi * (1 - x))


def g_mp(x):
    """Closed form at 60 digits, valid on (-1, 2); x = 0, 1 by a symmetric limit."""
    x = mpmath.mpf(x)
    if x in (0, 1):
        # argument error ~1e-60 gives cot error ~1e-60/tiny^2; limit bias is O(tiny^2)
        tiny = mpmath.mpf(10) ** -15
        return (_g_closed_mp(x + tiny) + _g_closed_mp(x - tiny)) / 2
    return _g_closed_mp(x)


def central_fd(f, x, n, h):
    """n-th derivative by the order-n central difference, O(h^2)."""
    x, h = mpmath.mpf(x), mpmath.mpf(h)
    return sum((-1) ** i * comb(n, i) * f(x + (mpmath.mpf(n) / 2 - i) * h) for i in range(n + 1)) / h ** n


def fd_oracle(x, n, h=mpmath.mpf("0.01"), levels=5):
    """Richardson table over h, h/2, ... of central differences (error in powers of h^2).

    Returns the extrapolated value and the change from the previous column
    as a truncation estimate.
    """
    row = [central_fd(g_mp, x, n, h / 2 ** i) for i in range(levels)]
    prev = row
    for col in range(1, levels):
        factor = 4 ** col
        prev, row = row, [(factor * row[i + 1] - row[i]) / (factor - 1) for i in range(len(row) - 1)]
    return row[-1], abs(row[-1] - prev[-1])


def test_g0_examples():
    assert g0(0.5) == pytest.approx(0.0, abs=1e-16)
    assert g0(0.25) == pytest.approx(-0.25, rel=1e-15)
    assert g0(0.0) == pytest.approx(-1 / PI, rel=1e-15)


def test_g0_domain():
    for bad in (1.0, -0.1, 1.5, float("nan")):
        with pytest.raises(ValueError):
            g0(bad)


def test_g_examples():
    assert g(0.0) == pytest.approx(-2 / PI, rel=1e-15)
    assert g(1.0) == pytest.approx(-1 / PI, rel=1e-15)
    assert g(0.5) == pytest.approx(-2 / PI, rel=1e-15)


def test_g_domain():
    for bad in (-1e-12, 1 + 1e-12):
        with pytest.raises(ValueError):
            g(bad)
    with pytest.raises(ValueError):
        g_derivative(0.5, 7)


def test_g_vectorised_shapes():
    xs = np.linspace(0, 1, 11)
    out = g(xs)
    assert out.shape == xs.shape
    assert isinstance(g(0.3), float)
    np.testing.assert_allclose(out, [g(float(x)) for x in xs], rtol=0, atol=0)


def test_g_smooth_at_one():
    xs = 1.0 - np.logspace(-18, -1, 50)
    vals = g(np.append(xs, 1.0))
    assert np.all(np.isfinite(vals))
    assert vals[-1] == pytest.approx(-1 / PI, rel=1e-15)
    assert np.all(np.abs(vals[:-1] + 1 / PI) < 0.1)


@pytest.mark.parametrize("x, n, expected", [
    (0.0, 1, -1 / PI),
    (1.0, 1, PI / 3),
    (0.0, 3, -6 / PI),
    (1.0, 3, 2 * PI ** 3 / 15),
])
def test_endpoint_constants(x, n, expected):
    assert g_derivative(x, n) == pytest.approx(expected, rel=1e-14)


def test_endpoint_table_order3():
    d = endpoint_derivatives(3)
    z2 = PI ** 2 / 6
    expect_zero = [-2 / PI, -1 / PI, (2 * z2 * 2 - 2) / PI, -6 / PI]
    expect_one = [-1 / PI, PI / 3, 2 * 2 * z2 / PI, 2 * PI ** 3 / 15]
    np.testing.assert_allclose(d.at_zero, expect_zero, rtol=1e-14)
    np.testing.assert_allclose(d.at_one, expect_one, rtol=1e-14)
    assert d.max_order == 3


@pytest.mark.parametrize("x", [0, 1])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_endpoint_derivatives_fd_oracle(x, n):
    ref, trunc = fd_oracle(x, n)
    d = endpoint_derivatives(6)
    table = d.at_zero if x == 0 else d.at_one
    assert trunc < 1e-13 * abs(ref)
    # 1/h^6 amplification of the limit evaluation limits the oracle to ~1e-12
    assert table[n] == pytest.approx(float(ref), rel=1e-11)
    assert g_derivative(float(x), n) == pytest.approx(float(ref), rel=1e-11)


def test_g5_endpoint_values():
    assert g_derivative(0.0, 5) == pytest.approx(-120 / PI, rel=1e-14)
    # g^(5)(1) = 2 * 5! * zeta(6) / pi = 16 pi^5 / 63
    assert g_derivative(1.0, 5) == pytest.approx(16 * PI ** 5 / 63, rel=1e-14)


def test_exact_and_float_tables_agree():
    exact0, exact1 = endpoint_derivatives_exact(40)
    d = endpoint_derivatives(40)
    for n in range(41):
        assert d.at_zero[n] == pytest.approx(float(exact0[n]), rel=1e-13)
        assert d.at_one[n] == pytest.approx(float(exact1[n]), rel=1e-13)


def test_odd_derivatives_at_zero():
    d = endpoint_derivatives(11)
    for j in range(1, 7):
        assert d.at_zero[2 * j - 1] == pytest.approx(-math.factorial(2 * j - 1) / PI, rel=1e-14)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 0.4))
def test_branch_consistency_left(x):
    series = cf._series(cf._AT0, np.array([x]), 0)[0]
    closed = cf._g_closed(np.array([x]), 0)[0]
    assert abs(series - closed) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(0.6, 0.99))
def test_branch_consistency_right(x):
    series = cf._series(cf._AT1, np.array([1.0 - x]), 0)[0]
    closed = cf._g_closed(np.array([x]), 0)[0]
    assert abs(series - closed) <= 1e-12


@pytest.mark.parametrize("x", [0.05, 0.12, 0.3, 0.5, 0.71, 0.88, 0.95])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_derivative_matches_finite_differences(x, n):
    h = mpmath.mpf("1e-3")
    d1 = central_fd(g_mp, x, n, h)
    d2 = central_fd(g_mp, x, n, h / 2)
    ref = (4 * d2 - d1) / 3
    trunc = float(abs(d2 - d1))
    got = g_derivative(x, n)
    assert abs(got - float(ref)) <= trunc + 1e-9 * max(1.0, abs(float(ref)))


def test_g_against_mpmath_grid():
    xs = np.linspace(0.001, 0.999, 301)
    ref = np.array([float(g_mp(x)) for x in xs])
    np.testing.assert_allclose(g(xs), ref, rtol=0, atol=2e-15)


def test_max_abs_g5_bounds_grid():
    xs = np.linspace(0, 1, 20001)
    assert max_abs_derivative(5) >= np.max(np.abs(g_derivative(xs, 5)))
