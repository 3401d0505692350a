from fractions import Fraction
import math

from hypothesis import given, strategies as st
import numpy as np
import pytest

from rmtenergy import specfun
from rmtenergy.errors import DomainError


@pytest.mark.parametrize("n, expected", [(1, Fraction(1)), (2, Fraction(3, 2)), (4, Fraction(25, 12))])
def test_harmonic_values(n, expected):
    assert specfun.harmonic(n) == expected


@given(st.integers(1, 400))
def test_harmonic_step(n):
    assert specfun.harmonic(n + 1) - specfun.harmonic(n) == Fraction(1, n + 1)


def test_harmonic_floats_match_exact():
    h = specfun.harmonic_floats(60)
    assert np.allclose(h, [float(specfun.harmonic(n)) for n in range(1, 61)], rtol=1e-15, atol=0)
    assert specfun.harmonic_float(60) == pytest.approx(h[-1], rel=1e-15)


@pytest.mark.parametrize("m, expected", [(0, Fraction(0)), (1, Fraction(1)), (3, Fraction(23, 15))])
def test_odd_harmonic(m, expected):
    assert specfun.odd_harmonic(m) == expected


def test_euler_gamma_literal_and_asymptotics():
    assert specfun.euler_gamma() == pytest.approx(0.5772156649015329, abs=1e-16)
    # H_n - log n - 1/(2n) + 1/(12 n^2) = gamma + O(n^-4)
    n = 10**4
    approx = specfun.harmonic_float(n) - math.log(n) - 1 / (2 * n) + 1 / (12 * n * n)
    assert approx == pytest.approx(specfun.EULER_GAMMA, abs=1e-14)


@pytest.mark.parametrize("z, n, expected", [(5, 2, 10), (-0.5, 1, -0.5), (-0.5, 2, 0.375), (7, 0, 1)])
def test_binom_general(z, n, expected):
    assert specfun.binom_general(z, n) == pytest.approx(expected, rel=1e-15)


def test_binom_general_rejects_negative_order():
    with pytest.raises(DomainError):
        specfun.binom_general(1.5, -1)


@pytest.mark.parametrize("k, expected", [(0, 1.0), (1, 0.5), (5, 63 / 256)])
def test_central_binom_ratio(k, expected):
    assert specfun.central_binom_ratio(k) == pytest.approx(expected, rel=1e-15)


def test_central_binom_ratio_monotone_and_asymptotic():
    r = specfun.central_binom_ratios(10**4)
    assert np.all(r > 0) and np.all(r <= 1)
    assert np.all(np.diff(r) < 0)
    assert 10**4 * r[-1] ** 2 == pytest.approx(1 / math.pi, rel=0.01)


@pytest.mark.parametrize("r", [0.0, 1.0, 3.0])
def test_incomplete_gamma_order_one(r):
    assert specfun.upper_incomplete_gamma_int(1, r) == pytest.approx(math.exp(-r), rel=1e-15)


def test_incomplete_gamma_values():
    assert specfun.upper_incomplete_gamma_int(3, 0.0) == pytest.approx(2.0, rel=1e-15)
    assert specfun.upper_incomplete_gamma_int(2, 1.0) == pytest.approx(2 / math.e, rel=1e-15)


@given(st.integers(1, 30), st.floats(0.01, 50.0), st.floats(0.01, 5.0))
def test_incomplete_gamma_normalized_decreasing(n, r, dr):
    q1 = specfun.upper_incomplete_gamma_int(n, r) / math.factorial(n - 1)
    q2 = specfun.upper_incomplete_gamma_int(n, r + dr) / math.factorial(n - 1)
    assert 0 < q1 <= 1
    assert q2 <= q1


@pytest.mark.parametrize("k, x, expected", [(0, 0.3, 1.0), (2, 1.0, 2.0), (3, 0.5, -5.0)])
def test_hermite_h(k, x, expected):
    assert specfun.hermite_h(k, x) == pytest.approx(expected)


@pytest.mark.parametrize("k", range(21))
def test_laguerre_at_zero(k):
    assert specfun.laguerre_l(k, 0.0) == 1


@given(st.floats(-10, 10))
def test_laguerre_one(s):
    assert specfun.laguerre_l(1, s) == pytest.approx(1 - s, abs=1e-12)


@pytest.mark.parametrize("k", range(13))
def test_hermite_coefficients_closed_form(k):
    # h_k(x) = k! sum_m (-1)^m (2x)^(k-2m) / (m! (k-2m)!)
    c = specfun.hermite_coefficients(k)
    expected = [0] * (k + 1)
    for m in range(k // 2 + 1):
        expected[k - 2 * m] = (-1) ** m * math.factorial(k) * 2 ** (k - 2 * m) // (
            math.factorial(m) * math.factorial(k - 2 * m))
    assert list(c) == expected
    x = Fraction(3, 7)
    assert specfun.hermite_h(k, x) == sum(ci * x**i for i, ci in enumerate(c))


@pytest.mark.parametrize("k", range(13))
def test_laguerre_coefficients_closed_form(k):
    c = specfun.laguerre_coefficients(k)
    expected = [Fraction((-1) ** j * math.comb(k, j), math.factorial(j)) for j in range(k + 1)]
    assert list(c) == expected
    s = Fraction(5, 3)
    assert specfun.laguerre_l(k, s) == sum(ci * s**i for i, ci in enumerate(c))


def _psi_square_sum_exact(n, x):
    return sum(specfun.hermite_h(k, x) ** 2 * math.exp(-x * x) / (2**k * math.factorial(k) * math.sqrt(math.pi))
               for k in range(n))


@pytest.mark.parametrize("n", [1, 2, 5, 12])
@pytest.mark.parametrize("x", [0.0, 0.7, -1.9, 3.3])
def test_hermite_square_sum_against_direct(n, x):
    got = specfun.hermite_square_sum(n, np.array([x]))[0]
    assert got == pytest.approx(_psi_square_sum_exact(n, x), rel=1e-12)


@pytest.mark.parametrize("n", [1, 3, 8])
@pytest.mark.parametrize("s", [0.0, 0.4, 2.5, 11.0])
def test_laguerre_square_sum_against_direct(n, s):
    direct = sum(specfun.laguerre_l(k, s) ** 2 for k in range(n)) * math.exp(-s)
    assert specfun.laguerre_square_sum(n, np.array([s]))[0] == pytest.approx(direct, rel=1e-11, abs=1e-300)


def test_square_sums_stay_finite_at_large_n():
    x = np.linspace(-40, 40, 801)
    v = specfun.hermite_square_sum(400, x)
    assert np.all(np.isfinite(v)) and np.all(v >= 0)
    s = np.linspace(0, 1800, 901)
    w = specfun.laguerre_square_sum(400, s)
    assert np.all(np.isfinite(w)) and np.all(w >= 0)
