from fractions import Fraction
import json
import math

from hypothesis import given, strategies as st
import pytest

from rmtenergy import identities as ids
from rmtenergy.errors import DomainError

LOG2 = math.log(2)


def test_hockey_stick_examples():
    r = ids.check_hockey_stick(1, 0)
    assert (r.lhs, r.rhs, r.passed) == (1, 1, True)
    r = ids.check_hockey_stick(5, 2)
    assert (r.lhs, r.rhs) == (10, 10)


@given(st.integers(1, 60).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1))))
def test_hockey_stick_property(nr):
    r = ids.check_hockey_stick(*nr)
    assert r.discrepancy == 0 and r.mode == ids.EXACT


@pytest.mark.parametrize("n, value", [(1, Fraction(0)), (2, Fraction(-3, 8))])
def test_calcul_gue_values(n, value):
    r = ids.check_calcul_gue(n)
    assert r.lhs == value and r.rhs == value and r.passed


@pytest.mark.parametrize("k, l, p, value", [(0, 0, 0, 1), (0, 2, 1, 1)])
def test_binomial_identity_values(k, l, p, value):
    r = ids.check_binomial_identity(k, l, p)
    assert r.lhs == value and r.rhs == value


@given(st.integers(0, 20), st.integers(0, 20), st.integers(0, 20))
def test_binomial_identity_property(k, l, p):
    assert ids.check_binomial_identity(k, l, p).discrepancy == 0


@pytest.mark.parametrize("n, value", [(1, Fraction(0)), (2, Fraction(3, 4))])
def test_harmonic_identity_values(n, value):
    r = ids.check_harmonic_identity(n)
    assert r.lhs == value and r.rhs == value


@pytest.mark.parametrize("n", [1, 5, 25])
def test_pk(n):
    r = ids.check_pk(n)
    assert r.lhs == 1 and r.discrepancy == 0


def test_stieltjes_examples():
    r = ids.check_stieltjes(1, (1,))
    assert r.lhs == [Fraction(1)] and r.rhs == [Fraction(1)]
    assert ids.check_stieltjes(2, (1,)).discrepancy == 0
    with pytest.raises(DomainError):
        ids.check_stieltjes(3, (-1,))


@pytest.mark.parametrize("n", [1, 4, 10])
def test_stieltjes_mean(n):
    assert ids.check_stieltjes_mean(n).passed


def test_feldheim_examples():
    assert ids.check_feldheim(0).passed
    r = ids.check_feldheim(1, [1])
    assert r.lhs == [4.0] and r.rhs == [4.0]


def test_howell_examples():
    assert ids.check_howell(0).passed
    r = ids.check_howell(1, [1])
    assert r.lhs == [0.0] and r.rhs == [0.0]


@pytest.mark.parametrize("t, value", [(1.0, 1 / math.sqrt(3)), (2.0, 1 / math.sqrt(2))])
def test_integral_mh_n1(t, value):
    assert ids.integral_mh_closed_form(1, t) == pytest.approx(value, rel=1e-14)
    assert ids.check_integral_mh(1, t).lhs == pytest.approx(value, abs=1e-9)


def test_beta_prime_log():
    r = ids.check_beta_prime_log(1)
    assert r.rhs == pytest.approx(-2 * LOG2, abs=1e-12)
    assert r.passed
    assert ids.check_beta_prime_log(2).passed


@pytest.mark.parametrize("k, l, value", [(0, 0, 2 / 3), (1, 0, -4 / 27), (0, 1, 0.0)])
def test_laguerre_convolution_values(k, l, value):
    assert ids.laguerre_convolution_closed_form(k, l, 1.0) == pytest.approx(value, rel=1e-15)
    r = ids.check_laguerre_convolution(k, l, 1.0)
    assert r.lhs == pytest.approx(value, abs=1e-8) and r.passed


@pytest.mark.parametrize("m, second", [(0, 4 * LOG2), (2, 4 * (LOG2 + 8 / 3))])
def test_lue_integrals(m, second):
    r = ids.check_lue_integrals(m)
    assert r.rhs[0] == pytest.approx(2 * LOG2) and r.rhs[1] == pytest.approx(second)
    assert r.lhs[0] == pytest.approx(2 * LOG2, abs=1e-8)
    assert r.lhs[1] == pytest.approx(second, abs=1e-8)


def test_report_serialization():
    r = ids.check_calcul_gue(2)
    d = json.loads(r.to_json())
    assert set(d) == {"identity", "params", "lhs", "rhs", "discrepancy", "verdict"}
    assert d["lhs"] == "-3/8" and d["verdict"] == "pass" and d["params"] == [2]


def test_failed_report_verdict():
    bad = ids.IdentityReport("demo", (1,), 1.0, 2.0, 1.0, 0.5, ids.QUADRATURE)
    assert bad.verdict == "fail" and not bad.passed


def test_full_suite_passes():
    reports = ids.run_suite()
    assert {r.identity_name for r in reports} == set(ids.IDENTITY_NAMES)
    failed = [r.to_json() for r in reports if not r.passed]
    assert not failed
    for r in reports:
        if r.mode == ids.EXACT:
            assert r.discrepancy == 0 and r.tolerance == 0


def test_run_suite_filters():
    assert len(ids.run_suite(only=["calcul_gue"], n_max=30)) == 30
    with pytest.raises(DomainError):
        ids.run_suite(only=["nope"])


@pytest.mark.parametrize("call", [
    lambda: ids.check_calcul_gue(0),
    lambda: ids.check_hockey_stick(3, 3),
    lambda: ids.check_lue_integrals(16),
    lambda: ids.check_integral_mh(1, 0.0),
])
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()
