import math

from hypothesis import given, strategies as st
import numpy as np
import pytest

from rmtenergy import closedform as cf
from rmtenergy.errors import DomainError
from rmtenergy.specfun import EULER_GAMMA, central_binom_ratios

LOG2 = math.log(2)


def test_gue_n1():
    e = cf.gue_energy(1)
    assert e.raw_energy == pytest.approx(EULER_GAMMA / 2, abs=1e-15)
    assert e.penalized == pytest.approx(0.788608, abs=1e-6)
    assert e.penalty_term() == 0.5


def test_gue_n2():
    assert cf.gue_energy(2).penalized == pytest.approx(0.75 + (LOG2 + EULER_GAMMA - 1.25) / 2, abs=1e-15)


@pytest.mark.parametrize("bad", [0, -3, 2.5])
def test_rejects_bad_dimension(bad):
    with pytest.raises(DomainError):
        cf.gue_energy(bad)


def test_ginibre_tail_n1_against_partial_sums():
    # sum_{k>=2} 4^-k C(2k,k)/(k(k-1)) = 1 - log 2; partial sums to 1e6 terms leave a tail < 2e-9
    t = cf.ginibre_tail(1, tol=1e-12)
    assert t.value == pytest.approx((1 - LOG2) / 2, abs=1e-12)
    assert t.error_bound <= 1e-12
    k = np.arange(2, 10**6 + 1, dtype=float)
    c = central_binom_ratios(10**6)[2:]
    partial = 0.5 * math.fsum(c / (k * (k - 1)))
    assert partial < t.value < partial + 2e-9


def test_ginibre_tails_vector_matches_scalar():
    arr, err = cf.ginibre_tails(40)
    assert err < 1e-12
    for n in (1, 2, 7, 40):
        assert arr[n - 1] == pytest.approx(cf.ginibre_tail(n).value, abs=1e-13)


def test_ginibre_energy_values():
    e1 = cf.ginibre_energy(1)
    assert e1.raw_energy == pytest.approx((EULER_GAMMA - LOG2) / 2, abs=1e-12)
    assert e1.penalized == pytest.approx(1 + EULER_GAMMA / 2 - LOG2 / 2, abs=1e-12)
    assert cf.ginibre_energy(2).moment == pytest.approx(0.75)
    assert e1.penalty_lambda == 0.5


def test_lue_energy_values():
    e = cf.lue_energy(1)
    assert e.raw_energy == pytest.approx(EULER_GAMMA, abs=1e-15)
    assert e.penalized == pytest.approx(1 + EULER_GAMMA, abs=1e-15)
    assert e.penalty_lambda == cf.LINEAR and e.penalty_term() == 1.0


@given(st.integers(1, 10**6))
def test_lue_is_twice_gue(n):
    assert cf.lue_energy(n).raw_energy == 2 * cf.gue_energy(n).raw_energy
    assert cf.lue_energy(n).penalized == 2 * cf.gue_energy(n).penalized


@pytest.mark.parametrize("n", range(1, 1001, 37))
def test_gue_first_difference(n):
    d = 2 * (cf.gue_energy(n + 1).raw_energy - cf.gue_energy(n).raw_energy)
    assert d == pytest.approx(math.log(n + 1) - math.log(n) - (1 + 2 * n) / (2 * n * (n + 1)), abs=1e-14)


def test_ginibre_tail_convex():
    b, _ = cf.ginibre_tails(501)
    second = b[2:] - 2 * b[1:-1] + b[:-2]  # centred at n = 2..500
    assert np.all(second > 0)


def test_limits():
    lim = cf.limit_energies()
    assert lim == {"semicircle": 0.75, "circular": 0.75, "marchenko_pastur": 1.5}
    assert cf.gue_energy(10**6).penalized == pytest.approx(0.75, abs=1e-6)
    assert cf.ginibre_energy(10**6).penalized == pytest.approx(0.75, abs=1e-6)
    assert cf.lue_energy(10**6).penalized == pytest.approx(1.5, abs=1e-6)


@pytest.mark.parametrize("which", ["gue", "ginibre", "lue"])
def test_penalized_sequence_matches_scalar(which):
    seq = cf.penalized_sequence(which, 50)
    f = cf.ENERGY_FUNCTIONS[which]
    assert np.allclose(seq, [f(n).penalized for n in range(1, 51)], rtol=0, atol=1e-13)


@pytest.mark.parametrize("which", ["gue", "ginibre", "lue"])
def test_monotonicity_report_no_violations(which):
    rep = cf.monotonicity_report(200, which)
    assert len(rep) == 200
    assert cf.count_violations(rep) == 0


def test_monotonicity_report_validation():
    with pytest.raises(DomainError):
        cf.monotonicity_report(2)
    with pytest.raises(DomainError):
        cf.penalized_sequence("goe", 5)
