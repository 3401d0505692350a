"""Closed-form penalized logarithmic energies of the classical ensembles at finite n.

Normalizations: GUE with density proportional to ``exp(-n/2 tr A^2)``
(``m2 = 1``), Ginibre with ``exp(-n tr A A*)`` (``m2 = 1/2 + 1/(2n)``),
and ``LUE = G G*`` for a Ginibre ``G`` (``m1 = 1``).
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy import special

from ._quad import gauss_legendre
from .errors import DomainError
from .specfun import EULER_GAMMA, central_binom_ratios, harmonic_float, harmonic_floats

LINEAR = "linear"

DEFAULT_TAIL_TOL = 1e-13


@dataclass(frozen=True)
class EnergyBreakdown:
    """Raw logarithmic energy, the penalized moment and the penalized total.

    ``penalty_lambda`` is a positive float for the quadratic penalty
    ``m2 / (2 lambda)`` or the string ``"linear"`` for the ``m1`` penalty.
    """

    raw_energy: float
    moment: float
    penalty_lambda: float | str
    penalized: float

    def penalty_term(self):
        if self.penalty_lambda == LINEAR:
            return self.moment
        return self.moment / (2.0 * self.penalty_lambda)


@dataclass(frozen=True)
class TailValue:
    """Value of a truncated series together with a bound on its error."""

    value: float
    error_bound: float
    terms: int

    def __float__(self):
        return self.value


def _check_n(n):
    if int(n) != n or n < 1:
        raise DomainError(f"matrix dimension must be an integer >= 1, got {n!r}")


def _gue_core(n, h_n):
    # log n + gamma + 1/(2n) - H_n, which is ~ 1/(12 n^2)
    return math.log(n) + EULER_GAMMA + 0.5 / n - h_n


def gue_energy(n):
    """Penalized energy ``E_1^(2)`` of the mean spectral law of normalized GUE."""
    _check_n(n)
    raw = 0.25 + 0.5 * _gue_core(n, harmonic_float(n))
    return EnergyBreakdown(raw_energy=raw, moment=1.0, penalty_lambda=1.0, penalized=raw + 0.5)


# --- Ginibre tail b_n = 1/2 sum_{k>n} 4^-k C(2k,k) / (k(k-1)) ---------------

def _tail_term(x):
    # smooth interpolation of the summand in k, decreasing for x >= 2
    # Gamma(x+1/2)/Gamma(x+1); poch stays accurate where gammaln differences do not
    r = 1.0 / (special.poch(x + 0.5, 0.5) * math.sqrt(math.pi))
    return r / (x * (x - 1.0))


def _tail_cutoff(n, tol):
    # summand <= 1/(sqrt(pi K) K (K-1)); the integral-test sandwich has width <= summand(K)
    k = max(n + 1, 2)
    while 1.0 / (math.sqrt(math.pi * k) * k * (k - 1)) >= tol:
        k = int(k * 1.25) + 1
    return k


def _gl_integral(f, a, b, q):
    x, w = gauss_legendre(q)
    half = 0.5 * (b - a)
    return half * math.fsum(w * f(0.5 * (a + b) + half * x))


def _upper_tail_integral(k, q):
    # int_k^inf t(x) dx with x = k / u^2; the transformed integrand ~ u^2 is smooth on [0, 1]
    def g(u):
        return _tail_term(k / (u * u)) * 2.0 * k / u**3
    return _gl_integral(g, 0.0, 1.0, q)


def _series_remainder(k):
    """Bracket ``sum_{j>k} t_j`` between ``int_{k+1}^inf t`` and ``int_k^inf t``.

    Returns the bracket midpoint and its half-width plus quadrature error.
    """
    lower = _upper_tail_integral(k + 1, 64)
    strip = _gl_integral(_tail_term, k, k + 1, 32)
    quad_err = abs(lower - _upper_tail_integral(k + 1, 48)) + abs(strip - _gl_integral(_tail_term, k, k + 1, 24))
    return lower + 0.5 * strip, 0.5 * strip + quad_err


def ginibre_tails(n_max, tol=DEFAULT_TAIL_TOL):
    """Array of ``b_1, ..., b_{n_max}`` and a common error bound.

    The infinite series is summed explicitly up to a cutoff chosen from the
    majorant ``4^-k C(2k,k) <= 1/sqrt(pi k)``; the remainder is bracketed by
    the integral test and replaced by the bracket midpoint.
    """
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    _check_n(n_max)
    cut = _tail_cutoff(n_max, 2.0 * tol)
    ratios = central_binom_ratios(cut)
    k = np.arange(2, cut + 1, dtype=float)
    terms = np.zeros(cut + 1)
    terms[2:] = ratios[2:] / (k * (k - 1.0))
    rem, err = _series_remainder(cut)
    b = np.empty(n_max)
    acc = math.fsum(terms[n_max + 1:])
    b[n_max - 1] = acc
    for m in range(n_max - 1, 0, -1):
        acc += terms[m + 1]
        b[m - 1] = acc
    return 0.5 * (b + rem), 0.5 * err


def ginibre_tail(n, tol=DEFAULT_TAIL_TOL):
    """``b_n`` with a certified error bound below ``tol``.

    Returns a :class:`TailValue` (``float(result)`` gives the value).
    """
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    _check_n(n)
    cut = _tail_cutoff(n, 2.0 * tol)
    ratios = central_binom_ratios(cut)
    k = np.arange(n + 1, cut + 1, dtype=float)
    k = k[k >= 2]
    partial = math.fsum(ratios[k.astype(int)] / (k * (k - 1.0)))
    rem, err = _series_remainder(cut)
    return TailValue(value=0.5 * (partial + rem), error_bound=0.5 * err, terms=len(k))


def ginibre_energy(n):
    """Penalized energy ``E_{1/2}^(2)`` of the mean spectral law of normalized Ginibre."""
    _check_n(n)
    pen = gue_energy(n).penalized + ginibre_tail(n).value
    m2 = 0.5 + 0.5 / n
    # penalty m2/(2 * 1/2) = m2
    return EnergyBreakdown(raw_energy=pen - m2, moment=m2, penalty_lambda=0.5, penalized=pen)


def lue_energy(n):
    """Linearly penalized energy ``E^(1)`` of the mean spectral law of square LUE.

    The raw energy is exactly twice the GUE raw energy.
    """
    gue = gue_energy(n)
    return EnergyBreakdown(
        raw_energy=2.0 * gue.raw_energy, moment=1.0, penalty_lambda=LINEAR,
        penalized=2.0 * gue.penalized,
    )


def limit_energies():
    """Penalized energies of the limiting laws, keyed by name."""
    return {"semicircle": 0.75, "circular": 0.75, "marchenko_pastur": 1.5}


ENERGY_FUNCTIONS = {"gue": gue_energy, "ginibre": ginibre_energy, "lue": lue_energy}


@dataclass(frozen=True)
class MonotonicityRow:
    n: int
    penalized: float
    first_difference: float
    second_difference: float
    decreasing: bool
    convex: bool


def penalized_sequence(which, n_max):
    """Penalized closed-form energies for ``n = 1, ..., n_max`` as an array."""
    if which not in ENERGY_FUNCTIONS:
        raise DomainError(f"unknown ensemble {which!r}; expected one of {sorted(ENERGY_FUNCTIONS)}")
    _check_n(n_max)
    n = np.arange(1, n_max + 1)
    h = harmonic_floats(n_max)
    gue = 0.75 + 0.5 * (np.log(n) + EULER_GAMMA + 0.5 / n - h)
    if which == "gue":
        return gue
    if which == "lue":
        return 2.0 * gue
    b, _ = ginibre_tails(n_max)
    return gue + b


def monotonicity_report(n_max, which="gue"):
    """Forward differences of the penalized sequence and violation flags.

    Row ``n`` carries ``P(n+1) - P(n)`` and ``P(n+2) - 2 P(n+1) + P(n)``;
    ``decreasing``/``convex`` flag strict inequality of those.
    """
    if n_max < 3:
        raise DomainError(f"n_max must be >= 3, got {n_max}")
    p = penalized_sequence(which, n_max + 2)
    d1 = np.diff(p)
    d2 = np.diff(d1)
    return [
        MonotonicityRow(n=i + 1, penalized=float(p[i]), first_difference=float(d1[i]),
                        second_difference=float(d2[i]), decreasing=bool(d1[i] < 0),
                        convex=bool(d2[i] > 0))
        for i in range(n_max)
    ]


def count_violations(report):
    return sum((not r.decreasing) + (not r.convex) for r in report)
