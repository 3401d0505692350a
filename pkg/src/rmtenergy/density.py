"""Mean empirical spectral densities of the classical ensembles at finite n.

Each ensemble comes in two algebraically distinct forms (squared orthogonal
polynomial sums, and the reduced linear combinations of Feldheim/Howell
type) so that one can check the other.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import math
from typing import Callable

import numpy as np
from scipy import integrate, special

from .errors import DomainError, QuadratureError
from .specfun import binom_general, hermite_square_sum, laguerre_square_sum

TAIL_CUTOFF = 1e-16


@dataclass(frozen=True)
class Density1D:
    """Probability density on the real line.

    ``support`` is the interval outside of which the density is zero or
    below ``TAIL_CUTOFF`` times its peak.
    """

    evaluator: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    support: tuple[float, float]
    label: str

    def __call__(self, x):
        return self.evaluator(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class RadialDensity2D:
    """Rotation-invariant planar density ``z -> profile(|z|)``."""

    radial_profile: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    cutoff: float
    label: str

    def __call__(self, r):
        return self.radial_profile(np.asarray(r, dtype=float))


def _check_n(n):
    if int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")


def _scan_cutoff(f, start, step, peak):
    x = start
    while f(np.array([x]))[0] > TAIL_CUTOFF * peak:
        x += step
    return x


def dilate(density, c):
    """Law of ``c X`` when ``X`` has the given density (``c > 0``)."""
    if c <= 0:
        raise DomainError(f"dilation factor must be positive, got {c}")
    if isinstance(density, RadialDensity2D):
        prof = density.radial_profile
        return RadialDensity2D(lambda r: prof(r / c) / (c * c), density.cutoff * c,
                               f"dil[{c:g}] {density.label}")
    f = density.evaluator
    lo, hi = density.support
    return Density1D(lambda x: f(x / c) / c, (lo * c, hi * c), f"dil[{c:g}] {density.label}")


# --- GUE ---------------------------------------------------------------------

def _gue_unscaled_support(n, f):
    start = math.sqrt(2 * n + 1)
    peak = float(np.max(f(np.linspace(0.0, start, 200))))
    x = _scan_cutoff(f, start, 0.25, peak)
    return -x, x


def gue_density(n, scaled=True):
    """Mean spectral density of GUE.

    Unscaled: ``exp(-x^2)/(n sqrt(pi)) sum_{k<n} h_k(x)^2/(2^k k!)``, evaluated
    through normalized Hermite functions. Scaled: the ``sqrt(n/2)`` dilation,
    i.e. the mean spectral law of the normalized GUE (second moment 1).
    """
    _check_n(n)

    def f(x):
        return hermite_square_sum(n, x) / n

    lo, hi = _gue_unscaled_support(n, f)
    if not scaled:
        return Density1D(f, (lo, hi), f"GUE n={n} unscaled")
    c = math.sqrt(n / 2.0)
    return Density1D(lambda x: c * f(c * x), (lo / c, hi / c), f"GUE n={n}")


@lru_cache(maxsize=None)
def feldheim_coefficients(n):
    """Exact ``C(n, k+1) / (2^k k!)`` for ``k < n``."""
    return tuple(Fraction(math.comb(n, k + 1), 2**k * math.factorial(k)) for k in range(n))


def gue_density_feldheim(n):
    """Unscaled GUE density as a combination of even Hermite polynomials."""
    _check_n(n)
    coef = [float(c) for c in feldheim_coefficients(n)]

    def f(x):
        x = np.asarray(x, dtype=float)
        # h_{2k} from the three-term recurrence, keeping every other degree
        prev, cur = np.zeros_like(x), np.ones_like(x)
        acc = coef[0] * cur
        for j in range(1, 2 * n - 1):
            prev, cur = cur, 2 * x * cur - 2 * (j - 1) * prev
            if j % 2 == 0:
                acc = acc + coef[j // 2] * cur
        return np.exp(-x * x) * acc / (n * math.sqrt(math.pi))

    lo, hi = _gue_unscaled_support(n, lambda x: hermite_square_sum(n, x) / n)
    return Density1D(f, (lo, hi), f"GUE n={n} unscaled (Feldheim)")


# --- Ginibre -----------------------------------------------------------------

def _ginibre_profile(n):
    log_fact = [math.lgamma(k + 1) for k in range(n)]

    def prof(r):
        r = np.asarray(r, dtype=float)
        x = r * r
        with np.errstate(divide="ignore"):
            logx = np.log(x)
        acc = np.exp(-x)
        for k in range(1, n):
            # exp(k log x - x - log k!) stays finite where x^k / k! alone would overflow
            acc = acc + np.exp(np.where(x > 0, k * logx - x - log_fact[k], -np.inf))
        return acc / (n * math.pi)

    return prof


def ginibre_density(n, scaled=True):
    """Radial profile of the mean spectral density of complex Ginibre.

    Unscaled: ``exp(-|z|^2)/(n pi) sum_{k<n} |z|^(2k)/k!``. Scaled: the
    planar dilation ``n * profile(sqrt(n) |z|)``, the mean spectral law of
    the normalized ensemble.
    """
    _check_n(n)
    prof = _ginibre_profile(n)
    cut = _scan_cutoff(prof, math.sqrt(n), 0.25, 1.0 / (n * math.pi))
    if not scaled:
        return RadialDensity2D(prof, cut, f"Ginibre n={n} unscaled")
    c = math.sqrt(n)
    return RadialDensity2D(lambda r: n * prof(c * r), cut / c, f"Ginibre n={n}")


def ginibre_profile_gamma_form(n):
    """Cross-check form ``Gamma(n, r^2) / ((n-1)! n pi)`` of the unscaled profile."""
    _check_n(n)
    return lambda r: special.gammaincc(n, np.asarray(r, dtype=float) ** 2) / (n * math.pi)


# --- LUE ---------------------------------------------------------------------

def _lue_unscaled_support(n, f):
    start = 4.0 * n + 2.0
    peak = float(np.max(f(np.linspace(0.0, start, 400))))
    return 0.0, _scan_cutoff(f, start, 1.0, peak)


def lue_density(n, scaled=True):
    """Mean spectral density of square LUE on ``[0, inf)``.

    Unscaled: ``exp(-s)/n sum_{k<n} L_k(s)^2``. Scaled: ``n * f(n s)``, the
    mean spectral law of the normalized ensemble (first moment 1).
    """
    _check_n(n)

    def f(s):
        s = np.asarray(s, dtype=float)
        return np.where(s >= 0, laguerre_square_sum(n, np.maximum(s, 0.0)) / n, 0.0)

    lo, hi = _lue_unscaled_support(n, f)
    if not scaled:
        return Density1D(f, (lo, hi), f"LUE n={n} unscaled")
    return Density1D(lambda s: n * f(n * s), (lo / n, hi / n), f"LUE n={n}")


@lru_cache(maxsize=None)
def howell_coefficients(n):
    """Exact ``p_k = 2 (-1)^(n-k) C(n-1, k) C(k - 1/2, n)`` for ``k < n``."""
    return tuple(
        2 * (-1) ** (n - k) * math.comb(n - 1, k) * binom_general(Fraction(2 * k - 1, 2), n)
        for k in range(n)
    )


def lue_density_howell(n):
    """Unscaled LUE density as ``exp(-s) sum_k p_k L_{2k}(2s)``."""
    _check_n(n)
    coef = [float(p) for p in howell_coefficients(n)]

    def f(s):
        s = np.asarray(s, dtype=float)
        y = 2.0 * np.maximum(s, 0.0)
        prev, cur = np.zeros_like(y), np.ones_like(y)
        acc = coef[0] * cur
        for j in range(2 * n - 2):
            prev, cur = cur, ((2 * j + 1 - y) * cur - j * prev) / (j + 1)
            if (j + 1) % 2 == 0:
                acc = acc + coef[(j + 1) // 2] * cur
        return np.where(s >= 0, np.exp(-s) * acc, 0.0)

    lo, hi = _lue_unscaled_support(n, lambda s: laguerre_square_sum(n, s) / n)
    return Density1D(f, (lo, hi), f"LUE n={n} unscaled (Howell)")


# --- reference laws ------------------------------------------------------------

def semicircle_density():
    return Density1D(lambda x: np.sqrt(np.maximum(4.0 - x * x, 0.0)) / (2 * math.pi),
                     (-2.0, 2.0), "semicircle")


def uniform_density(a=0.0, b=1.0):
    return Density1D(lambda x: np.where((x >= a) & (x <= b), 1.0 / (b - a), 0.0),
                     (a, b), f"uniform[{a:g},{b:g}]")


def standard_normal_density():
    cut = math.sqrt(2 * math.log(1e16))
    return Density1D(lambda x: np.exp(-0.5 * x * x) / math.sqrt(2 * math.pi),
                     (-cut, cut), "N(0,1)")


def exponential_density():
    return Density1D(lambda x: np.where(x >= 0, np.exp(-np.maximum(x, 0.0)), 0.0),
                     (0.0, math.log(1e16)), "Exp(1)")


def unit_disk_density():
    return RadialDensity2D(lambda r: np.where(r <= 1.0, 1.0 / math.pi, 0.0), 1.0, "unit disk")


# --- moments -------------------------------------------------------------------

def moment(density, p, tol=1e-9):
    """``p``-th absolute moment by adaptive quadrature over the support."""
    if p not in (1, 2):
        raise DomainError(f"only p in {{1, 2}} is supported, got {p}")
    if isinstance(density, RadialDensity2D):
        def g(r):
            return 2 * math.pi * r ** (p + 1) * density(np.array([r]))[0]
        lo, hi = 0.0, density.cutoff
        points = None
    else:
        def g(x):
            return abs(x) ** p * density(np.array([x]))[0]
        lo, hi = density.support
        points = [0.0] if lo < 0 < hi else None
    val, err = integrate.quad(g, lo, hi, points=points, epsabs=tol * 1e-2, epsrel=1e-12, limit=400)
    if not err <= tol:
        raise QuadratureError(f"moment of {density.label} did not converge", val, err)
    return val
