"""Unit-variance entry distributions for Wigner, i.i.d. and Wishart matrices."""

from dataclasses import dataclass, field
from functools import lru_cache
import math
import warnings

import numpy as np

from ..errors import DomainError, NumericalError

GAUSSIAN_REAL = "gaussian_real"
GAUSSIAN_COMPLEX = "gaussian_complex"
RADEMACHER = "rademacher"
SGG = "sgg"
HEAVY = "heavy"

KINDS = (GAUSSIAN_REAL, GAUSSIAN_COMPLEX, RADEMACHER, SGG, HEAVY)

SELF_TEST_SAMPLES = 10**6


def sgg_raw_variance(d, p):
    """Variance of the symmetric law with density ``p/(2 Gamma(d/p)) |x|^(d-1) exp(-|x|^p)``."""
    return math.exp(math.lgamma((d + 2) / p) - math.lgamma(d / p))


def heavy_raw_variance(alpha):
    """Variance of the symmetric law with density ``alpha/2 (1+|x|)^(-alpha-1)``."""
    return 2.0 / ((alpha - 1.0) * (alpha - 2.0))


@dataclass(frozen=True)
class EntryDistribution:
    """Centered entry law, rescaled to unit variance.

    Parameters
    ----------
    kind : str
        One of ``KINDS``.
    d, p : float
        Shape parameters of the symmetric generalized Gaussian (``kind="sgg"``).
    alpha : float
        Tail index of the heavy-tailed law (``kind="heavy"``), must exceed 2.
    self_test : bool
        Run the variance self-test at construction (cached per parameter set).
    """

    kind: str
    d: float | None = None
    p: float | None = None
    alpha: float | None = None
    self_test: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown entry distribution {self.kind!r}; expected one of {KINDS}")
        if self.kind == SGG:
            if self.d is None or self.p is None or not (self.d > 0 and self.p > 0):
                raise DomainError(f"SGG needs d > 0 and p > 0, got d={self.d}, p={self.p}")
        if self.kind == HEAVY:
            if self.alpha is None or not self.alpha > 2:
                raise DomainError(f"Heavy(alpha) needs alpha > 2 for a finite variance, got {self.alpha}")
            if self.alpha <= 4:
                warnings.warn(f"Heavy({self.alpha:g}) has infinite fourth moment; "
                              "convergence to the limit law is slow", RuntimeWarning, stacklevel=3)
        if self.self_test:
            _variance_self_test(self.kind, self.d, self.p, self.alpha)

    @property
    def is_complex(self):
        return self.kind == GAUSSIAN_COMPLEX

    @property
    def normalization(self):
        """Scale applied to raw draws so that the variance is one."""
        if self.kind == SGG:
            return 1.0 / math.sqrt(sgg_raw_variance(self.d, self.p))
        if self.kind == HEAVY:
            return 1.0 / math.sqrt(heavy_raw_variance(self.alpha))
        return 1.0

    @property
    def label(self):
        if self.kind == SGG:
            return f"SGG({self.d:g},{self.p:g})"
        if self.kind == HEAVY:
            return f"Heavy({self.alpha:g})"
        return {GAUSSIAN_REAL: "GaussianReal", GAUSSIAN_COMPLEX: "GaussianComplex",
                RADEMACHER: "Rademacher"}[self.kind]

    def sample(self, rng, size=None):
        """Normalized draws with the given shape."""
        k = self.kind
        if k == GAUSSIAN_REAL:
            return rng.standard_normal(size)
        if k == GAUSSIAN_COMPLEX:
            z = rng.standard_normal(size) + 1j * rng.standard_normal(size)
            return z * math.sqrt(0.5)
        sign = np.where(rng.random(size) < 0.5, -1.0, 1.0)
        if k == RADEMACHER:
            return sign
        if k == SGG:
            mag = rng.gamma(self.d / self.p, 1.0, size) ** (1.0 / self.p)
        else:
            # 1 + |X| = U^(-1/alpha); 1 - random() lies in (0, 1]
            mag = (1.0 - rng.random(size)) ** (-1.0 / self.alpha) - 1.0
        return sign * mag * self.normalization


def sample_entry(dist, rng):
    """One normalized draw from ``dist``."""
    return dist.sample(rng)


@lru_cache(maxsize=None)
def _variance_self_test(kind, d, p, alpha):
    dist = EntryDistribution(kind, d, p, alpha, self_test=False)
    if kind == HEAVY and alpha <= 4:
        # the sample variance has no standard error without a fourth moment
        return
    rng = np.random.default_rng(0x5EED)
    x = np.abs(dist.sample(rng, SELF_TEST_SAMPLES)) ** 2
    mean = x.mean()
    se = x.std(ddof=1) / math.sqrt(x.size)
    if abs(mean - 1.0) > 3.0 * se:
        raise NumericalError(f"{dist.label}: sample variance {mean:.6f} is not 1 within 3 SE ({se:.2e})")
