"""Matrix ensembles, per-replica seeding and spectrum sampling."""

from dataclasses import dataclass
import math

import numpy as np

from ..errors import DomainError
from .eigen import eig_complex, eig_hermitian, eig_tridiagonal
from .entries import EntryDistribution

GUE_EXACT = "GUE_exact"
GINIBRE_EXACT = "Ginibre_exact"
LUE_EXACT = "LUE_exact"
BETA_HERMITE = "BetaHermite"
WIGNER = "Wigner"
IID = "IID"
WISHART = "Wishart"

MODELS = (GUE_EXACT, GINIBRE_EXACT, LUE_EXACT, BETA_HERMITE, WIGNER, IID, WISHART)
_NEEDS_DIST = (WIGNER, IID, WISHART)

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class EnsembleSpec:
    """Random matrix model and dimension.

    ``dist`` is required for Wigner, IID and Wishart models; ``beta`` for
    the beta-Hermite tridiagonal model.
    """

    model: str
    n: int
    dist: EntryDistribution | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise DomainError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")
        if self.model in _NEEDS_DIST and self.dist is None:
            raise DomainError(f"{self.model} needs an entry distribution")
        if self.model == BETA_HERMITE and (self.beta is None or not self.beta > 0):
            raise DomainError(f"BetaHermite needs beta > 0, got {self.beta}")

    @property
    def hermitian(self):
        return self.model not in (GINIBRE_EXACT, IID)

    @property
    def penalty(self):
        """Quadratic penalty parameter ``lambda`` or ``"linear"``."""
        if self.model in (LUE_EXACT, WISHART):
            return "linear"
        if self.model in (GINIBRE_EXACT, IID):
            return 0.5
        return 1.0

    @property
    def label(self):
        if self.dist is not None:
            return f"{self.model}({self.dist.label})"
        if self.model == BETA_HERMITE:
            return f"{self.model}({self.beta:g})"
        return self.model

    def with_n(self, n):
        return EnsembleSpec(self.model, n, self.dist, self.beta)


def splitmix64(x):
    """SplitMix64 finalizer applied elementwise to unsigned 64-bit integers."""
    z = np.asarray(x, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def replica_seeds(master_seed, count, start=0):
    """Seeds of replicas ``start, ..., start+count-1`` derived from ``master_seed``."""
    base = np.uint64(int(master_seed) & _MASK64)
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return splitmix64(base + idx * _GOLDEN)


def replica_rng(seed):
    return np.random.Generator(np.random.PCG64(int(seed)))


def _complex_gaussian(rng, shape, var):
    # real and imaginary parts each with variance var/2
    s = math.sqrt(var / 2.0)
    return s * rng.standard_normal(shape) + 1j * s * rng.standard_normal(shape)


def _hermitian_from_upper(upper, diag):
    n = diag.size
    a = np.zeros((n, n), dtype=complex if np.iscomplexobj(upper) else float)
    iu = np.triu_indices(n, 1)
    a[iu] = upper
    a = a + a.conj().T
    a[np.diag_indices(n)] = diag
    return a


def sample_beta_hermite(n, beta, rng):
    """Normalized tridiagonal data of the beta-Hermite model.

    ``a_i ~ N(0, 2)`` and ``b_i ~ chi((n - i) beta)`` for ``i = 1..n-1``,
    all divided by ``sqrt(2 + beta (n - 1))``. A chi variable with ``k``
    degrees of freedom is drawn as ``sqrt(2 Gamma(k/2, 1))``.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    norm = math.sqrt(2.0 + beta * (n - 1))
    diag = math.sqrt(2.0) * rng.standard_normal(n)
    dof = beta * np.arange(n - 1, 0, -1, dtype=float)
    off = np.sqrt(2.0 * rng.gamma(dof / 2.0, 1.0))
    return diag / norm, off / norm


def sample_matrix(spec, rng):
    """One normalized matrix of the ensemble.

    Wigner and IID draws are already divided by ``sqrt(n)``; Wishart returns
    ``X X^* / n``. The beta-Hermite model is returned as a dense tridiagonal
    matrix.
    """
    n = spec.n
    m = spec.model
    if m == GUE_EXACT:
        return _hermitian_from_upper(_complex_gaussian(rng, n * (n - 1) // 2, 1.0 / n),
                                     rng.standard_normal(n) / math.sqrt(n))
    if m == GINIBRE_EXACT:
        return _complex_gaussian(rng, (n, n), 1.0 / n)
    if m == LUE_EXACT:
        g = _complex_gaussian(rng, (n, n), 1.0 / n)
        return g @ g.conj().T
    if m == BETA_HERMITE:
        d, e = sample_beta_hermite(n, spec.beta, rng)
        return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    dist = spec.dist
    if m == WIGNER:
        upper = dist.sample(rng, n * (n - 1) // 2)
        if dist.is_complex:
            diag = rng.standard_normal(n)  # Hermitian diagonal is real
        else:
            diag = dist.sample(rng, n)
        return _hermitian_from_upper(upper, diag) / math.sqrt(n)
    x = dist.sample(rng, (n, n))
    if m == IID:
        return x / math.sqrt(n)
    return x @ x.conj().T / n


def sample_spectrum(spec, rng):
    """Eigenvalues of one draw: sorted reals for Hermitian models, complex otherwise."""
    if spec.model == BETA_HERMITE:
        return eig_tridiagonal(*sample_beta_hermite(spec.n, spec.beta, rng))
    a = sample_matrix(spec, rng)
    if spec.hermitian:
        return eig_hermitian(a, check=False)
    return eig_complex(a)
