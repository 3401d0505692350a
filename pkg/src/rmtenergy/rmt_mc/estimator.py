"""Cross-replica Monte Carlo estimates of the energy of the mean spectral law.

Eigenvalues from two independent replicas ``A`` and ``B`` give an unbiased
estimate of ``iint -log|x - y|`` under the mean law:

    -(1/n^2) sum_{i,j} log|lambda_i(A) - lambda_j(B)|.

Replicas are split into independent blocks of ``block_size`` replicas; each
block averages the statistic over all of its cross-replica pairs, and the
standard error is taken over blocks. ``block_size=2`` is the plain
disjoint-pair estimator.
"""

from concurrent.futures import ProcessPoolExecutor
import csv
from dataclasses import dataclass
import math
import os
from typing import NamedTuple

import numpy as np

from ..errors import DomainError, EstimationError
from .samplers import EnsembleSpec, replica_rng, replica_seeds, sample_spectrum

DEFAULT_COLLISION_EPS = 1e-12
DEFAULT_BLOCK_SIZE = 40
THREADS_ENV = "LOGENERGY_THREADS"


@dataclass(frozen=True)
class SpectrumBatch:
    """Spectra of ``replica_count`` independent draws.

    ``spectra`` has shape ``(replica_count, n)``; real and sorted for
    Hermitian models, complex otherwise.
    """

    spec: EnsembleSpec
    master_seed: int
    spectra: np.ndarray

    @property
    def replica_count(self):
        return self.spectra.shape[0]

    @property
    def n(self):
        return self.spectra.shape[1]

    def seeds(self):
        return replica_seeds(self.master_seed, self.replica_count)

    def to_csv(self, path):
        """Write long-format rows ``replica_index,eigenvalue_index,re,im``."""
        z = self.spectra.astype(complex)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["replica_index", "eigenvalue_index", "re", "im"])
            for r in range(z.shape[0]):
                for i in range(z.shape[1]):
                    w.writerow([r, i, repr(float(z[r, i].real)), repr(float(z[r, i].imag))])

    @staticmethod
    def read_csv(path, spec, master_seed):
        rows = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        r = rows[:, 0].astype(int)
        i = rows[:, 1].astype(int)
        z = np.zeros((r.max() + 1, i.max() + 1), dtype=complex)
        z[r, i] = rows[:, 2] + 1j * rows[:, 3]
        return SpectrumBatch(spec, master_seed, z.real.copy() if spec.hermitian else z)

    def to_npz(self, path):
        np.savez(path, spectra=self.spectra, master_seed=np.uint64(self.master_seed & ((1 << 64) - 1)))

    @staticmethod
    def read_npz(path, spec):
        with np.load(path) as data:
            return SpectrumBatch(spec, int(data["master_seed"]), data["spectra"])


@dataclass(frozen=True)
class EstimateWithError:
    value: float
    std_error: float
    replica_pairs_used: int
    rejected_pairs: int


class MeanEnergyEstimate(NamedTuple):
    raw: EstimateWithError
    moment: EstimateWithError
    penalized: EstimateWithError


def _spectra_chunk(spec, seeds):
    dtype = float if spec.hermitian else complex
    out = np.empty((len(seeds), spec.n), dtype=dtype)
    for k, s in enumerate(seeds):
        out[k] = sample_spectrum(spec, replica_rng(s))
    return out


def default_workers():
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError as exc:
            raise DomainError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
    return 1


def simulate(spec, replicas, master_seed, workers=None):
    """Sample ``replicas`` spectra; the result does not depend on ``workers``."""
    if replicas < 1:
        raise DomainError(f"replicas must be positive, got {replicas}")
    seeds = replica_seeds(master_seed, replicas)
    workers = default_workers() if workers is None else max(1, int(workers))
    if workers == 1 or replicas < 2 * workers:
        spectra = _spectra_chunk(spec, seeds)
    else:
        chunks = np.array_split(seeds, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_spectra_chunk, [spec] * len(chunks), chunks))
        spectra = np.concatenate(parts)
    return SpectrumBatch(spec, int(master_seed), spectra)


def effective_block_size(replicas, block_size):
    """Largest divisor of ``replicas`` that is at least 2 and at most ``block_size``."""
    if block_size < 2:
        raise DomainError(f"block_size must be >= 2, got {block_size}")
    for b in range(min(block_size, replicas), 1, -1):
        if replicas % b == 0:
            return b
    raise DomainError(f"replicas must be >= 2, got {replicas}")


def _moment_per_replica(spectra, penalty):
    if penalty == "linear":
        return np.mean(spectra.real, axis=1)
    return np.mean(np.abs(spectra) ** 2, axis=1)


def _penalized(raw, moment, penalty):
    return raw + (moment if penalty == "linear" else moment / (2.0 * penalty))


def _block_statistics(block, eps):
    # all cross pairs (a < b) of one block: mean statistic, pairs used, pairs rejected
    b, n = block.shape
    diff = np.abs(block[:, None, :, None] - block[None, :, None, :])
    with np.errstate(divide="ignore"):
        logs = np.log(diff)
    per_pair = -logs.sum(axis=(2, 3)) / (n * n)
    collided = (diff < eps).any(axis=(2, 3))
    iu = np.triu_indices(b, 1)
    ok = ~collided[iu]
    used = int(ok.sum())
    return (math.fsum(per_pair[iu][ok]) / used if used else math.nan), used, int((~ok).sum())


def _summary(values):
    values = np.asarray(values, dtype=float)
    mean = math.fsum(values) / values.size
    if values.size < 2:
        return mean, math.inf
    sd = math.sqrt(math.fsum((values - mean) ** 2) / (values.size - 1))
    return mean, sd / math.sqrt(values.size)


def estimate_from_batch(batch, collision_eps=DEFAULT_COLLISION_EPS, block_size=DEFAULT_BLOCK_SIZE):
    """Energy estimates with standard errors from a sampled batch.

    Blocks in which every pair collides are dropped; if nothing remains an
    :class:`EstimationError` is raised.
    """
    if not collision_eps > 0:
        raise DomainError(f"collision_eps must be positive, got {collision_eps}")
    r = batch.replica_count
    if r < 2 or r % 2:
        raise DomainError(f"replicas must be even and >= 2, got {r}")
    b = effective_block_size(r, block_size)
    penalty = batch.spec.penalty
    moments = _moment_per_replica(batch.spectra, penalty)
    raw_blocks, mom_blocks = [], []
    used = rejected = 0
    for start in range(0, r, b):
        value, u, rej = _block_statistics(batch.spectra[start:start + b], collision_eps)
        used += u
        rejected += rej
        if u:
            raw_blocks.append(value)
            mom_blocks.append(math.fsum(moments[start:start + b]) / b)
    if not raw_blocks:
        raise EstimationError(f"all {rejected} replica pairs collided for {batch.spec.label} n={batch.n}")
    raw_blocks = np.array(raw_blocks)
    mom_blocks = np.array(mom_blocks)
    pen_blocks = _penalized(raw_blocks, mom_blocks, penalty)
    out = []
    for vals in (raw_blocks, mom_blocks, pen_blocks):
        mean, se = _summary(vals)
        out.append(EstimateWithError(mean, se, used, rejected))
    return MeanEnergyEstimate(*out)


def estimate_mean_energy(spec, replicas, master_seed, collision_eps=DEFAULT_COLLISION_EPS,
                         block_size=DEFAULT_BLOCK_SIZE, workers=None):
    """Estimate the penalized energy of the mean spectral law along with its parts.

    Parameters
    ----------
    spec : EnsembleSpec
    replicas : int
        Even number of independent draws.
    master_seed : int
        Seeds every replica through a SplitMix64 derivation.
    collision_eps : float
        Pairs with any eigenvalue gap below this are rejected and counted.
    block_size : int
        Replicas per independent block (reduced to a divisor of
        ``replicas``). ``2`` gives disjoint pairs.
    workers : int, optional
        Worker processes; defaults to ``$LOGENERGY_THREADS`` or 1.

    Returns
    -------
    MeanEnergyEstimate
        Named triple ``(raw, moment, penalized)``.
    """
    if replicas < 2 or replicas % 2:
        raise DomainError(f"replicas must be even and >= 2, got {replicas}")
    batch = simulate(spec, replicas, master_seed, workers)
    return estimate_from_batch(batch, collision_eps, block_size)


def within_replica_energy(batch):
    """Mean over replicas of ``-(1/n^2) sum_{i != j} log|lambda_i - lambda_j|`` (diagnostic only).

    This targets the mean of the random energies, not the energy of the
    mean law.
    """
    z = batch.spectra
    n = batch.n
    diff = np.abs(z[:, :, None] - z[:, None, :])
    iu = np.triu_indices(n, 1)
    with np.errstate(divide="ignore"):
        vals = -2.0 * np.log(diff[:, iu[0], iu[1]]).sum(axis=1) / (n * n)
    return _summary(vals)
