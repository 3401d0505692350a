"""Sampling of random matrices together with a cross-replica energy estimator."""

from .eigen import eig_complex, eig_hermitian, eig_tridiagonal
from .entries import EntryDistribution, sample_entry
from .estimator import (
    EstimateWithError,
    MeanEnergyEstimate,
    SpectrumBatch,
    estimate_from_batch,
    estimate_mean_energy,
    simulate,
    within_replica_energy,
)
from .samplers import EnsembleSpec, replica_seeds, sample_beta_hermite, sample_matrix, sample_spectrum

__all__ = [
    "EnsembleSpec",
    "EntryDistribution",
    "EstimateWithError",
    "MeanEnergyEstimate",
    "SpectrumBatch",
    "eig_complex",
    "eig_hermitian",
    "eig_tridiagonal",
    "estimate_from_batch",
    "estimate_mean_energy",
    "replica_seeds",
    "sample_beta_hermite",
    "sample_entry",
    "sample_matrix",
    "sample_spectrum",
    "simulate",
    "within_replica_energy",
]
