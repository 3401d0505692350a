"""Logarithmic energy of mean spectral distributions of classical random matrix ensembles.

Closed forms live in :mod:`closedform`. Quadrature over exact level densities
(:mod:`density`, :mod:`logenergy`) and Monte Carlo over sampled matrices
(:mod:`rmt_mc`) provide independent cross-checks.
"""

from .closedform import EnergyBreakdown, ginibre_energy, ginibre_tail, gue_energy, lue_energy
from .errors import DomainError, EstimationError, NumericalError, QuadratureError

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "EnergyBreakdown",
    "EstimationError",
    "NumericalError",
    "QuadratureError",
    "ginibre_energy",
    "ginibre_tail",
    "gue_energy",
    "lue_energy",
]
