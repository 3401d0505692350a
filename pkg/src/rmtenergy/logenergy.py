"""Logarithmic energy of densities on the line and of radial densities in the plane.

The 1D route rewrites the double integral over ``x < y`` with ``u = y - x``:

    E = -2 int_0^L log(u) g(u) du,    g(u) = int f(x) f(x + u) dx,

so the diagonal singularity becomes an integrable ``log u`` at one end of a
one-dimensional integral. Panels are refined geometrically toward ``u = 0``
and the innermost piece ``[0, delta]`` is integrated analytically.
"""

from dataclasses import dataclass
import math

import numpy as np

from ._quad import cumulative_rule, graded_edges, panel_rule
from .density import Density1D, RadialDensity2D
from .errors import DomainError, QuadratureError
from .specfun import EULER_GAMMA

# geometric layers toward the ends of every inner x-interval (square-root edges)
_EDGE_GRADING = 12
# layers toward the far end u = L of the lag integral
_FAR_GRADING = 8
_MAX_DOUBLINGS = 3
_ROW_CHUNK = 128


@dataclass(frozen=True)
class QuadSpec:
    """Discretization controls shared by the energy routines.

    Attributes
    ----------
    panel_count : int
        Uniform panels per axis before refinement.
    nodes_per_panel : int
        Gauss-Legendre order on each panel.
    target_tol : float
        Requested absolute error.
    diagonal_refinement_depth : int
        Number of geometric layers toward the singular end (at most 30).
    """

    panel_count: int = 64
    nodes_per_panel: int = 16
    target_tol: float = 1e-7
    diagonal_refinement_depth: int = 20

    def __post_init__(self):
        if self.panel_count < 1 or self.nodes_per_panel < 1:
            raise DomainError("panel_count and nodes_per_panel must be positive")
        if not self.target_tol > 0:
            raise DomainError(f"target_tol must be positive, got {self.target_tol}")
        if not 0 <= self.diagonal_refinement_depth <= 30:
            raise DomainError("diagonal_refinement_depth must lie in [0, 30]")


DEFAULT_QUAD = QuadSpec()


def _as_1d(density):
    if not isinstance(density, Density1D):
        raise DomainError(f"expected a Density1D, got {type(density).__name__}")
    lo, hi = density.support
    if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
        raise DomainError(f"support must be a bounded interval, got {density.support}")
    return lo, hi


def _lag_mesh(length, panels, q, depth):
    # uniform panels on [0, L]; the first panel is replaced by geometric layers
    # [h/2^(k+1), h/2^k] that stop at delta = h/2^depth
    edges = graded_edges(0.0, length, panels, depth, _FAR_GRADING)
    delta = edges[1]
    nodes, weights = panel_rule(edges[1:], q)
    return nodes, weights, delta


def _autocorrelation(f, lo, hi, u, panels, q):
    """``g(u) = int_lo^{hi-u} f(x) f(x+u) dx`` for each lag ``u``."""
    t, wt = panel_rule(graded_edges(0.0, 1.0, panels, _EDGE_GRADING, _EDGE_GRADING), q)
    out = np.empty_like(u)
    for start in range(0, len(u), _ROW_CHUNK):
        uu = u[start:start + _ROW_CHUNK, None]
        span = (hi - lo) - uu
        x = lo + span * t[None, :]
        out[start:start + _ROW_CHUNK] = span[:, 0] * ((f(x) * f(x + uu)) @ wt)
    return out


def _energy_1d_once(density, lo, hi, panels, quad):
    length = hi - lo
    u, w, delta = _lag_mesh(length, panels, quad.nodes_per_panel, quad.diagonal_refinement_depth)
    g = _autocorrelation(density.evaluator, lo, hi, u, panels, quad.nodes_per_panel)
    g0 = _autocorrelation(density.evaluator, lo, hi, np.zeros(1), panels, quad.nodes_per_panel)[0]
    # int_0^delta log(u) g(u) du with g frozen at g(0)
    inner = g0 * delta * (math.log(delta) - 1.0)
    return -2.0 * math.fsum(np.append(w * np.log(u) * g, inner))


def _refine(compute, quad, what):
    panels = quad.panel_count
    coarse = compute(panels)
    for _ in range(_MAX_DOUBLINGS):
        panels *= 2
        fine = compute(panels)
        err = abs(fine - coarse)
        if err <= quad.target_tol:
            return fine, err
        coarse = fine
    raise QuadratureError(f"{what} did not reach tolerance {quad.target_tol:g}", fine, err)


def log_energy_1d(density, quad=DEFAULT_QUAD, full_output=False):
    """Logarithmic energy ``-iint log|x - y| f(x) f(y) dx dy`` of a 1D density.

    Parameters
    ----------
    density : Density1D
        Normalized density with bounded (effective) support.
    quad : QuadSpec
        Discretization. The result at ``2P`` panels is compared with the one
        at ``P`` panels; the difference serves as error estimate, and ``P`` is
        doubled until the estimate meets ``quad.target_tol``.
    full_output : bool
        Also return the error estimate.

    Raises
    ------
    QuadratureError
        If the refinement budget is exhausted.
    """
    lo, hi = _as_1d(density)
    value, err = _refine(lambda p: _energy_1d_once(density, lo, hi, p, quad), quad,
                         f"log energy of {density.label}")
    return (value, err) if full_output else value


def _energy_radial_once(density, panels, quad):
    q = quad.nodes_per_panel
    edges = graded_edges(0.0, density.cutoff, panels, quad.diagonal_refinement_depth, 0)

    def mass(s):
        return 2.0 * math.pi * s * density.radial_profile(s)

    r, w, qr, cdf = cumulative_rule(mass, edges, q)
    return -2.0 * math.fsum(w * qr * np.log(r) * cdf)


def log_energy_radial(density, quad=DEFAULT_QUAD, full_output=False):
    """Logarithmic energy of a rotation-invariant planar density.

    Angular integration gives ``iint log|z - w| dtheta dphi = 4 pi^2 log max(|z|, |w|)``,
    hence ``E = -2 int q(r) log(r) F(r) dr`` with radial marginal ``q`` and its
    distribution function ``F``. Arguments as in :func:`log_energy_1d`.
    """
    if not isinstance(density, RadialDensity2D):
        raise DomainError(f"expected a RadialDensity2D, got {type(density).__name__}")
    value, err = _refine(lambda p: _energy_radial_once(density, p, quad), quad,
                         f"log energy of {density.label}")
    return (value, err) if full_output else value


def _exp_weight_once(density, lo, hi, p, panels, quad):
    q = quad.nodes_per_panel
    u, wu, delta = _lag_mesh(hi - lo, panels, q, quad.diagonal_refinement_depth)
    g = _autocorrelation(density.evaluator, lo, hi, u, panels, q)
    g0 = _autocorrelation(density.evaluator, lo, hi, np.zeros(1), panels, q)[0]
    up = u**p
    # the integrands below are bounded at 0; mild grading keeps w >> delta
    outer = graded_edges(0.0, 1.0, max(panels // 8, 4), 6, 0)
    s, ws = panel_rule(outer, q)

    # t in [0, 1]: (1/(1+t) - Phi(t))/t = (1 - Phi(t))/t - 1/(1+t) with
    # Phi(t) = 2 int exp(-t u^p) g(u) du; expm1 avoids cancellation at small t
    one_minus_phi = 2.0 * ((-np.expm1(-s[:, None] * up[None, :]) / s[:, None]) @ (wu * g))
    head = math.fsum(ws * (one_minus_phi - 1.0 / (1.0 + s)))

    # t = w^-a on [1, inf) with a = max(p, 1): integrand a w^(a-1)/(1+w^a) - (a/w) Phi(w^-a),
    # bounded at w = 0 because Phi(w^-a) = O(w^(a/p))
    a = max(p, 1.0)
    phi_far = 2.0 * (np.exp(-up[None, :] / s[:, None] ** a) @ (wu * g))
    phi_far += 2.0 * g0 * delta
    tail = math.fsum(ws * (a * s ** (a - 1) / (1.0 + s**a) - a / s * phi_far))
    return (EULER_GAMMA - head - tail) / p


def exp_weight_energy(density, p, quad=DEFAULT_QUAD, full_output=False):
    """Logarithmic energy through the exponential-weight (Frullani) representation.

    Uses ``E = gamma/p - (1/p) int_0^inf (1/(1+t) - Phi(t)) dt/t`` with
    ``Phi(t) = E exp(-t |X - Y|^p)``. The half-line is split at ``t = 1`` and
    ``t = w^-max(p, 1)`` maps the far part onto ``w in (0, 1]``. Any
    ``p > 0`` is accepted and the exact value does not depend on ``p``;
    for ``p < 1`` the cusp of ``exp(-t u^p)`` at ``u = 0`` slows convergence
    and tolerances below about ``1e-7`` may be out of reach.
    """
    if not (isinstance(p, (int, float)) and math.isfinite(p) and p > 0):
        raise DomainError(f"p must be a positive real, got {p!r}")
    lo, hi = _as_1d(density)
    value, err = _refine(lambda n: _exp_weight_once(density, lo, hi, p, n, quad), quad,
                         f"exponential-weight energy of {density.label}")
    return (value, err) if full_output else value


def penalize(raw, moment, kind):
    """Add the moment penalty: ``moment/(2 lam)`` for ``kind=lam`` or ``moment`` for ``"linear"``."""
    if kind == "linear":
        return raw + moment
    if isinstance(kind, str):
        raise DomainError(f"unknown penalty kind {kind!r}")
    if not kind > 0:
        raise DomainError(f"quadratic penalty needs lambda > 0, got {kind}")
    return raw + moment / (2.0 * kind)
