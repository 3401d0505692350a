"""Executable checks of the combinatorial and analytic identities behind the closed forms.

Exact-mode checks work in rational arithmetic and pass only with zero
discrepancy. Quadrature-mode checks compare a numerical integral with a
closed form under a declared tolerance. The mode of every check is fixed.
"""

from dataclasses import dataclass
from fractions import Fraction
import json
import math

import numpy as np
from scipy import integrate

from ._quad import cumulative_rule, panel_rule
from .closedform import ginibre_tail
from .density import gue_density, howell_coefficients
from .errors import DomainError
from .specfun import binom_general, harmonic, hermite_h, laguerre_l, odd_harmonic

EXACT = "exact"
QUADRATURE = "quadrature"

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity check.

    ``verdict`` is ``"pass"`` iff ``discrepancy <= tolerance``; exact-mode
    checks carry ``tolerance = 0``.
    """

    identity_name: str
    parameters: tuple
    lhs: object
    rhs: object
    discrepancy: float
    tolerance: float
    mode: str

    @property
    def verdict(self):
        return PASS if self.discrepancy <= self.tolerance else FAIL

    @property
    def passed(self):
        return self.verdict == PASS

    def to_dict(self):
        def enc(v):
            if isinstance(v, Fraction):
                return str(v)
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            if isinstance(v, (np.floating, np.integer)):
                return v.item()
            return v
        return {
            "identity": self.identity_name,
            "params": enc(list(self.parameters)),
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "discrepancy": float(self.discrepancy),
            "verdict": self.verdict,
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def _exact(name, params, lhs, rhs):
    return IdentityReport(name, tuple(params), lhs, rhs, float(abs(Fraction(lhs) - Fraction(rhs))), 0.0, EXACT)


def _numeric(name, params, lhs, rhs, tol, discrepancy=None):
    if discrepancy is None:
        discrepancy = abs(lhs - rhs)
    return IdentityReport(name, tuple(params), lhs, rhs, float(discrepancy), tol, QUADRATURE)


def _require(cond, msg):
    if not cond:
        raise DomainError(msg)


def _pk(n):
    return howell_coefficients(n)


# --- exact mode -------------------------------------------------------------------

def check_hockey_stick(n, r):
    """``sum_{k<n} C(k, r) = C(n, r+1)``."""
    _require(0 <= r < n <= 100, f"need 0 <= r < n <= 100, got n={n}, r={r}")
    return _exact("hockey_stick", (n, r), sum(math.comb(k, r) for k in range(n)), math.comb(n, r + 1))


def check_calcul_gue(n):
    """Alternating double sum that produces the GUE energy."""
    _require(1 <= n <= 30, f"need 1 <= n <= 30, got {n}")
    total = Fraction(0)
    for k in range(n):
        for l in range(n):
            if k + l:
                total += Fraction((-1) ** (k + l) * math.comb(n, k + 1) * math.comb(n, l + 1)
                                  * math.comb(k + l, k), k + l)
    lhs = total / (2 * n * n)
    rhs = Fraction(1, 4) + (Fraction(1, 2 * n) - harmonic(n)) / 2
    return _exact("calcul_gue", (n,), lhs, rhs)


def check_binomial_identity(k, l, p):
    """``sum_i (-1)^(i+k) C(l, i+p) C(i, k)`` against its indicator form."""
    _require(all(0 <= v <= 25 for v in (k, l, p)), f"need 0 <= k, l, p <= 25, got {(k, l, p)}")
    lhs = sum((-1) ** (i + k) * math.comb(l, i + p) * math.comb(i, k) for i in range(l + 1))
    rhs = int(k == l and p == 0) + (math.comb(l - k - 1, p - 1) if l > k and p >= 1 else 0)
    return _exact("binomial_identity", (k, l, p), lhs, rhs)


def check_harmonic_identity(n):
    """``16 sum_{k<l} ... Hbar_{l-k} = H_n - 1/(2n) - 1/2`` (the weights are ``p_k p_l / 4``)."""
    _require(1 <= n <= 25, f"need 1 <= n <= 25, got {n}")
    c = [(-1) ** k * math.comb(n - 1, k) * binom_general(Fraction(2 * k - 1, 2), n) for k in range(n)]
    lhs = 16 * sum((c[k] * c[l] * odd_harmonic(l - k) for k in range(n) for l in range(k + 1, n)),
                   Fraction(0))
    rhs = harmonic(n) - Fraction(1, 2 * n) - Fraction(1, 2)
    return _exact("harmonic_identity", (n,), lhs, rhs)


def check_pk(n):
    """The weights ``p_k`` are nonnegative and sum to one."""
    _require(1 <= n <= 100, f"need 1 <= n <= 100, got {n}")
    p = _pk(n)
    total = sum(p, Fraction(0))
    negative = sum((-x for x in p if x < 0), Fraction(0))
    return IdentityReport("pk", (n,), total, Fraction(1), float(abs(total - 1) + negative), 0.0, EXACT)


def _stieltjes(p, z):
    return sum((pl / (z + l) for l, pl in enumerate(p)), Fraction(0))


def check_stieltjes(n, z_grid=(0.5, 1, 2.5, 10)):
    """``S(z) = sum_l p_l/(z+l)`` equals ``(2/n)(R(z) - 1)``, relative to 1e-10.

    Grid values are converted to exact rationals.
    """
    _require(1 <= n <= 20, f"need 1 <= n <= 20, got {n}")
    p = _pk(n)
    worst, lhs_vals, rhs_vals = Fraction(0), [], []
    for z in z_grid:
        zq = Fraction(z)
        _require(not (zq.denominator == 1 and -n < zq <= 0), f"z={z} is a pole")
        r = Fraction(1)
        for j in range(n):
            r *= (zq + j + Fraction(1, 2)) / (zq + j)
        lhs, rhs = _stieltjes(p, zq), Fraction(2, n) * (r - 1)
        lhs_vals.append(lhs)
        rhs_vals.append(rhs)
        worst = max(worst, _relative(lhs, rhs))
    return _numeric("stieltjes", (n, *z_grid), lhs_vals, rhs_vals, 1e-10, discrepancy=float(worst))


def check_stieltjes_mean(n, z=10**6):
    """``z (1 - z S(z))`` at large ``z`` approaches the mean ``(n-1)/4`` of the weights (1e-3)."""
    _require(1 <= n <= 20, f"need 1 <= n <= 20, got {n}")
    zq = Fraction(z)
    est = zq * (1 - zq * _stieltjes(_pk(n), zq))
    return _numeric("stieltjes_mean", (n, z), float(est), Fraction(n - 1, 4), 1e-3,
                    discrepancy=float(abs(est - Fraction(n - 1, 4))))


# --- pointwise polynomial identities (rational grid, so exact in practice) -------

def _rational_grid(grid):
    return [Fraction(x) for x in grid]


def _relative(lhs, rhs):
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1)


def check_feldheim(k, grid=None):
    """``h_k(x)^2 = 2^k k! sum_r C(k, r)/(2^r r!) h_{2r}(x)`` on a grid.

    The default grid has 50 points in ``[-5, 5]``.
    """
    _require(0 <= k <= 12, f"need 0 <= k <= 12, got {k}")
    pts = _rational_grid(np.linspace(-5, 5, 50) if grid is None else grid)
    coef = [Fraction(math.comb(k, r), 2**r * math.factorial(r)) for r in range(k + 1)]
    scale = 2**k * math.factorial(k)
    worst, lv, rv = Fraction(0), [], []
    for x in pts:
        lhs = hermite_h(k, x) ** 2
        rhs = scale * sum(c * hermite_h(2 * r, x) for r, c in enumerate(coef))
        worst = max(worst, _relative(lhs, rhs))
        lv.append(float(lhs))
        rv.append(float(rhs))
    return _numeric("feldheim", (k, len(pts)), lv, rv, 1e-9, discrepancy=float(worst))


def check_howell(k, grid=None):
    """``L_k(s)^2 = 4^-k sum_r C(2r, r) C(2k-2r, k-r) L_{2r}(2s)`` on a grid.

    The default grid has 50 points in ``[0, 10]``.
    """
    _require(0 <= k <= 10, f"need 0 <= k <= 10, got {k}")
    pts = _rational_grid(np.linspace(0, 10, 50) if grid is None else grid)
    coef = [Fraction(math.comb(2 * r, r) * math.comb(2 * k - 2 * r, k - r), 4**k) for r in range(k + 1)]
    worst, lv, rv = Fraction(0), [], []
    for s in pts:
        lhs = laguerre_l(k, s) ** 2
        rhs = sum(c * laguerre_l(2 * r, 2 * s) for r, c in enumerate(coef))
        worst = max(worst, _relative(lhs, rhs))
        lv.append(float(lhs))
        rv.append(float(rhs))
    return _numeric("howell", (k, len(pts)), lv, rv, 1e-9, discrepancy=float(worst))


# --- quadrature mode ---------------------------------------------------------------

def integral_mh_closed_form(n, t):
    """Closed double sum for ``iint exp(-|x-y|^2/t) phi_n(x) phi_n(y) dx dy``."""
    terms = []
    for k in range(n):
        for l in range(n):
            terms.append((-1) ** (k + l) * math.comb(n, k + 1) / math.factorial(k)
                         * math.comb(n, l + 1) / math.factorial(l)
                         * math.factorial(2 * k + 2 * l) / math.factorial(k + l)
                         * (2 * t + 4) ** (-k - l - 0.5))
    return math.sqrt(2 * t) / n**2 * math.fsum(terms)


def check_integral_mh(n, t):
    """Tensor Gauss-Legendre quadrature of the Gaussian-kernel double integral."""
    _require(1 <= n <= 5, f"need 1 <= n <= 5, got {n}")
    _require(t > 0, f"need t > 0, got {t}")
    dens = gue_density(n, scaled=False)
    lo, hi = dens.support
    x, w = panel_rule(np.linspace(lo, hi, 97), 16)
    fw = dens(x) * w
    kernel = np.exp(-((x[:, None] - x[None, :]) ** 2) / t)
    lhs = math.fsum(fw * (kernel @ fw))
    return _numeric("integral_mh", (n, t), lhs, integral_mh_closed_form(n, t), 1e-8)


def check_beta_prime_log(n):
    """``E log(B e^-B)`` for the min-ratio of two Gamma(n+1) variables.

    Quadrature against the Beta-prime(n+1, n+1) density on ``Z < 1``,
    doubled, versus ``-(n+1)/n + 4 b_n`` with ``b_n`` from the closed-form
    tail routine.
    """
    _require(1 <= n <= 20, f"need 1 <= n <= 20, got {n}")
    norm = 2.0 * (n + 1) * math.comb(2 * n + 1, n)
    val, _ = integrate.quad(lambda x: (math.log(x) - x) * x**n * (1 + x) ** (-2 * n - 2), 0.0, 1.0,
                            epsabs=1e-15, epsrel=1e-13, limit=200)
    lhs = norm * val
    rhs = -(n + 1) / n + 4.0 * ginibre_tail(n).value
    return _numeric("beta_prime_log", (n,), lhs, rhs, 1e-8)


def laguerre_convolution_closed_form(k, l, t):
    if k == l:
        return 1.0 / (t + 0.5)
    if k > l:
        return -((t - 0.5) ** (2 * k - 2 * l - 1)) / (t + 0.5) ** (2 * k - 2 * l + 1)
    return 0.0


def check_laguerre_convolution(k, l, t, upper=120.0):
    """Nested quadrature of ``int e^{-(t+1/2)x} L_2k(x) int_0^x e^{-(1/2-t)y} L_2l(y) dy dx``."""
    _require(0 <= k <= 4 and 0 <= l <= 4, f"need 0 <= k, l <= 4, got {(k, l)}")
    _require(t > 0, f"need t > 0, got {t}")
    edges = np.linspace(0.0, upper, 241)
    x, w, _, inner = cumulative_rule(lambda y: np.exp(-(0.5 - t) * y) * laguerre_l(2 * l, y), edges, 16)
    lhs = math.fsum(w * np.exp(-(t + 0.5) * x) * laguerre_l(2 * k, x) * inner)
    return _numeric("laguerre_convolution", (k, l, t), lhs, laguerre_convolution_closed_form(k, l, t), 1e-8)


def _t_integral(h, pole=None):
    # int_0^inf h(t) dt; [1/4, 1] carries the possible pole at t = 1/2
    opts = dict(epsabs=1e-13, epsrel=1e-13, limit=400)
    a, _ = integrate.quad(h, 0.0, 0.25, **opts)
    if pole is None:
        b, _ = integrate.quad(h, 0.25, 1.0, **opts)
    else:
        b, _ = integrate.quad(pole, 0.25, 1.0, weight="cauchy", wvar=0.5, **opts)
    c, _ = integrate.quad(h, 1.0, np.inf, **opts)
    return a + b + c


def check_lue_integrals(m):
    """The two ``dt/t`` integrals that feed the LUE energy.

    For ``m = 0`` the second integrand has a simple pole at ``t = 1/2`` and the
    value holds as a Cauchy principal value.
    """
    _require(0 <= m <= 15, f"need 0 <= m <= 15, got {m}")
    first = _t_integral(lambda t: (2 / (1 + t) - 1 / (t + 0.5)) / t)

    def second(t):
        return (4 / (1 + t) + (t - 0.5) ** (2 * m - 1) / (t + 0.5) ** (2 * m + 1)) / t

    def regular_part(t):
        # m = 0: second(t) = regular_part(t) / (t - 1/2)
        return 4 * (t - 0.5) / (t * (1 + t)) + 1 / (t * (t + 0.5))

    value = _t_integral(second, regular_part if m == 0 else None)
    lhs = (first, value)
    rhs = (2 * math.log(2), 4 * (math.log(2) + 2 * float(odd_harmonic(m))))
    disc = max(abs(lhs[0] - rhs[0]), abs(lhs[1] - rhs[1]))
    return _numeric("lue_integrals", (m,), lhs, rhs, 1e-8, discrepancy=disc)


# --- suite ---------------------------------------------------------------------------

def _suite_plan(n_max=None):
    def cap(default):
        return default if n_max is None else min(default, n_max)

    return {
        "hockey_stick": lambda: [check_hockey_stick(n, r) for n in range(1, cap(30) + 1) for r in range(n)],
        "calcul_gue": lambda: [check_calcul_gue(n) for n in range(1, cap(30) + 1)],
        "binomial_identity": lambda: [check_binomial_identity(k, l, p) for k in range(13)
                                      for l in range(13) for p in range(13)],
        "harmonic_identity": lambda: [check_harmonic_identity(n) for n in range(1, cap(25) + 1)],
        "pk": lambda: [check_pk(n) for n in range(1, cap(25) + 1)],
        "feldheim": lambda: [check_feldheim(k) for k in range(cap(10) + 1)],
        "howell": lambda: [check_howell(k) for k in range(cap(8) + 1)],
        "integral_mh": lambda: [check_integral_mh(n, t) for n in range(1, cap(4) + 1) for t in (0.5, 1.0, 2.0)],
        "beta_prime_log": lambda: [check_beta_prime_log(n) for n in range(1, cap(20) + 1)],
        "laguerre_convolution": lambda: [check_laguerre_convolution(k, l, t) for k in range(5)
                                         for l in range(5) for t in (0.3, 0.5, 1.0, 2.0)],
        "lue_integrals": lambda: [check_lue_integrals(m) for m in range(cap(15) + 1)],
        "stieltjes": lambda: [check_stieltjes(n) for n in range(1, cap(10) + 1)],
        "stieltjes_mean": lambda: [check_stieltjes_mean(n) for n in range(1, cap(10) + 1)],
    }


IDENTITY_NAMES = tuple(_suite_plan())


def run_suite(only=None, n_max=None):
    """Run every identity over its default parameter range.

    Parameters
    ----------
    only : iterable of str, optional
        Restrict to these identity names.
    n_max : int, optional
        Cap the main size parameter of each family.

    Returns
    -------
    list of IdentityReport
    """
    plan = _suite_plan(n_max)
    names = list(plan) if only is None else list(only)
    unknown = [x for x in names if x not in plan]
    if unknown:
        raise DomainError(f"unknown identities {unknown}; choose from {list(plan)}")
    reports = []
    for name in names:
        reports.extend(plan[name]())
    return reports
