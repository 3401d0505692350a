"""Special functions and classical orthogonal polynomials.

Exact routines work on :class:`fractions.Fraction` (aliased as
:data:`RationalExact`) and Python integers; floating routines accept
scalars or numpy arrays.
"""

from fractions import Fraction
from functools import lru_cache
import math
from numbers import Rational

import numpy as np
from scipy import special

from .errors import DomainError

#: Exact rational number; always stored in lowest terms with a positive denominator.
RationalExact = Fraction

# 20 significant digits; checked against H_n - log n at test time.
EULER_GAMMA = 0.57721566490153286061

_RESCALE_ABOVE = 1e100


def euler_gamma():
    """Return the Euler--Mascheroni constant."""
    return EULER_GAMMA


@lru_cache(maxsize=512)
def harmonic(n):
    """Exact harmonic number ``H_n = 1 + 1/2 + ... + 1/n``."""
    if n < 1:
        raise DomainError(f"harmonic number needs n >= 1, got {n}")
    total = Fraction(0)
    for k in range(1, n + 1):
        total += Fraction(1, k)
    return total


def harmonic_float(n):
    """Floating-point ``H_n`` using compensated summation."""
    if n < 1:
        raise DomainError(f"harmonic number needs n >= 1, got {n}")
    return math.fsum(1.0 / np.arange(1, n + 1, dtype=float))


def harmonic_floats(n_max):
    """Array ``[H_1, ..., H_{n_max}]`` as floats (running compensated sums)."""
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    out = np.empty(n_max)
    acc, comp = 0.0, 0.0
    for k in range(1, n_max + 1):
        # Kahan summation keeps H_{n+1} - H_n equal to 1/(n+1) to rounding
        y = 1.0 / k - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
        out[k - 1] = acc
    return out


def odd_harmonic(m):
    """Exact ``1 + 1/3 + ... + 1/(2m - 1)``; zero for ``m = 0``."""
    if m < 0:
        raise DomainError(f"odd harmonic number needs m >= 0, got {m}")
    return sum((Fraction(1, 2 * i - 1) for i in range(1, m + 1)), Fraction(0))


def binom_general(z, n):
    """Generalized binomial coefficient ``z (z-1) ... (z-n+1) / n!``.

    Exact when ``z`` is an integer or a :class:`~fractions.Fraction`,
    floating otherwise.
    """
    if n < 0:
        raise DomainError(f"binomial needs n >= 0, got {n}")
    if isinstance(z, Rational):
        acc = Fraction(1)
        for i in range(n):
            acc *= Fraction(z) - i
        return acc / math.factorial(n)
    acc = 1.0
    for i in range(n):
        acc *= (z - i) / (i + 1)
    return acc


def central_binom_ratio(k):
    """``4**-k * C(2k, k)`` through ``r_k = r_{k-1} (2k - 1) / (2k)``."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    r = 1.0
    for j in range(1, k + 1):
        r *= (2 * j - 1) / (2 * j)
    return r


def central_binom_ratios(k_max):
    """Array of ``4**-k * C(2k, k)`` for ``k = 0, ..., k_max``."""
    j = np.arange(1, k_max + 1, dtype=float)
    return np.concatenate(([1.0], np.cumprod((2 * j - 1) / (2 * j))))


def upper_incomplete_gamma_int(n, r):
    """``Gamma(n, r) = (n-1)! e^-r sum_{k<n} r^k / k!`` for integer ``n >= 1``.

    Evaluated as ``(n-1)! Q(n, r)`` with the regularized ``Q`` from scipy,
    which keeps the normalized value in ``[0, 1]`` and monotone in ``r``.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"Gamma(n, r) needs integer n >= 1, got {n}")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("Gamma(n, r) needs r >= 0")
    out = math.factorial(int(n) - 1) * special.gammaincc(int(n), r)
    return out if out.ndim else float(out)


# --- orthogonal polynomials -------------------------------------------------

def hermite_h(k, x):
    """Physicists' Hermite polynomial ``h_k(x)``.

    Uses ``h_{k+1} = 2x h_k - 2k h_{k-1}``. Integer or Fraction arguments
    are evaluated exactly.
    """
    if k < 0:
        raise DomainError(f"degree must be >= 0, got {k}")
    if isinstance(x, Rational):
        prev, cur = Fraction(0), Fraction(1)
    else:
        x = np.asarray(x, dtype=float)
        prev, cur = np.zeros_like(x), np.ones_like(x)
    for j in range(k):
        prev, cur = cur, 2 * x * cur - 2 * j * prev
    return cur if isinstance(cur, Fraction) or np.ndim(cur) else float(cur)


@lru_cache(maxsize=None)
def hermite_coefficients(k):
    """Integer coefficients ``(c_0, ..., c_k)`` of ``h_k`` from the recurrence."""
    prev, cur = (0,), (1,)
    for j in range(k):
        nxt = [0] * (len(cur) + 1)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(prev):
            nxt[i] -= 2 * j * c
        prev, cur = cur, tuple(nxt)
    return cur


def laguerre_l(k, s):
    """Laguerre polynomial ``L_k(s)`` via ``(k+1) L_{k+1} = (2k+1-s) L_k - k L_{k-1}``.

    Integer or Fraction arguments are evaluated exactly.
    """
    if k < 0:
        raise DomainError(f"degree must be >= 0, got {k}")
    if isinstance(s, Rational):
        prev, cur = Fraction(0), Fraction(1)
        for j in range(k):
            prev, cur = cur, ((2 * j + 1 - s) * cur - j * prev) / (j + 1)
        return cur
    s = np.asarray(s, dtype=float)
    prev, cur = np.zeros_like(s), np.ones_like(s)
    for j in range(k):
        prev, cur = cur, ((2 * j + 1 - s) * cur - j * prev) / (j + 1)
    return cur if cur.ndim else float(cur)


@lru_cache(maxsize=None)
def laguerre_coefficients(k):
    """Exact coefficients ``(c_0, ..., c_k)`` of ``L_k`` from the recurrence."""
    prev, cur = (Fraction(0),), (Fraction(1),)
    for j in range(k):
        nxt = [Fraction(0)] * (len(cur) + 1)
        for i, c in enumerate(cur):
            nxt[i] += (2 * j + 1) * c / (j + 1)
            nxt[i + 1] -= c / (j + 1)
        for i, c in enumerate(prev):
            nxt[i] -= j * c / (j + 1)
        prev, cur = cur, tuple(nxt)
    return cur


def _rescale(prev, cur, log_scale, acc):
    big = np.abs(cur) > _RESCALE_ABOVE
    if np.any(big):
        c = np.abs(cur[big])
        prev[big] /= c
        cur[big] /= c
        acc[big] /= c * c
        log_scale[big] += np.log(c)


def hermite_square_sum(n, x):
    """``sum_{k<n} psi_k(x)**2`` for the normalized Hermite functions.

    ``psi_k(x) = h_k(x) exp(-x**2/2) / sqrt(2**k k! sqrt(pi))``, generated by
    ``psi_{k+1} = sqrt(2/(k+1)) x psi_k - sqrt(k/(k+1)) psi_{k-1}``. The
    Gaussian factor is carried as a separate log-scale, so nothing underflows
    before the final exponentiation.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    x = np.asarray(x, dtype=float)
    shape = x.shape
    x = x.ravel()
    log_scale = -0.5 * x * x
    prev = np.zeros_like(x)
    cur = np.full_like(x, np.pi ** -0.25)
    acc = cur * cur
    for k in range(n - 1):
        prev, cur = cur, math.sqrt(2.0 / (k + 1)) * x * cur - math.sqrt(k / (k + 1)) * prev
        acc += cur * cur
        _rescale(prev, cur, log_scale, acc)
    return (acc * np.exp(2.0 * log_scale)).reshape(shape)


def laguerre_square_sum(n, s):
    """``exp(-s) sum_{k<n} L_k(s)**2`` with log-magnitude tracking for large ``s``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    s = np.asarray(s, dtype=float)
    shape = s.shape
    s = s.ravel()
    log_scale = -0.5 * s
    prev = np.zeros_like(s)
    cur = np.ones_like(s)
    acc = np.ones_like(s)
    for k in range(n - 1):
        prev, cur = cur, ((2 * k + 1 - s) * cur - k * prev) / (k + 1)
        acc += cur * cur
        _rescale(prev, cur, log_scale, acc)
    return (acc * np.exp(2.0 * log_scale)).reshape(shape)
