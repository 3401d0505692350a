"""Independent eigenvalue oracles built on high-precision characteristic polynomials."""

import mpmath
import numpy as np
from scipy.optimize import linear_sum_assignment


def charpoly_coefficients(a, dps=50):
    """Monic characteristic polynomial (highest degree first) by Faddeev-LeVerrier in mpmath."""
    n = a.shape[0]
    with mpmath.workdps(dps):
        A = mpmath.matrix([[mpmath.mpc(complex(v)) for v in row] for row in a])
        m = mpmath.zeros(n, n)
        coef = [mpmath.mpc(1)]
        for k in range(1, n + 1):
            m = A * m
            for i in range(n):
                m[i, i] += coef[-1]
            am = A * m
            coef.append(-sum(am[i, i] for i in range(n)) / k)
        return coef


def companion_roots(a):
    """Roots of the characteristic polynomial by a companion-matrix solve."""
    return np.roots(np.array([complex(c) for c in charpoly_coefficients(a)]))


def durand_kerner_roots(a, dps=50):
    """Roots of the characteristic polynomial by Durand-Kerner iteration in mpmath."""
    coef = charpoly_coefficients(a, dps)
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(coef, maxsteps=400, extraprec=4 * dps)
    return np.array([complex(r) for r in roots])


def matched_distance(a, b):
    """Largest distance between two multisets of complex numbers under the best matching."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    cost = np.abs(a[:, None] - b[None, :])
    i, j = linear_sum_assignment(cost)
    return float(cost[i, j].max())


def random_hermitian(rng, n):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (x + x.conj().T) / 2


def random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
