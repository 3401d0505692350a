"""Eigenvalue solvers for small dense matrices.

Hermitian: Householder reduction to a real symmetric tridiagonal matrix, then
implicit-shift QL. General complex: Householder reduction to Hessenberg form,
then single-shift complex QR with Wilkinson shifts and deflation.
"""

import math

import numba
import numpy as np

from ..errors import DomainError, NumericalError

_EPS = np.finfo(float).eps
QL_MAX_SWEEPS = 50
QR_ITERATIONS_PER_N = 100
HERMITIAN_RTOL = 1e-12


@numba.njit(cache=True)
def _householder_vector(x):
    # v with (I - 2 v v*) x = -e^{i arg x0} |x| e_1; returns (v, |x|, phase, ok)
    alpha = 0.0
    for i in range(x.size):
        alpha += x[i].real ** 2 + x[i].imag ** 2
    alpha = math.sqrt(alpha)
    v = x.copy()
    if alpha == 0.0:
        return v, 0.0, 1.0 + 0.0j, False
    a0 = abs(x[0])
    phase = x[0] / a0 if a0 > 0.0 else 1.0 + 0.0j
    v[0] += phase * alpha
    nv = 0.0
    for i in range(v.size):
        nv += v[i].real ** 2 + v[i].imag ** 2
    v /= math.sqrt(nv)
    return v, alpha, phase, True


@numba.njit(cache=True)
def _tridiagonalize(a):
    """Diagonal and off-diagonal magnitudes of a unitarily similar tridiagonal matrix."""
    n = a.shape[0]
    a = a.copy()
    d = np.empty(n)
    e = np.zeros(n)
    for k in range(n - 2):
        v, alpha, phase, ok = _householder_vector(a[k + 1:, k])
        if ok:
            b = a[k + 1:, k + 1:]
            m = v.size
            p = np.zeros(m, dtype=np.complex128)
            for i in range(m):
                for j in range(m):
                    p[i] += b[i, j] * v[j]
            kk = 0.0 + 0.0j
            for i in range(m):
                kk += np.conj(v[i]) * p[i]
            w = p - kk.real * v
            for i in range(m):
                for j in range(m):
                    b[i, j] -= 2.0 * (v[i] * np.conj(w[j]) + w[i] * np.conj(v[j]))
            e[k] = alpha
        else:
            e[k] = 0.0
        d[k] = a[k, k].real
    if n >= 2:
        e[n - 2] = abs(a[n - 1, n - 2])
        d[n - 2] = a[n - 2, n - 2].real
    d[n - 1] = a[n - 1, n - 1].real
    return d, e


@numba.njit(cache=True)
def _tql(d, e):
    """Implicit QL on (d, e) in place; ``e[i]`` couples ``i`` and ``i+1``. Returns success."""
    n = d.size
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            if it == QL_MAX_SWEEPS:
                return False
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            restart = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    restart = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if restart:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return True


@numba.njit(cache=True)
def _hessenberg(a):
    n = a.shape[0]
    a = a.copy()
    for k in range(n - 2):
        v, alpha, phase, ok = _householder_vector(a[k + 1:, k])
        if not ok:
            continue
        # rows k+1.. from the left, then columns k+1.. from the right
        for j in range(k, n):
            s = 0.0 + 0.0j
            for i in range(v.size):
                s += np.conj(v[i]) * a[k + 1 + i, j]
            for i in range(v.size):
                a[k + 1 + i, j] -= 2.0 * v[i] * s
        for i in range(n):
            s = 0.0 + 0.0j
            for j in range(v.size):
                s += a[i, k + 1 + j] * v[j]
            for j in range(v.size):
                a[i, k + 1 + j] -= 2.0 * s * np.conj(v[j])
        for i in range(k + 2, n):
            a[i, k] = 0.0
    return a


@numba.njit(cache=True)
def _wilkinson(a, b, c, d):
    # eigenvalue of [[a, b], [c, d]] closest to d
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    mid = 0.5 * (a + d)
    l1 = mid + disc
    l2 = mid - disc
    return l1 if abs(l1 - d) <= abs(l2 - d) else l2


@numba.njit(cache=True)
def _hessenberg_qr(h):
    """Eigenvalues of an upper Hessenberg matrix; returns (values, success)."""
    n = h.shape[0]
    h = h.copy()
    out = np.empty(n, dtype=np.complex128)
    hnorm = 0.0
    for i in range(n):
        for j in range(n):
            hnorm = max(hnorm, abs(h[i, j]))
    cs = np.empty(n)
    sn = np.empty(n, dtype=np.complex128)
    hi = n - 1
    total = 0
    since = 0
    while hi >= 0:
        if hi == 0:
            out[0] = h[0, 0]
            break
        l = hi
        while l > 0:
            scale = abs(h[l, l]) + abs(h[l - 1, l - 1])
            if scale == 0.0:
                scale = hnorm
            if abs(h[l, l - 1]) <= _EPS * scale:
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            out[hi] = h[hi, hi]
            hi -= 1
            since = 0
            continue
        total += 1
        since += 1
        if total > QR_ITERATIONS_PER_N * n:
            return out, False
        if since % 11 == 10:
            # exceptional shift breaks rare cycles
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            mu = _wilkinson(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
        for k in range(l, hi + 1):
            h[k, k] -= mu
        for k in range(l, hi):
            x = h[k, k]
            y = h[k + 1, k]
            ax = abs(x)
            r = math.hypot(ax, abs(y))
            if r == 0.0:
                c = 1.0
                s = 0.0 + 0.0j
            elif ax == 0.0:
                c = 0.0
                s = np.conj(y) / r
            else:
                c = ax / r
                s = (x / ax) * np.conj(y) / r
            cs[k] = c
            sn[k] = s
            for j in range(k, hi + 1):
                t1 = h[k, j]
                t2 = h[k + 1, j]
                h[k, j] = c * t1 + s * t2
                h[k + 1, j] = -np.conj(s) * t1 + c * t2
        for k in range(l, hi):
            c = cs[k]
            s = sn[k]
            for i in range(l, min(k + 2, hi) + 1):
                t1 = h[i, k]
                t2 = h[i, k + 1]
                h[i, k] = c * t1 + np.conj(s) * t2
                h[i, k + 1] = -s * t1 + c * t2
        for k in range(l, hi + 1):
            h[k, k] += mu
    return out, True


def _square(matrix):
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DomainError(f"expected a nonempty square matrix, got shape {a.shape}")
    return a


def eig_tridiagonal(diag, offdiag):
    """Sorted eigenvalues of the real symmetric tridiagonal matrix with the given diagonals."""
    d = np.array(diag, dtype=float)
    off = np.asarray(offdiag, dtype=float)
    if d.ndim != 1 or d.size == 0 or off.shape != (d.size - 1,):
        raise DomainError(f"need diag of length n >= 1 and offdiag of length n-1, got {d.shape}, {off.shape}")
    e = np.zeros(d.size)
    e[:-1] = off
    if not _tql(d, e):
        raise NumericalError(f"QL iteration did not converge within {QL_MAX_SWEEPS} sweeps")
    return np.sort(d)


def eig_hermitian(matrix, check=True):
    """Sorted real eigenvalues of a Hermitian matrix.

    Raises :class:`DomainError` when the input deviates from its conjugate
    transpose by more than ``1e-12`` relative (Frobenius norm).
    """
    a = np.ascontiguousarray(_square(matrix), dtype=np.complex128)
    if check:
        scale = np.linalg.norm(a)
        if np.linalg.norm(a - a.conj().T) > HERMITIAN_RTOL * max(scale, 1e-300):
            raise DomainError("matrix is not Hermitian")
    d, e = _tridiagonalize(a)
    if not _tql(d, e):
        raise NumericalError(f"QL iteration did not converge within {QL_MAX_SWEEPS} sweeps")
    return np.sort(d)


def eig_complex(matrix):
    """Eigenvalues of a general complex square matrix (unordered)."""
    a = np.ascontiguousarray(_square(matrix), dtype=np.complex128)
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    vals, ok = _hessenberg_qr(_hessenberg(a))
    if not ok:
        raise NumericalError(f"QR iteration did not converge within {QR_ITERATIONS_PER_N}*n steps")
    return vals
