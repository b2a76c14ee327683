"""Dense numerical kernels: symmetric eigensolver, log-determinant, log-Gamma
and the paired Barnes G product.

The cyclic Jacobi solver is the reference eigensolver for every matrix up to
``JACOBI_MAX_DIM``.  Beyond that size the cost of O(n^3) work per sweep times
the slow sweep count caused by eigenvalue clusters near +-1 is prohibitive on a
single core, so larger problems are routed to LAPACK (``numpy.linalg.eigh``).
Both paths are cross-checked in the test suite.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional

import numba
import numpy as np

from .errors import InputDomainError, NumericalContractError

EULER_GAMMA = 0.57721566490153286061

JACOBI_MAX_DIM = 256
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


class EigenResult(NamedTuple):
    """Ascending eigenvalues and, optionally, orthonormal eigenvectors (columns)."""

    values: np.ndarray
    vectors: Optional[np.ndarray] = None


def as_symmetric(m, atol: float = 1e-12) -> np.ndarray:
    """Validate a square finite matrix and return its exactly symmetric copy.

    Asymmetry larger than ``atol`` times the max-norm is rejected rather than
    silently averaged away.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputDomainError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputDomainError("matrix has non-finite entries")
    scale = max(np.abs(a).max(initial=0.0), 1.0)
    if np.abs(a - a.T).max(initial=0.0) > atol * scale:
        raise InputDomainError("matrix is not symmetric")
    return 0.5 * (a + a.T)


@numba.njit(cache=True, nogil=True)
def _jacobi_sweeps(a, v, want_vectors, tol, max_sweeps):
    # Rows of ``v`` accumulate the eigenvectors, i.e. v holds V^T.
    n = a.shape[0]
    skip = tol / max(n, 1)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        if math.sqrt(2.0 * off) <= tol:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[p, k]
                    akq = a[q, k]
                    a[p, k] = c * akp - s * akq
                    a[q, k] = s * akp + c * akq
                for k in range(n):
                    a[k, p] = a[p, k]
                    a[k, q] = a[q, k]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    for k in range(n):
                        vpk = v[p, k]
                        vqk = v[q, k]
                        v[p, k] = c * vpk - s * vqk
                        v[q, k] = s * vpk + c * vqk
    return -1


def jacobi_eigh(m, vectors: bool = False, tol: float = JACOBI_TOL,
                max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenResult:
    """Cyclic Jacobi diagonalisation of a real symmetric matrix.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol * ||m||_F``.
    """
    a = as_symmetric(m)
    n = a.shape[0]
    if n == 0:
        return EigenResult(np.empty(0), np.empty((0, 0)) if vectors else None)
    fro = float(np.linalg.norm(a))
    v = np.eye(n)
    if fro == 0.0:
        return EigenResult(np.zeros(n), v if vectors else None)
    sweeps = _jacobi_sweeps(a, v, vectors, tol * fro, max_sweeps)
    if sweeps < 0:
        raise NumericalContractError(
            f"Jacobi did not converge within {max_sweeps} sweeps (n={n})")
    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    if vectors:
        return EigenResult(values[order], v[order].T.copy())
    return EigenResult(values[order], None)


def symmetric_eigenvalues(m, vectors: bool = False,
                          method: Optional[str] = None) -> EigenResult:
    """Eigen-decomposition of a real symmetric matrix, values ascending.

    Parameters
    ----------
    m : array_like
        Square, finite, symmetric matrix.
    vectors : bool
        Also return eigenvectors as the columns of ``EigenResult.vectors``.
    method : {"jacobi", "lapack", None}
        ``None`` picks Jacobi up to ``JACOBI_MAX_DIM`` and LAPACK above.
    """
    a = as_symmetric(m)
    if method is None:
        method = "jacobi" if a.shape[0] <= JACOBI_MAX_DIM else "lapack"
    if method == "jacobi":
        return jacobi_eigh(a, vectors=vectors)
    if method == "lapack":
        if vectors:
            w, v = np.linalg.eigh(a)
            return EigenResult(w, v)
        return EigenResult(np.linalg.eigvalsh(a), None)
    raise InputDomainError(f"unknown eigensolver {method!r}")


def log_abs_det(m) -> tuple[int, float]:
    """Sign and log-magnitude of a determinant via partial-pivot LU.

    Returns ``(0, -inf)`` for a numerically singular matrix.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputDomainError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputDomainError("matrix has non-finite entries")
    n = a.shape[0]
    sign = 1
    logabs = 0.0
    tiny = np.finfo(float).eps * max(np.abs(a).max(initial=0.0), 1e-300) * n
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[piv, k]) <= tiny:
            return 0, -math.inf
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            sign = -sign
        pivot = a[k, k]
        if pivot < 0:
            sign = -sign
        logabs += math.log(abs(pivot))
        if k + 1 < n:
            factors = a[k + 1:, k] / pivot
            a[k + 1:, k + 1:] -= np.outer(factors, a[k, k + 1:])
    return sign, logabs


# Stirling series coefficients B_{2k} / (2k (2k-1)), k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_STIRLING_MIN = 10.0


def _stirling_tail(x):
    inv = 1.0 / x
    inv2 = inv * inv
    acc = 0.0
    for coeff in reversed(_STIRLING):
        acc = acc * inv2 + coeff
    return acc * inv


def _shift_up(x):
    """Return (y, log_prod) with y = x + k >= 10 and log_prod = ln(x (x+1) ... (x+k-1))."""
    y = np.array(x, dtype=float, copy=True)
    prod = np.ones_like(y)
    logprod = np.zeros_like(y)
    while True:
        small = y < _STIRLING_MIN
        if not small.any():
            break
        prod = np.where(small, prod * y, prod)
        y = np.where(small, y + 1.0, y)
        # keep the running product far from overflow/underflow
        big = (prod > 1e250) | (prod < 1e-250)
        if big.any():
            logprod = logprod + np.where(big, np.log(prod), 0.0)
            prod = np.where(big, 1.0, prod)
    return y, logprod + np.log(prod)


def _check_positive(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise InputDomainError("log_gamma needs finite x > 0")
    return arr


def log_gamma(x):
    """Natural log of the Gamma function for real x > 0 (scalar or array)."""
    arr = _check_positive(x)
    y, logprod = _shift_up(arr)
    out = (y - 0.5) * np.log(y) - y + _HALF_LOG_2PI + _stirling_tail(y) - logprod
    return float(out) if out.ndim == 0 else out


def log_gamma_diff(x, y):
    """ln Gamma(x) - ln Gamma(y) without cancellation for large, close x and y."""
    xa = _check_positive(x)
    ya = _check_positive(y)
    xa, ya = np.broadcast_arrays(xa, ya)
    xs, lx = _shift_up(xa)
    ys, ly = _shift_up(ya)
    h = xs - ys
    main = (ys - 0.5) * np.log1p(h / ys) + h * np.log(xs) - h
    out = main + _stirling_tail(xs) - _stirling_tail(ys) - lx + ly
    return float(out) if out.ndim == 0 else out


BARNES_TERMS = 100_000
BARNES_MAX_BETA_SQ = 0.25


def _zeta_tail(s: int, n: int) -> float:
    """Euler-Maclaurin estimate of sum_{k > n} k^-s."""
    return (n ** (1 - s) / (s - 1) - 0.5 * n ** (-s) + s * n ** (-s - 1) / 12.0)


def log_barnes_g_pair(beta_sq: float, n_terms: int = BARNES_TERMS) -> float:
    """ln[G(1 + b) G(1 - b)] as a function of b^2 (real)."""
    b = float(beta_sq)
    if not math.isfinite(b):
        raise InputDomainError("beta_sq must be finite")
    if b > BARNES_MAX_BETA_SQ:
        raise InputDomainError(
            f"beta_sq={b} outside validated range (<= {BARNES_MAX_BETA_SQ})")
    if b == 0.0:
        return 0.0
    n = np.arange(1, n_terms + 1, dtype=float)
    body = float(np.sum(n * np.log1p(-b / (n * n)) + b / n))
    # n ln(1 - b/n^2) + b/n = -b^2/(2n^3) - b^3/(3n^5) - b^4/(4n^7) - ...
    tail = -(b ** 2 / 2.0) * _zeta_tail(3, n_terms) \
        - (b ** 3 / 3.0) * _zeta_tail(5, n_terms) \
        - (b ** 4 / 4.0) * _zeta_tail(7, n_terms)
    return -(1.0 + EULER_GAMMA) * b + body + tail


def barnes_g_pair(beta_sq: float, n_terms: int = BARNES_TERMS) -> float:
    """G(1 + b) G(1 - b) from the Weierstrass product, as a function of b^2."""
    return math.exp(log_barnes_g_pair(beta_sq, n_terms))
