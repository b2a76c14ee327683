"""Entanglement in long-range ordered spin states.

AFM: two ferromagnetic sublattices of N spins each, coupled into a total
singlet.  The subsystem holds ``n1`` spins of *each* sublattice (2*n1 sites),
and its reduced density matrix is diagonal in the subsystem spin ``S1`` with
eigenvalue ``lambda^2(S1)`` of multiplicity ``2 S1 + 1``.

FM: the (N+1)-fold degenerate fully polarised multiplet taken as an equal
mixture; entanglement is half the mutual information.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InputDomainError
from .numerics import log_gamma_diff


def _check_afm(n: int, n1: int) -> tuple[int, int]:
    if int(n) != n or int(n1) != n1:
        raise InputDomainError("n and n1 must be integers")
    n, n1 = int(n), int(n1)
    if n < 1 or n1 < 0 or n1 > n:
        raise InputDomainError(f"need n >= 1 and 0 <= n1 <= n, got n={n}, n1={n1}")
    return n, n1


def _afm_log_lambda_sq(n: int, n1: int, s1: np.ndarray) -> np.ndarray:
    a = n - n1
    s1 = np.asarray(s1, dtype=float)
    # (N+1) [a! n1!]^2 / [(a-S)! (a+S+1)! (n1-S)! (n1+S+1)!], each ratio as a
    # log-Gamma difference; a probability, so rounding above 0 is clipped
    log_l2 = (math.log(n + 1)
            + log_gamma_diff(a + 1.0, a - s1 + 1.0)
            + log_gamma_diff(a + 1.0, a + s1 + 2.0)
            + log_gamma_diff(n1 + 1.0, n1 - s1 + 1.0)
            + log_gamma_diff(n1 + 1.0, n1 + s1 + 2.0))
    return np.minimum(log_l2, 0.0)


def afm_lambda_sq(n: int, n1: int, s1: int) -> float:
    """Reduced-density-matrix eigenvalue for subsystem spin ``s1``.

    Returns 0 for ``s1 > min(n1, n - n1)`` (no such sector).
    """
    n, n1 = _check_afm(n, n1)
    if int(s1) != s1 or s1 < 0:
        raise InputDomainError(f"s1 must be a non-negative integer, got {s1}")
    if s1 > min(n1, n - n1):
        return 0.0
    return float(np.exp(_afm_log_lambda_sq(n, n1, np.array([s1]))[0]))


def afm_spectrum(n: int, n1: int) -> tuple[np.ndarray, np.ndarray]:
    """All sectors: ``(s1 values, lambda^2 values)``."""
    n, n1 = _check_afm(n, n1)
    s1 = np.arange(min(n1, n - n1) + 1)
    return s1, np.exp(_afm_log_lambda_sq(n, n1, s1))


def afm_entropy(n: int, n1: int) -> float:
    """-sum_S (2S+1) lambda^2 ln lambda^2, summed in ascending S."""
    n, n1 = _check_afm(n, n1)
    if n1 == 0:
        return 0.0
    s1 = np.arange(min(n1, n - n1) + 1)
    log_l2 = _afm_log_lambda_sq(n, n1, s1)
    weight = (2.0 * s1 + 1.0) * np.exp(log_l2)
    return max(float(-np.sum(weight * log_l2)), 0.0) + 0.0


def afm_entropy_asymptotic(n: int, n1: int) -> float:
    """Closed form ln(n1 - n1^2/n + sqrt(pi (n - n1) n1 / n) / 2)."""
    n, n1 = _check_afm(n, n1)
    if n1 == 0 or n1 == n:
        raise InputDomainError("asymptotic form needs 1 <= n1 <= n - 1")
    return math.log(n1 - n1 * n1 / n + 0.5 * math.sqrt(math.pi * (n - n1) * n1 / n))


def fm_entropy(total: int, sub1: int) -> float:
    """[ln(N1 + 1) + ln(N2 + 1) - ln(N + 1)] / 2 with N2 = N - N1."""
    if int(total) != total or int(sub1) != sub1:
        raise InputDomainError("total and sub1 must be integers")
    if total < 0 or not (0 <= sub1 <= total):
        raise InputDomainError(f"need 0 <= sub1 <= total, got total={total}, sub1={sub1}")
    sub2 = total - sub1
    return 0.5 * (math.log1p(sub1) + math.log1p(sub2) - math.log1p(total))
