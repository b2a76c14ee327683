"""Toeplitz determinant D_L(lambda) = det(lambda I - G_L): exact and asymptotic.

The asymptotic form is the two-jump Fisher-Hartwig expansion, valid (proven)
for real lambda outside [-1, 1], where beta(lambda) is purely imaginary.  Only
the real-axis fast path is implemented.

The symbol of ``lambda I - G_L`` equals ``lambda + 1`` on the filled arc
``|k| < k_f`` (G's symbol is -1 there) and ``lambda - 1`` elsewhere, so the
per-site growth rate is ``(k_f/pi) ln(lambda + 1) + (1 - k_f/pi) ln(lambda - 1)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InputDomainError, OnCutError
from .fermion1d import _check_kf, build_correlation_matrix
from .numerics import log_abs_det, log_barnes_g_pair


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if math.isnan(lam):
        raise InputDomainError("lambda is NaN")
    if -1.0 <= lam <= 1.0:
        raise OnCutError(f"lambda={lam} lies on the cut [-1, 1]")
    return lam


def beta_of_lambda(lam: float) -> complex:
    """beta = ln((lambda+1)/(lambda-1)) / (2 pi i), principal branch.

    For real lambda off the cut the ratio is positive, so beta is purely
    imaginary; it vanishes as lambda -> +-inf.
    """
    lam = _check_lambda(lam)
    if math.isinf(lam):
        return 0j
    return cmath.log((lam + 1.0) / (lam - 1.0)) / (2j * math.pi)


def beta_squared(lam: float) -> float:
    """Real beta^2 (always <= 0 for real lambda off the cut)."""
    lam = _check_lambda(lam)
    if math.isinf(lam):
        return 0.0
    x = math.log((lam + 1.0) / (lam - 1.0)) / (2.0 * math.pi)
    return -x * x


@dataclass(frozen=True)
class FHPoint:
    lam: float
    k_f: float
    beta: complex
    beta_sq: float


def fh_point(lam: float, k_f: float) -> FHPoint:
    k_f = _check_kf(k_f)
    return FHPoint(float(lam), k_f, beta_of_lambda(lam), beta_squared(lam))


def fh_linear_rate(k_f: float, lam: float) -> float:
    """Per-site coefficient ln F of the asymptotic determinant (log-abs for lambda < -1)."""
    k_f = _check_kf(k_f)
    lam = _check_lambda(lam)
    frac = k_f / math.pi
    return frac * math.log(abs(lam + 1.0)) + (1.0 - frac) * math.log(abs(lam - 1.0))


def fh_log_det(L: int, k_f: float, lam: float) -> float:
    """Asymptotic ln|D_L(lambda)|.

    ``L ln F - 2 beta^2 ln L + 2 ln[G(1+beta) G(1-beta)] - beta^2 ln(2 - 2 cos 2k_f)``
    """
    if int(L) != L or L < 1:
        raise InputDomainError(f"L must be a positive integer, got {L}")
    k_f = _check_kf(k_f)
    lam = _check_lambda(lam)
    jump = 2.0 - 2.0 * math.cos(2.0 * k_f)
    if jump <= 1e-14:
        raise InputDomainError(f"k_f={k_f}: the two jumps merge (singular symbol)")
    b2 = beta_squared(lam)
    return (L * fh_linear_rate(k_f, lam)
            - 2.0 * b2 * math.log(L)
            + 2.0 * log_barnes_g_pair(b2)
            - b2 * math.log(jump))


def exact_log_det(L: int, k_f: float, lam: float) -> float:
    """ln|det(lambda I - G_L)| by LU factorisation."""
    lam = _check_lambda(lam)
    g = build_correlation_matrix(L, k_f)
    _, logabs = log_abs_det(lam * np.eye(g.shape[0]) - g)
    return logabs


def fh_error_scan(L_values, k_f: float, lam: float) -> list[tuple[int, float, float, float]]:
    """Rows ``(L, exact, asymptotic, |exact - asymptotic|)`` on ln D."""
    Ls = [int(L) for L in L_values]
    if not Ls or any(b <= a for a, b in zip(Ls, Ls[1:])):
        raise InputDomainError("L_values must be non-empty and strictly ascending")
    rows = []
    for L in Ls:
        ex = exact_log_det(L, k_f, lam)
        asym = fh_log_det(L, k_f, lam)
        rows.append((L, ex, asym, abs(ex - asym)))
    return rows


def exact_linear_rate(L: int, k_f: float, lam: float) -> float:
    """(ln D_{2L} - ln D_L) / L from exact determinants."""
    return (exact_log_det(2 * L, k_f, lam) - exact_log_det(L, k_f, lam)) / L
