"""Least-squares scaling fits S = a ln L + b and relatives."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InputDomainError

MIN_POINTS = 3


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    rms_residual: float
    n_points: int

    def predict(self, L):
        return self.slope * np.log(np.asarray(L, dtype=float)) + self.intercept

    def to_dict(self) -> dict:
        return asdict(self)


def _split(points):
    pts = [(float(L), float(s)) for L, s in points]
    if len(pts) < MIN_POINTS:
        raise InputDomainError(f"a scaling fit needs at least {MIN_POINTS} points, got {len(pts)}")
    L = np.array([p[0] for p in pts])
    s = np.array([p[1] for p in pts])
    if np.any(L <= 0) or not np.all(np.isfinite(s)):
        raise InputDomainError("fit points need L > 0 and finite values")
    if np.unique(L).size != L.size:
        raise InputDomainError("fit points need distinct L")
    return L, s


def _lstsq(columns, y):
    a = np.column_stack(columns)
    coef, *_ = np.linalg.lstsq(a, y, rcond=None)
    resid = y - a @ coef
    return coef, math.sqrt(float(np.mean(resid * resid)))


def fit_log(points) -> ScalingFit:
    """Ordinary least squares of S against ln L."""
    L, s = _split(points)
    x = np.log(L)
    (a, b), rms = _lstsq([x, np.ones_like(x)], s)
    return ScalingFit(float(a), float(b), rms, int(L.size))


def fit_area_log(points, d: int) -> ScalingFit:
    """``fit_log`` after dividing S by L^(d-1)."""
    if int(d) != d or d < 1:
        raise InputDomainError(f"dimension must be a positive integer, got {d}")
    L, s = _split(points)
    return fit_log(list(zip(L, s / L ** (int(d) - 1))))


def fit_linear_log(points) -> tuple[float, ScalingFit]:
    """S = c L + a ln L + b.  Returns ``(c, fit of the ln L part)``."""
    L, s = _split(points)
    if L.size < 4:
        raise InputDomainError("a linear-plus-log fit needs at least 4 points")
    x = np.log(L)
    (c, a, b), rms = _lstsq([L, x, np.ones_like(x)], s)
    return float(c), ScalingFit(float(a), float(b), rms, int(L.size))
