"""Gaussian ground states of harmonic chains and their block entropies.

Chain: H = 1/2 sum_n [p_n^2 + m^2 x_n^2 + (x_{n+1} - x_n)^2], so that
omega(k) = sqrt(m^2 + 4 sin^2(k/2)).  Pure modes have symplectic eigenvalue
1/2 and the per-mode entropy is (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import roots_legendre

from .errors import InputDomainError, NumericalContractError, SpectrumRangeError
from .numerics import symmetric_eigenvalues

NU_TOL = 1e-9
QUAD_TOL = 1e-12
QUAD_MAX_NODES = 2 ** 18


@dataclass(frozen=True)
class HarmonicChainSpec:
    """Mass gap ``mass`` and geometry: infinite chain (``n_total=None``) or ring."""

    mass: float
    n_total: Optional[int] = None

    def __post_init__(self):
        if not (self.mass > 0 and math.isfinite(self.mass)):
            raise InputDomainError(f"mass must be positive (zero mode), got {self.mass}")
        if self.n_total is not None and self.n_total < 2:
            raise InputDomainError("a ring needs at least 2 sites")


@dataclass(frozen=True)
class GaussianBosonState:
    x_corr: np.ndarray
    p_corr: np.ndarray

    @property
    def size(self) -> int:
        return self.x_corr.shape[0]

    def block(self, sites) -> "GaussianBosonState":
        idx = np.ix_(sites, sites)
        return GaussianBosonState(self.x_corr[idx], self.p_corr[idx])


def dispersion(k, mass: float):
    return np.sqrt(mass * mass + 4.0 * np.sin(0.5 * np.asarray(k, dtype=float)) ** 2)


def _toeplitz(first_row: np.ndarray) -> np.ndarray:
    n = first_row.shape[0]
    return first_row[np.abs(np.subtract.outer(np.arange(n), np.arange(n)))]


def _chain_integrals(mass: float, distances: np.ndarray, nodes: int):
    # k = m sinh(u) flattens the 1/omega peak of width ~m at k = 0
    u_max = math.asinh(math.pi / mass)
    x, w = roots_legendre(nodes)
    u = 0.5 * u_max * (x + 1.0)
    k = mass * np.sinh(u)
    jac = 0.5 * u_max * w * mass * np.cosh(u)
    om = dispersion(k, mass)
    phase = np.cos(np.multiply.outer(distances, k))
    xr = phase @ (jac / om) / (2.0 * math.pi)
    pr = phase @ (jac * om) / (2.0 * math.pi)
    return xr, pr


def infinite_chain_correlations(mass: float, L: int, tol: float = QUAD_TOL,
                                max_nodes: int = QUAD_MAX_NODES):
    """First rows of X and P for L consecutive sites of the infinite chain.

    Gauss-Legendre node count doubles until every entry moves by less than
    ``tol`` (relative to the largest entry).
    """
    r = np.arange(L, dtype=float)
    nodes = 256
    xr, pr = _chain_integrals(mass, r, nodes)
    while True:
        nodes *= 2
        if nodes > max_nodes:
            raise NumericalContractError(
                f"correlation quadrature not converged at {max_nodes} nodes (m={mass})")
        xn, pn = _chain_integrals(mass, r, nodes)
        dx = np.abs(xn - xr).max() / np.abs(xn).max()
        dp = np.abs(pn - pr).max() / np.abs(pn).max()
        xr, pr = xn, pn
        if max(dx, dp) < tol:
            return xr, pr


def ring_correlations(mass: float, n_total: int, L: int):
    """First rows of X and P from the discrete mode sum on an n_total-site ring."""
    k = 2.0 * math.pi * np.arange(n_total) / n_total
    om = dispersion(k, mass)
    phase = np.cos(np.multiply.outer(np.arange(L, dtype=float), k))
    return phase @ (0.5 / om) / n_total, phase @ (0.5 * om) / n_total


def ground_state_correlations(spec: HarmonicChainSpec, L: int) -> GaussianBosonState:
    """X_{nm} = <x_n x_m>, P_{nm} = <p_n p_m> for L consecutive sites."""
    if int(L) != L or L < 1:
        raise InputDomainError(f"L must be a positive integer, got {L}")
    L = int(L)
    if spec.n_total is None:
        xr, pr = infinite_chain_correlations(spec.mass, L)
    else:
        if L > spec.n_total:
            raise InputDomainError("block larger than the ring")
        xr, pr = ring_correlations(spec.mass, spec.n_total, L)
    return GaussianBosonState(_toeplitz(xr), _toeplitz(pr))


def state_from_normal_modes(omegas, modes) -> GaussianBosonState:
    """Ground state of independent normal modes x' = R^T x with frequencies omega.

    ``modes`` is the orthogonal matrix R whose columns are the mode shapes.
    """
    om = np.asarray(omegas, dtype=float)
    r = np.asarray(modes, dtype=float)
    if np.any(om <= 0):
        raise InputDomainError("normal-mode frequencies must be positive")
    return GaussianBosonState((r * (0.5 / om)) @ r.T, (r * (0.5 * om)) @ r.T)


def symplectic_spectrum(state: GaussianBosonState) -> np.ndarray:
    """nu_i = sqrt(eig(X P)), via the symmetric similar matrix X^1/2 P X^1/2."""
    x = np.asarray(state.x_corr, dtype=float)
    p = np.asarray(state.p_corr, dtype=float)
    if x.shape != p.shape:
        raise InputDomainError("X and P blocks differ in size")
    xe = symmetric_eigenvalues(x, vectors=True)
    if xe.values.min(initial=np.inf) <= 0 or symmetric_eigenvalues(p).values.min(initial=np.inf) <= 0:
        raise InputDomainError("X and P must be positive definite")
    v = xe.vectors
    root = (v * np.sqrt(xe.values)) @ v.T
    nu_sq = symmetric_eigenvalues(root @ p @ root).values
    nu = np.sqrt(np.clip(nu_sq, 0.0, None))
    if nu.size and nu.min() < 0.5 - NU_TOL:
        raise SpectrumRangeError(
            f"symplectic eigenvalue {nu.min():.12f} below 1/2: not a physical state")
    return np.maximum(nu, 0.5)


def boson_entropy(nus) -> float:
    nu = np.asarray(nus, dtype=float).ravel()
    if nu.size and nu.min() < 0.5 - NU_TOL:
        raise SpectrumRangeError(f"symplectic eigenvalue {nu.min()} below 1/2")
    nu = np.maximum(nu, 0.5)
    plus = nu + 0.5
    minus = nu - 0.5
    mixed = minus > 0
    s = np.sum(plus * np.log(plus)) - np.sum(minus[mixed] * np.log(minus[mixed]))
    return max(float(s), 0.0) + 0.0


def chain_entropy(spec: HarmonicChainSpec, L: int) -> float:
    return boson_entropy(symplectic_spectrum(ground_state_correlations(spec, L)))


def boson_entropy_scan(spec: HarmonicChainSpec, L_values) -> list[tuple[int, float]]:
    Ls = [int(L) for L in L_values]
    if not Ls or any(b <= a for a, b in zip(Ls, Ls[1:])):
        raise InputDomainError("L_values must be non-empty and strictly ascending")
    if spec.n_total is None:
        # one quadrature for the largest block serves every smaller one
        full = ground_state_correlations(spec, Ls[-1])
        return [(L, boson_entropy(symplectic_spectrum(full.block(np.arange(L)))))
                for L in Ls]
    return [(L, chain_entropy(spec, L)) for L in Ls]
