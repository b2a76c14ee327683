"""Block entanglement of the infinite 1D free-fermion chain.

The ground state with Fermi momentum ``k_f`` is described by the Toeplitz
matrix ``G_L`` with entries ``g_{l-m}`` (eigenvalues in [-1, 1]); the block
entropy is a sum of the two-level entropy ``e(1, nu)`` over its spectrum.
``k_f`` is always in radians.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import DegenerateStateError, InputDomainError, SpectrumRangeError
from .numerics import symmetric_eigenvalues

CLAMP_TOL = 1e-9


def _check_kf(k_f: float) -> float:
    k_f = float(k_f)
    if not (0.0 < k_f < math.pi):
        raise InputDomainError(f"k_f must lie in (0, pi), got {k_f}")
    return k_f


def sine_kernel_entry(l, k_f: float):
    """Fourier coefficient g_l of the symbol that is -1 inside the Fermi sea.

    ``g_0 = 1 - 2 k_f / pi`` and ``g_l = -(2/pi) sin(k_f l) / l`` otherwise.
    Accepts an integer or an integer array.
    """
    k_f = _check_kf(k_f)
    l_arr = np.asarray(l)
    safe = np.where(l_arr == 0, 1, l_arr)
    out = np.where(l_arr == 0, 1.0 - 2.0 * k_f / math.pi,
                   -(2.0 / math.pi) * np.sin(k_f * safe) / safe)
    return float(out) if out.ndim == 0 else out


def build_correlation_matrix(L: int, k_f: float) -> np.ndarray:
    """L x L Toeplitz matrix (G_L)_{lm} = g_{l-m}."""
    if int(L) != L or L < 1:
        raise InputDomainError(f"block length must be a positive integer, got {L}")
    L = int(L)
    g = sine_kernel_entry(np.arange(L), k_f)
    idx = np.abs(np.subtract.outer(np.arange(L), np.arange(L)))
    return g[idx]


def entropy_from_spectrum(nus) -> float:
    """Sum of e(1, nu) = -(1+nu)/2 ln((1+nu)/2) - (1-nu)/2 ln((1-nu)/2).

    Values within ``CLAMP_TOL`` outside [-1, 1] are clamped; anything further
    out indicates a broken correlation matrix and raises.
    """
    nu = np.asarray(nus, dtype=float).ravel()
    if nu.size and np.abs(nu).max() > 1.0 + CLAMP_TOL:
        raise SpectrumRangeError(
            f"correlation eigenvalue {np.abs(nu).max():.3e} outside [-1, 1]")
    nu = np.clip(nu, -1.0, 1.0)
    mixed = nu[np.abs(nu) < 1.0 - CLAMP_TOL]
    p = 0.5 * (1.0 + mixed)
    q = 0.5 * (1.0 - mixed)
    s = -(np.sum(p * np.log(p)) + np.sum(q * np.log(q)))
    return max(float(s), 0.0) + 0.0


def segment_entropy(L: int, k_f: float) -> float:
    """Entropy of an L-site block of the infinite chain at Fermi momentum k_f."""
    g = build_correlation_matrix(L, k_f)
    return entropy_from_spectrum(symmetric_eigenvalues(g).values)


def _ordered_map(fn, items, jobs):
    if jobs is None or jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def entropy_scan(L_values, k_f: float, jobs: int = 1) -> list[tuple[int, float]]:
    """Rows ``(L, S)`` for each block length, in the given (ascending) order."""
    Ls = [int(L) for L in L_values]
    if not Ls:
        raise InputDomainError("L_values must be non-empty")
    if any(b <= a for a, b in zip(Ls, Ls[1:])):
        raise InputDomainError("L_values must be strictly ascending")
    _check_kf(k_f)
    values = _ordered_map(lambda L: segment_entropy(L, k_f), Ls, jobs)
    return list(zip(Ls, values))


def local_log_slope(L: int, k_f: float, factor: float = 2.0) -> float:
    """Centred estimate of dS/d(ln L) from blocks of size L/factor and L*factor."""
    lo = int(round(L / factor))
    hi = int(round(L * factor))
    if lo < 1 or lo >= hi:
        raise InputDomainError(f"cannot form a slope window around L={L}")
    return (segment_entropy(hi, k_f) - segment_entropy(lo, k_f)) / math.log(hi / lo)


def ring_occupied_momenta(n_sites: int, n_particles: int) -> np.ndarray:
    """Momenta filled in the unique ground state of a periodic hopping ring.

    Single-particle energies are ``-2 cos k`` with ``k = 2 pi j / n_sites``.
    Raises ``DegenerateStateError`` when the last filled level is degenerate
    with the first empty one.
    """
    if n_sites < 1 or not (0 <= n_particles <= n_sites):
        raise InputDomainError("need n_sites >= 1 and 0 <= n_particles <= n_sites")
    k = 2.0 * math.pi * np.arange(n_sites) / n_sites
    energy = -2.0 * np.cos(k)
    order = np.argsort(energy, kind="stable")
    if 0 < n_particles < n_sites:
        gap = energy[order[n_particles]] - energy[order[n_particles - 1]]
        if gap < 1e-10:
            raise DegenerateStateError(
                f"{n_particles} fermions on {n_sites} sites: degenerate Fermi level")
    return k[order[:n_particles]]


def ring_correlation_matrix(n_sites: int, n_particles: int) -> np.ndarray:
    """Occupation correlation C_{nm} = <c_n^dag c_m> of the ring ground state."""
    ks = ring_occupied_momenta(n_sites, n_particles)
    r = np.subtract.outer(np.arange(n_sites), np.arange(n_sites))
    c = np.exp(1j * np.multiply.outer(r, ks)).sum(axis=-1) / n_sites
    # the filled set is symmetric under k -> -k, so C is real
    return np.ascontiguousarray(c.real)


def ring_entropy(n_sites: int, n_particles: int, sites) -> float:
    """Entropy of an arbitrary set of ring sites from the correlation matrix."""
    sites = np.asarray(sorted(set(int(s) for s in sites)), dtype=int)
    if sites.size and (sites.min() < 0 or sites.max() >= n_sites):
        raise InputDomainError("site index out of range")
    if sites.size == 0:
        return 0.0
    c = ring_correlation_matrix(n_sites, n_particles)[np.ix_(sites, sites)]
    occ = symmetric_eigenvalues(c).values
    return entropy_from_spectrum(2.0 * occ - 1.0)
