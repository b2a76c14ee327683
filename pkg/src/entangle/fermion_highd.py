"""Free fermions in d >= 2 dimensions: cubic blocks of an infinite lattice.

Fermi seas are either a cube ``|k_a| < k_f`` (any d, kernels factorise into
1D sine kernels) or a disk ``|k| < k_f`` (d = 2 only, Bessel kernel).  The
block entropy sums the two-level entropy over ``nu = 2c - 1`` for the
eigenvalues ``c`` of the block correlation matrix ``C_ij = <c_i^dag c_j>``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import j1, roots_legendre

from .errors import CapabilityError, InputDomainError, ResourceError, SpectrumRangeError
from .fermion1d import CLAMP_TOL, entropy_from_spectrum
from .numerics import symmetric_eigenvalues

MAX_BLOCK_SITES = 4096
KINDS = ("cubic", "spherical")


@dataclass(frozen=True)
class FermiSeaRegion:
    d: int
    kind: str
    k_f: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputDomainError(f"unknown Fermi sea kind {self.kind!r}")
        if int(self.d) != self.d or self.d < 1:
            raise InputDomainError(f"dimension must be a positive integer, got {self.d}")
        if not (0.0 < self.k_f < math.pi):
            raise InputDomainError(f"k_f must lie in (0, pi), got {self.k_f}")
        if self.kind == "spherical" and self.d != 2:
            raise CapabilityError("spherical Fermi seas are only supported for d = 2")


@dataclass(frozen=True)
class BlockSpec:
    d: int
    side: int

    def __post_init__(self):
        if int(self.side) != self.side or self.side < 1:
            raise InputDomainError(f"block side must be a positive integer, got {self.side}")
        if self.side ** self.d > MAX_BLOCK_SITES:
            raise ResourceError(
                f"block of {self.side}^{self.d} sites exceeds cap {MAX_BLOCK_SITES}")

    @property
    def n_sites(self) -> int:
        return self.side ** self.d

    def sites(self) -> np.ndarray:
        """Integer coordinates, last axis fastest."""
        grid = itertools.product(range(self.side), repeat=self.d)
        return np.array(list(grid), dtype=int).reshape(-1, self.d)


def _sinc_kernel(r, k_f):
    r = np.asarray(r, dtype=float)
    safe = np.where(r == 0, 1.0, r)
    return np.where(r == 0, k_f / math.pi, np.sin(k_f * safe) / (math.pi * safe))


def _disk_kernel(rho, k_f):
    rho = np.asarray(rho, dtype=float)
    safe = np.where(rho == 0, 1.0, rho)
    return np.where(rho == 0, k_f * k_f / (4.0 * math.pi),
                    k_f * j1(k_f * safe) / (2.0 * math.pi * safe))


def fermi_correlation(region: FermiSeaRegion, r) -> np.ndarray:
    """C(r) = (2 pi)^-d integral over the Fermi sea of exp(i k.r).

    ``r`` has shape (..., d); returns an array of shape (...).
    """
    r = np.asarray(r, dtype=float)
    if r.shape[-1] != region.d:
        raise InputDomainError(f"displacement must have {region.d} components")
    if region.kind == "cubic":
        return np.prod(_sinc_kernel(r, region.k_f), axis=-1)
    return _disk_kernel(np.sqrt(np.sum(r * r, axis=-1)), region.k_f)


def block_correlation_matrix(region: FermiSeaRegion, block: BlockSpec) -> np.ndarray:
    if block.d != region.d:
        raise InputDomainError("block and Fermi sea dimensions differ")
    sites = block.sites()
    disp = sites[:, None, :] - sites[None, :, :]
    return fermi_correlation(region, disp)


def _entropy_from_occupations(c: np.ndarray) -> float:
    if c.size and (c.min() < -CLAMP_TOL or c.max() > 1.0 + CLAMP_TOL):
        raise SpectrumRangeError("occupation eigenvalue outside [0, 1]")
    return entropy_from_spectrum(2.0 * np.clip(c, 0.0, 1.0) - 1.0)


def block_entropy(region: FermiSeaRegion, block: BlockSpec) -> float:
    c = block_correlation_matrix(region, block)
    return _entropy_from_occupations(symmetric_eigenvalues(c).values)


def product_spectrum_entropy(region: FermiSeaRegion, side: int) -> float:
    """Cubic sea only: entropy from the product set of 1D block occupations."""
    if region.kind != "cubic":
        raise CapabilityError("product structure exists only for cubic seas")
    BlockSpec(region.d, side)
    c1 = symmetric_eigenvalues(_sinc_kernel(
        np.subtract.outer(np.arange(side), np.arange(side)), region.k_f)).values
    occ = c1
    for _ in range(region.d - 1):
        occ = np.multiply.outer(occ, c1).ravel()
    return _entropy_from_occupations(occ)


def area_law_scan(region: FermiSeaRegion, L_values) -> list[tuple[int, float, float]]:
    """Rows ``(L, S, S / L^(d-1))``."""
    Ls = [int(L) for L in L_values]
    if not Ls or any(b <= a for a, b in zip(Ls, Ls[1:])):
        raise InputDomainError("L_values must be non-empty and strictly ascending")
    rows = []
    for L in Ls:
        s = block_entropy(region, BlockSpec(region.d, L))
        rows.append((L, s, s / L ** (region.d - 1)))
    return rows


# Surface integral for the leading L^{d-1} ln L coefficient.  Both surfaces
# are lists of flat or curved patches; each patch is (normal(t), dS(t), dims)
# on the parameter cube [0, 1]^dims.

def _cube_faces(d: int, half_width: float):
    faces = []
    side = 2.0 * half_width
    for axis in range(d):
        for sign in (-1.0, 1.0):
            n = np.zeros(d)
            n[axis] = sign

            def normal(t, n=n):
                return np.broadcast_to(n, t.shape[:-1] + (d,))

            def area(t, side=side):
                return np.full(t.shape[:-1], side ** (d - 1))

            faces.append((normal, area, d - 1))
    return faces


def _circle_arcs(k_f: float):
    # quadrant arcs, so |n . n_axis| is smooth on each piece
    arcs = []
    for q in range(4):
        theta0 = 0.5 * math.pi * q

        def normal(t, theta0=theta0):
            th = theta0 + 0.5 * math.pi * t[..., 0]
            return np.stack([np.cos(th), np.sin(th)], axis=-1)

        def area(t):
            return np.full(t.shape[:-1], 0.5 * math.pi * k_f)

        arcs.append((normal, area, 1))
    return arcs


def _patch_nodes(dims: int, n: int):
    x, w = roots_legendre(n)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    pts = np.stack(np.meshgrid(*([x] * dims), indexing="ij"), axis=-1).reshape(-1, dims)
    wts = np.prod(np.stack(np.meshgrid(*([w] * dims), indexing="ij"), axis=-1)
                  .reshape(-1, dims), axis=-1)
    return pts, wts


def widom_surface_integral(region: FermiSeaRegion, nodes: int = 24) -> float:
    """Product Gauss-Legendre evaluation of the double integral of |n_x . n_p|
    over the unit-cube surface and the Fermi surface."""
    d = region.d
    if d not in (2, 3) or (region.kind == "spherical" and d != 2):
        raise CapabilityError(f"no surface quadrature for {region.kind} sea in d={d}")
    real = _cube_faces(d, 0.5)
    fermi = _cube_faces(d, region.k_f) if region.kind == "cubic" else _circle_arcs(region.k_f)
    total = 0.0
    for nx, ax, dx in real:
        tx, wx = _patch_nodes(dx, nodes)
        nxv = nx(tx)
        wxa = wx * ax(tx)
        for npf, ap, dp in fermi:
            tp, wp = _patch_nodes(dp, nodes)
            npv = npf(tp)
            wpa = wp * ap(tp)
            dots = np.abs(nxv @ npv.T)
            total += float(wxa @ dots @ wpa)
    return total


def widom_coefficient(region: FermiSeaRegion, nodes: int = 24) -> float:
    """(1/12) (2 pi)^{1-d} times the double surface integral."""
    return widom_surface_integral(region, nodes) / (12.0 * (2.0 * math.pi) ** (region.d - 1))


def widom_coefficient_analytic(region: FermiSeaRegion) -> float:
    """Closed forms: 2 k_f / (3 pi) for d = 2 (disk or square), k_f^2 / pi^2 for the d = 3 cube."""
    if region.d == 2:
        return 2.0 * region.k_f / (3.0 * math.pi)
    if region.d == 3 and region.kind == "cubic":
        return region.k_f ** 2 / math.pi ** 2
    raise CapabilityError(f"no closed form for {region.kind} sea in d={region.d}")
