"""Brute-force Hilbert-space engines used as ground truth at small sizes.

States are dense vectors over 2^n basis states indexed by bitmask (bit i is
mode/spin i).  Fermionic states use the ordering
|b> = c_{i1}^dag c_{i2}^dag ... |0> with i1 < i2 < ...

Spectral work here goes through LAPACK on purpose, so that the oracle
shares no code path with the correlation-matrix methods it checks.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
import scipy.sparse as sp

from .errors import (CapabilityError, DegenerateStateError, InputDomainError,
                     NumericalContractError, ResourceError)

MAX_MODES = 14
MAX_AFM_N = 4
MAX_FM_TOTAL = 10
MAX_RING_SITES = 12


def _n_modes(dim: int) -> int:
    n = int(round(math.log2(dim))) if dim > 0 else -1
    if n < 0 or 2 ** n != dim:
        raise InputDomainError(f"dimension {dim} is not a power of two")
    if n > MAX_MODES:
        raise ResourceError(f"{n} modes exceeds oracle cap {MAX_MODES}")
    return n


def _bits(n: int) -> np.ndarray:
    """Occupation table: row b holds the bits of basis index b."""
    idx = np.arange(2 ** n)
    return (idx[:, None] >> np.arange(n)) & 1


def creation_sign_table(n: int, mode: int) -> np.ndarray:
    """(-1)^(number of occupied modes below ``mode``) per basis state."""
    below = _bits(n)[:, :mode].sum(axis=1)
    return 1 - 2 * (below & 1)


def apply_creation(state: np.ndarray, orbital) -> np.ndarray:
    """Apply sum_i orbital[i] c_i^dag to a Fock-space vector."""
    state = np.asarray(state, dtype=complex)
    n = _n_modes(state.size)
    out = np.zeros_like(state)
    idx = np.arange(state.size)
    for mode in range(n):
        amp = orbital[mode]
        if amp == 0:
            continue
        empty = ((idx >> mode) & 1) == 0
        src = idx[empty]
        out[src | (1 << mode)] += amp * creation_sign_table(n, mode)[src] * state[src]
    return out


def slater_state(orbitals) -> np.ndarray:
    """Fock vector of prod_j (sum_i orbitals[j, i] c_i^dag) |0>."""
    orbitals = np.atleast_2d(np.asarray(orbitals, dtype=complex))
    n = orbitals.shape[1]
    if n > MAX_MODES:
        raise ResourceError(f"{n} modes exceeds oracle cap {MAX_MODES}")
    state = np.zeros(2 ** n, dtype=complex)
    state[0] = 1.0
    for orb in orbitals[::-1]:
        state = apply_creation(state, orb)
    norm = np.linalg.norm(state)
    if norm < 1e-12:
        raise InputDomainError("orbitals are linearly dependent")
    return state / norm


def _reorder_signs(n: int, order) -> np.ndarray:
    """Parity of re-sorting the occupied modes of each basis state into ``order``."""
    pos = np.empty(n, dtype=int)
    pos[np.asarray(order)] = np.arange(n)
    bits = _bits(n)
    parity = np.zeros(2 ** n, dtype=int)
    for i in range(n):
        for j in range(i + 1, n):
            if pos[i] > pos[j]:
                parity ^= bits[:, i] & bits[:, j]
    return 1 - 2 * parity


def _permute_basis(n: int, order) -> np.ndarray:
    """New basis index for each old index when mode order[k] moves to slot k."""
    bits = _bits(n)[:, np.asarray(order)]
    return (bits << np.arange(n)).sum(axis=1)


def _subsystem_order(n: int, subsystem_bits: int):
    if subsystem_bits < 0 or subsystem_bits >= 2 ** n:
        raise InputDomainError("subsystem bitmask outside the mode range")
    sys_modes = [i for i in range(n) if (subsystem_bits >> i) & 1]
    env_modes = [i for i in range(n) if not (subsystem_bits >> i) & 1]
    return sys_modes, env_modes


def partial_trace(state_or_rho, subsystem_bits: int, fermionic: bool = False) -> np.ndarray:
    """Reduced density matrix of the modes flagged in ``subsystem_bits``.

    Accepts a state vector or a density matrix.  Subsystem modes are moved in
    front of the environment; for fermions each basis state picks up the
    parity of that reordering before the environment index is summed out:
    rho_s[s1, s2] = sum_e c_{e,s1} c*_{e,s2}.
    """
    arr = np.asarray(state_or_rho, dtype=complex)
    dim = arr.shape[0]
    n = _n_modes(dim)
    sys_modes, env_modes = _subsystem_order(n, subsystem_bits)
    order = sys_modes + env_modes
    new_index = _permute_basis(n, order)
    signs = _reorder_signs(n, order) if fermionic else np.ones(dim, dtype=int)
    ns, ne = len(sys_modes), len(env_modes)
    if arr.ndim == 1:
        psi = np.zeros(dim, dtype=complex)
        psi[new_index] = signs * arr
        m = psi.reshape(2 ** ne, 2 ** ns)
        return m.T @ m.conj()
    if arr.ndim == 2 and arr.shape == (dim, dim):
        rho = np.zeros_like(arr)
        rho[np.ix_(new_index, new_index)] = np.outer(signs, signs) * arr
        r4 = rho.reshape(2 ** ne, 2 ** ns, 2 ** ne, 2 ** ns)
        return np.einsum("aiaj->ij", r4)
    raise InputDomainError("expected a state vector or a square density matrix")


def vn_entropy(rho) -> float:
    """-tr(rho ln rho) with zero eigenvalues skipped."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InputDomainError("density matrix must be square")
    if np.abs(rho - rho.conj().T).max(initial=0.0) > 1e-10:
        raise NumericalContractError("density matrix is not Hermitian")
    p = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if p.size and p.min() < -1e-10:
        raise NumericalContractError(f"negative eigenvalue {p.min():.3e} in density matrix")
    if abs(p.sum() - 1.0) > 1e-10:
        raise NumericalContractError(f"density matrix trace {p.sum()} != 1")
    p = p[p > 1e-15]
    return max(float(-np.sum(p * np.log(p))), 0.0) + 0.0


def _mask(sites) -> int:
    return sum(1 << int(s) for s in set(sites))


def ring_ground_state(n_sites: int, n_particles: int) -> np.ndarray:
    """Filled plane waves exp(i k n)/sqrt(N) of the periodic hopping ring."""
    if n_sites > MAX_RING_SITES:
        raise ResourceError(f"{n_sites} sites exceeds oracle cap {MAX_RING_SITES}")
    if n_sites < 1 or not (0 <= n_particles <= n_sites):
        raise InputDomainError("need 0 <= n_particles <= n_sites")
    j = np.arange(n_sites)
    energy = -2.0 * np.cos(2.0 * math.pi * j / n_sites)
    order = np.argsort(energy, kind="stable")
    if 0 < n_particles < n_sites:
        if energy[order[n_particles]] - energy[order[n_particles - 1]] < 1e-10:
            raise DegenerateStateError(
                f"ring of {n_sites} sites with {n_particles} fermions has a degenerate ground state")
    if n_particles == 0:
        state = np.zeros(2 ** n_sites, dtype=complex)
        state[0] = 1.0
        return state
    ks = 2.0 * math.pi * j[order[:n_particles]] / n_sites
    orbitals = np.exp(1j * np.outer(ks, j)) / math.sqrt(n_sites)
    return slater_state(orbitals)


def hopping_hamiltonian(n_sites: int) -> sp.csr_matrix:
    """Many-body -sum_n (c_{n+1}^dag c_n + h.c.) on a periodic ring, Fock basis."""
    n = n_sites
    dim = 2 ** n
    rows, cols, vals = [], [], []
    idx = np.arange(dim)
    bonds = [(i, (i + 1) % n) for i in range(n)] if n > 2 else [(0, 1)] if n == 2 else []
    for a, b in bonds:
        for src_mode, dst_mode in ((a, b), (b, a)):
            # c_dst^dag c_src
            ok = (((idx >> src_mode) & 1) == 1) & (((idx >> dst_mode) & 1) == 0)
            src = idx[ok]
            mid = src ^ (1 << src_mode)
            s1 = creation_sign_table(n, src_mode)[mid]
            dst = mid | (1 << dst_mode)
            s2 = creation_sign_table(n, dst_mode)[mid]
            rows.append(dst)
            cols.append(src)
            vals.append(-(s1 * s2).astype(float))
    if not rows:
        return sp.csr_matrix((dim, dim))
    return sp.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                         shape=(dim, dim))


def exact_fermion_ring_entropy(n_sites: int, n_particles: int, subsystem_bits: int) -> float:
    psi = ring_ground_state(n_sites, n_particles)
    return vn_entropy(partial_trace(psi, subsystem_bits, fermionic=True))


def _spin_ops(n_spins: int):
    """Sparse S^z, S^+ for each spin of an n-spin register (bit 1 = up)."""
    dim = 2 ** n_spins
    idx = np.arange(dim)
    sz, splus = [], []
    for i in range(n_spins):
        up = (idx >> i) & 1
        sz.append(sp.diags(up - 0.5, format="csr"))
        src = idx[up == 0]
        splus.append(sp.csr_matrix((np.ones(src.size), (src | (1 << i), src)), shape=(dim, dim)))
    return sz, splus


def _dot_total(group_a, group_b, sz, splus):
    """(sum_a S_a) . (sum_b S_b) as a sparse matrix."""
    za = sum(sz[i] for i in group_a)
    zb = sum(sz[i] for i in group_b)
    pa = sum(splus[i] for i in group_a)
    pb = sum(splus[i] for i in group_b)
    return za @ zb + 0.5 * (pa @ pb.T + pa.T @ pb)


def afm_hamiltonian(n: int, j_a: float = 1.0, j_b: float = 1.0, j_0: float = 1.0):
    """-J_A S_A^2 - J_B S_B^2 + J_0 S_A . S_B; A = spins 0..n-1, B = n..2n-1."""
    if n < 1 or n > MAX_AFM_N:
        raise ResourceError(f"AFM oracle supports 1 <= n <= {MAX_AFM_N}")
    sz, splus = _spin_ops(2 * n)
    a = list(range(n))
    b = list(range(n, 2 * n))
    return (-j_a * _dot_total(a, a, sz, splus) - j_b * _dot_total(b, b, sz, splus)
            + j_0 * _dot_total(a, b, sz, splus)).tocsr()


def afm_ground_state(n: int) -> np.ndarray:
    """Unique ground state, found by dense diagonalisation in the S^z = 0 sector."""
    h = afm_hamiltonian(n)
    idx = np.arange(2 ** (2 * n))
    popcount = ((idx[:, None] >> np.arange(2 * n)) & 1).sum(axis=1)
    sector = idx[popcount == n]
    hs = h[sector][:, sector].toarray()
    w, v = np.linalg.eigh(hs)
    if len(w) > 1 and w[1] - w[0] < 1e-8:
        raise DegenerateStateError("AFM ground state is degenerate")
    psi = np.zeros(idx.size, dtype=complex)
    psi[sector] = v[:, 0]
    return psi


def exact_afm_entropy(n: int, n1: int) -> float:
    """Entropy of n1 A-spins plus n1 B-spins in the AFM ground state."""
    if not (0 <= n1 <= n):
        raise InputDomainError("need 0 <= n1 <= n")
    psi = afm_ground_state(n)
    return vn_entropy(partial_trace(psi, _mask(list(range(n1)) + list(range(n, n + n1)))))


def dicke_state(total: int, n_up: int) -> np.ndarray:
    """|S = total/2, M = n_up - total/2>: uniform superposition of n_up up spins."""
    state = np.zeros(2 ** total)
    for ups in itertools.combinations(range(total), n_up):
        state[_mask(ups)] = 1.0
    return state / np.linalg.norm(state)


def fm_mixture(total: int) -> np.ndarray:
    """Equal mixture of the total + 1 fully polarised multiplet states."""
    if total < 1 or total > MAX_FM_TOTAL:
        raise ResourceError(f"FM oracle supports 1 <= total <= {MAX_FM_TOTAL}")
    rho = np.zeros((2 ** total, 2 ** total))
    for n_up in range(total + 1):
        v = dicke_state(total, n_up)
        rho += np.outer(v, v)
    return rho / (total + 1)


def exact_fm_entropy(total: int, sub1: int) -> float:
    """(E_1 + E_2 - E_0) / 2 for the first ``sub1`` spins versus the rest."""
    if not (0 <= sub1 <= total):
        raise InputDomainError("need 0 <= sub1 <= total")
    rho = fm_mixture(total)
    mask1 = _mask(range(sub1))
    mask2 = _mask(range(sub1, total))
    e0 = vn_entropy(rho)
    e1 = vn_entropy(partial_trace(rho, mask1)) if sub1 else 0.0
    e2 = vn_entropy(partial_trace(rho, mask2)) if sub1 < total else 0.0
    if sub1 == 0:
        e2 = e0
    if sub1 == total:
        e1 = e0
    return 0.5 * (e1 + e2 - e0)


def exact_spin_ground_entropy(model: str, **partition) -> float:
    """Dispatch: ``model="afm"`` with n, n1 or ``model="fm"`` with total, sub1."""
    if model == "afm":
        return exact_afm_entropy(partition["n"], partition["n1"])
    if model == "fm":
        return exact_fm_entropy(partition["total"], partition["sub1"])
    raise CapabilityError(f"unknown spin model {model!r}")


def two_mode_state(omega_plus: float, omega_minus: float):
    """X and P of two oscillators whose normal modes are (x1 +- x2)/sqrt(2)."""
    if omega_plus <= 0 or omega_minus <= 0:
        raise InputDomainError("frequencies must be positive")
    ip = 0.25 * (1.0 / omega_plus + 1.0 / omega_minus)
    im = 0.25 * (1.0 / omega_plus - 1.0 / omega_minus)
    pp = 0.25 * (omega_plus + omega_minus)
    pm = 0.25 * (omega_plus - omega_minus)
    return np.array([[ip, im], [im, ip]]), np.array([[pp, pm], [pm, pp]])


def two_mode_nu(omega_plus: float, omega_minus: float) -> float:
    """Symplectic eigenvalue of one oscillator of the pair: (sqrt(r) + 1/sqrt(r)) / 4."""
    r = math.sqrt(omega_plus / omega_minus)
    return 0.25 * (r + 1.0 / r)
