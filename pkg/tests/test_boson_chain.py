import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from entangle.boson_chain import (GaussianBosonState, HarmonicChainSpec, boson_entropy,
                                  boson_entropy_scan, chain_entropy, dispersion,
                                  ground_state_correlations, infinite_chain_correlations,
                                  ring_correlations, state_from_normal_modes,
                                  symplectic_spectrum)
from entangle.errors import InputDomainError, SpectrumRangeError
from entangle.oracle import two_mode_nu, two_mode_state


def _quad_rows(mass, r):
    # (1/2 pi) int_0^pi cos(kr) omega^{+-1} dk, adaptive quadrature
    def x_int(k):
        return math.cos(k * r) / dispersion(k, mass)

    def p_int(k):
        return math.cos(k * r) * dispersion(k, mass)

    pts = [min(mass, 1.0)]
    xr = quad(x_int, 0, math.pi, points=pts, limit=500, epsabs=1e-13, epsrel=1e-12)[0]
    pr = quad(p_int, 0, math.pi, limit=500, epsabs=1e-13, epsrel=1e-12)[0]
    return xr / (2 * math.pi), pr / (2 * math.pi)


def test_dispersion_examples():
    assert dispersion(0.0, 0.7) == 0.7
    assert dispersion(math.pi, 1e-12) == pytest.approx(2.0)
    assert dispersion(math.pi / 2, 1.0) == pytest.approx(math.sqrt(3))


def test_spec_validation():
    for m in (0.0, -1.0, math.nan):
        with pytest.raises(InputDomainError):
            HarmonicChainSpec(m)
    with pytest.raises(InputDomainError):
        HarmonicChainSpec(1.0, n_total=1)


@pytest.mark.parametrize("mass", [1.0, 0.1, 1e-3])
def test_quadrature_matches_adaptive(mass):
    xr, pr = infinite_chain_correlations(mass, 6)
    for r in range(6):
        qx, qp = _quad_rows(mass, r)
        assert xr[r] == pytest.approx(qx, abs=1e-10)
        assert pr[r] == pytest.approx(qp, abs=1e-10)


def test_decoupled_limit():
    m = 1e4
    st_ = ground_state_correlations(HarmonicChainSpec(m), 3)
    assert st_.x_corr[0, 0] == pytest.approx(1 / (2 * m), rel=1e-6)
    assert st_.p_corr[0, 0] == pytest.approx(m / 2, rel=1e-6)
    assert abs(st_.x_corr[0, 1]) < 1e-10 and abs(st_.p_corr[0, 1]) / m < 1e-6


def test_single_site_mixed():
    st_ = ground_state_correlations(HarmonicChainSpec(1.0), 1)
    qx, qp = _quad_rows(1.0, 0)
    nu = symplectic_spectrum(st_)[0]
    assert nu == pytest.approx(math.sqrt(qx * qp), abs=1e-12)
    assert nu > 0.5


@pytest.mark.parametrize("n_total,mass", [(2, 0.3), (9, 1e-2), (40, 0.5)])
def test_whole_ring_is_pure(n_total, mass):
    st_ = ground_state_correlations(HarmonicChainSpec(mass, n_total), n_total)
    ev = np.linalg.eigvals(st_.x_corr @ st_.p_corr)
    assert np.abs(ev - 0.25).max() < 1e-9
    nu = symplectic_spectrum(st_)
    assert np.abs(nu - 0.5).max() < 1e-9
    assert boson_entropy(nu) < 1e-7


def test_ring_long_limit_matches_infinite_chain():
    xr, pr = ring_correlations(0.2, 4000, 5)
    xi, pi_ = infinite_chain_correlations(0.2, 5)
    assert np.allclose(xr, xi, atol=1e-10) and np.allclose(pr, pi_, atol=1e-10)


@pytest.mark.parametrize("ratio", [1.0, 2.0, 10.0, 100.0])
def test_two_mode_closed_form(ratio):
    x, p = two_mode_state(ratio, 1.0)
    nu = symplectic_spectrum(GaussianBosonState(x[:1, :1], p[:1, :1]))
    assert nu[0] == pytest.approx(two_mode_nu(ratio, 1.0), abs=1e-10)
    assert boson_entropy(symplectic_spectrum(GaussianBosonState(x, p))) < 1e-7


def test_two_mode_example_values():
    assert two_mode_nu(2.0, 1.0) == pytest.approx(0.530330, abs=1e-6)
    # (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2) at nu = 3/(4 sqrt 2), 30-digit evaluation
    assert boson_entropy([two_mode_nu(2.0, 1.0)]) == pytest.approx(0.136807769020826, abs=1e-12)


def test_normal_mode_builder_matches_two_mode():
    r = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)
    st_ = state_from_normal_modes([3.0, 0.5], r)
    x, p = two_mode_state(3.0, 0.5)
    assert np.allclose(st_.x_corr, x) and np.allclose(st_.p_corr, p)


def test_block_diagonal_union():
    a = GaussianBosonState(*two_mode_state(2.0, 1.0)).block([0])
    b = GaussianBosonState(*two_mode_state(10.0, 1.0)).block([0])
    z = np.zeros((1, 1))
    joint = GaussianBosonState(np.block([[a.x_corr, z], [z, b.x_corr]]),
                               np.block([[a.p_corr, z], [z, b.p_corr]]))
    got = symplectic_spectrum(joint)
    want = sorted([symplectic_spectrum(a)[0], symplectic_spectrum(b)[0]])
    assert np.allclose(got, want, atol=1e-12)


def test_entropy_edge_cases():
    assert boson_entropy([0.5, 0.5]) == 0.0
    assert boson_entropy([0.5 - 1e-10]) == 0.0
    with pytest.raises(SpectrumRangeError):
        boson_entropy([0.4])


def test_unphysical_state_rejected():
    with pytest.raises(SpectrumRangeError):
        symplectic_spectrum(GaussianBosonState(np.eye(2) * 0.1, np.eye(2) * 0.1))
    with pytest.raises(InputDomainError):
        symplectic_spectrum(GaussianBosonState(-np.eye(2), np.eye(2)))


@given(st.floats(0.01, 3.0), st.integers(2, 30))
def test_truncation_mixes(mass, L):
    st_ = ground_state_correlations(HarmonicChainSpec(mass, n_total=L + 7), L)
    assert symplectic_spectrum(st_).max() > 0.5 + 1e-6


@pytest.mark.parametrize("L", [1, 5, 13])
def test_ring_complement_symmetry(L):
    spec = HarmonicChainSpec(0.05, n_total=20)
    assert chain_entropy(spec, L) == pytest.approx(chain_entropy(spec, 20 - L), abs=1e-7)


def test_large_mass_near_product():
    for L, s in boson_entropy_scan(HarmonicChainSpec(50.0), [1, 4, 10]):
        assert s < 1e-3


def test_massless_scan_increasing_concave():
    rows = boson_entropy_scan(HarmonicChainSpec(1e-5), [8, 16, 24, 32, 40, 48, 56, 64])
    s = np.array([r[1] for r in rows])
    assert np.all(np.diff(s) > 0)
    assert np.all(np.diff(s, 2) < 0)


def test_gap_suppresses_entanglement():
    assert chain_entropy(HarmonicChainSpec(1e-3), 32) < chain_entropy(HarmonicChainSpec(1e-5), 32)


def test_scan_sub_blocks_match_direct():
    spec = HarmonicChainSpec(0.01)
    for L, s in boson_entropy_scan(spec, [3, 9, 20]):
        assert s == pytest.approx(chain_entropy(spec, L), abs=1e-10)


def test_mass_scan_slope():
    # 1/L << m << 1: S grows like -(1/3) ln m
    masses = np.geomspace(0.1, 0.4, 5)
    s = [chain_entropy(HarmonicChainSpec(m), 64) for m in masses]
    slope = np.polyfit(-np.log(masses), s, 1)[0]
    assert 0.25 <= slope <= 0.40
