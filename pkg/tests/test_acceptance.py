"""Acceptance gate: one test per criterion at its stated tolerance.

Each criterion records a PASS/FAIL line; the lines are printed in the pytest
terminal summary and also when this file is run as a script.
"""

import math
import time

import numpy as np
import pytest

from entangle.boson_chain import (GaussianBosonState, HarmonicChainSpec, boson_entropy,
                                  boson_entropy_scan, symplectic_spectrum)
from entangle.fermion1d import entropy_scan, local_log_slope, ring_entropy, segment_entropy
from entangle.fermion_highd import (BlockSpec, FermiSeaRegion, area_law_scan, block_entropy,
                                    product_spectrum_entropy, widom_coefficient,
                                    widom_coefficient_analytic)
from entangle.fisher_hartwig import exact_linear_rate, fh_error_scan
from entangle.fitting import fit_area_log, fit_log
from entangle.oracle import (exact_fermion_ring_entropy, exact_fm_entropy, two_mode_nu,
                             two_mode_state)
from entangle.spin_order import afm_entropy, afm_entropy_asymptotic, afm_spectrum, fm_entropy

RESULTS = {}


def _record(number, title, ok, detail):
    RESULTS[number] = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title} | {detail}"
    print(RESULTS[number])
    assert ok, RESULTS[number]


def _mask(sites):
    return sum(1 << s for s in sites)


def test_01_fermion_log_law():
    t0 = time.perf_counter()
    Ls = [64, 128, 192, 256, 384, 512, 768, 1024]
    half = fit_log(entropy_scan(Ls, math.pi / 2)).slope
    quarter = fit_log(entropy_scan(Ls, math.pi / 4)).slope
    elapsed = time.perf_counter() - t0
    ok = abs(half - 1 / 3) <= 0.01 and abs(quarter - 1 / 3) <= 0.02 and elapsed <= 180
    _record(1, "1D fermion log law", ok,
            f"slope(pi/2)={half:.6f}, slope(pi/4)={quarter:.6f}, {elapsed:.1f}s")


def test_02_single_site():
    err = abs(segment_entropy(1, math.pi / 2) - math.log(2))
    _record(2, "single-site exactness", err <= 1e-12, f"|S - ln 2|={err:.2e}")


def test_03_oracle_equivalence():
    t0 = time.perf_counter()
    e6 = abs(exact_fermion_ring_entropy(6, 3, _mask([0, 1, 2])) - ring_entropy(6, 3, [0, 1, 2]))
    e8 = abs(exact_fermion_ring_entropy(8, 3, _mask([0, 1, 2, 3])) - ring_entropy(8, 3, [0, 1, 2, 3]))
    elapsed = time.perf_counter() - t0
    _record(3, "correlation matrix vs Fock partial trace", max(e6, e8) <= 1e-8 and elapsed < 30,
            f"6-site err={e6:.1e}, 8-site err={e8:.1e}, {elapsed:.1f}s")


def test_04_validity_breakdown():
    good = local_log_slope(64, math.pi / 2)
    bad = local_log_slope(64, 0.02)
    ok = abs(good - 1 / 3) <= 0.02 and abs(bad - 1 / 3) > 0.05
    _record(4, "log-law breakdown at small 2L sin k_f", ok,
            f"slope(pi/2)={good:.5f} (dev {abs(good - 1 / 3):.4f}), "
            f"slope(0.02)={bad:.5f} (dev {abs(bad - 1 / 3):.4f}, need > 0.05)")


def test_05_fisher_hartwig():
    errs = [r[3] for r in fh_error_scan([16, 32, 64, 128, 256], math.pi / 2, 2.0)]
    decreasing = all(b < a for a, b in zip(errs, errs[1:]))
    rate = exact_linear_rate(256, math.pi / 2, 2.0)
    rate_err = abs(rate - math.log(math.sqrt(3)))
    _record(5, "Fisher-Hartwig accuracy", decreasing and rate_err <= 1e-3,
            "abs_err=" + ",".join(f"{e:.2e}" for e in errs) + f"; rate={rate:.6f} (err {rate_err:.1e})")


def test_06_afm_equal_partition():
    t0 = time.perf_counter()
    offset = afm_entropy(10 ** 4, 5 * 10 ** 3) - math.log(10 ** 4)
    gap = abs(afm_entropy(2048, 1024) - afm_entropy_asymptotic(2048, 1024))
    elapsed = time.perf_counter() - t0
    ok = -1.40 <= offset <= -1.375 and gap < 0.02 and elapsed < 30
    _record(6, "AFM equal partition", ok,
            f"E - ln N = {offset:.5f} (need [-1.40, -1.375]); gap(2048) = {gap:.4f} (need < 0.02)")


def test_07_afm_unequal_partition():
    e = afm_entropy(10 ** 6, 10 ** 3)
    want = math.log(10 ** 3) - 1e-3
    _record(7, "AFM unequal partition", abs(e - want) <= 5e-4,
            f"E = {e:.5f}, target {want:.5f} +- 5e-4")


def test_08_afm_normalization():
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 4097))
        n1 = int(rng.integers(0, n + 1))
        s, l2 = afm_spectrum(n, n1)
        worst = max(worst, abs(float(np.sum((2 * s + 1) * l2)) - 1.0))
    _record(8, "AFM normalization", worst <= 1e-10, f"max |trace - 1| = {worst:.1e}")


def test_09_fm_slope():
    ms = [2 ** k for k in range(4, 17)]
    slope = fit_log([(m, fm_entropy(2 * m, m)) for m in ms]).slope
    worst = max(abs(exact_fm_entropy(t, s) - fm_entropy(t, s))
                for t in range(1, 11) for s in range(t + 1))
    _record(9, "FM half-log slope", abs(slope - 0.5) <= 0.01 and worst <= 1e-8,
            f"slope = {slope:.5f}; oracle max err = {worst:.1e}")


def test_10_boson_two_mode():
    worst_nu, worst_pure = 0.0, 0.0
    for ratio in (1.0, 2.0, 10.0, 100.0):
        x, p = two_mode_state(ratio, 1.0)
        nu = symplectic_spectrum(GaussianBosonState(x[:1, :1], p[:1, :1]))[0]
        worst_nu = max(worst_nu, abs(nu - two_mode_nu(ratio, 1.0)))
        worst_pure = max(worst_pure, boson_entropy(symplectic_spectrum(GaussianBosonState(x, p))))
    _record(10, "boson two-mode oracle", worst_nu <= 1e-10 and worst_pure <= 1e-7,
            f"max nu err = {worst_nu:.1e}; global S = {worst_pure:.1e}")


def test_11_boson_massless():
    t0 = time.perf_counter()
    rows = boson_entropy_scan(HarmonicChainSpec(1e-5), [8, 12, 16, 24, 32, 48, 64])
    slope = fit_log(rows).slope
    elapsed = time.perf_counter() - t0
    ok = abs(slope - 1 / 3) <= (1 / 3) * 0.10 and elapsed <= 120
    _record(11, "boson massless log law", ok,
            f"slope = {slope:.4f} (need [0.3000, 0.3667]), {elapsed:.1f}s")


# Fixed bracket for S / (L ln L) over the scan
WOLF_LOWER, WOLF_UPPER = 0.1, 1.0


def test_12_area_law_with_log():
    t0 = time.perf_counter()
    region = FermiSeaRegion(2, "spherical", 1.0)
    rows = area_law_scan(region, [4, 8, 12, 16, 20, 24])
    fit = fit_area_log([(L, s) for L, s, _ in rows], 2)
    target = widom_coefficient(region)
    ratios = [s / (L * math.log(L)) for L, s, _ in rows if L >= 8]
    elapsed = time.perf_counter() - t0
    ok = (fit.slope > 0 and abs(fit.slope - target) <= 0.25 * target
          and WOLF_LOWER <= min(ratios) and max(ratios) <= WOLF_UPPER and elapsed <= 600)
    _record(12, "2D area law with log", ok,
            f"slope = {fit.slope:.4f} vs {target:.6f} ({abs(fit.slope / target - 1):.1%}); "
            f"S/(L ln L) in [{min(ratios):.3f}, {max(ratios):.3f}], {elapsed:.1f}s")


def test_13_widom_quadrature():
    errs = []
    for k_f in (0.5, 1.0):
        region = FermiSeaRegion(2, "spherical", k_f)
        errs.append(abs(widom_coefficient(region) - widom_coefficient_analytic(region)))
        errs.append(abs(widom_coefficient_analytic(region) - 2 * k_f / (3 * math.pi)))
    _record(13, "Widom quadrature vs closed form", max(errs) <= 1e-6, f"max err = {max(errs):.1e}")


def test_14_tensor_product_spectrum():
    region = FermiSeaRegion(2, "cubic", math.pi / 2)
    worst = max(abs(block_entropy(region, BlockSpec(2, L)) - product_spectrum_entropy(region, L))
                for L in range(1, 17))
    _record(14, "cubic sea tensor-product spectrum", worst <= 1e-8, f"max err = {worst:.1e}")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
