import numpy as np
import pytest

from soilspec import (
    IndexReport,
    Kind,
    Spectrum,
    Waveband,
    ast,
    boxcar_cell,
    bsratio,
    index_report,
    index_report_weighted,
    smr,
    smratio,
    soiling_transmittance,
    sratio,
    ssratio,
    synth_tau,
)
from soilspec.errors import (
    ControlBelowFloor,
    KindMismatch,
    NoOverlap,
    ZeroCleanCurrent,
    ZeroCurrent,
    ZeroDenominator,
)
from soilspec.metrics import NoisyTransmittance
from soilspec.synth import SoilingModel

from conftest import flat_spectrum, linear_spectrum, midpoint_riemann, sampled_eval


# ---------------------------------------------------------------------------
# soiling transmittance (coupon pair)
# ---------------------------------------------------------------------------

def test_tau_constant_ratio():
    soiled = flat_spectrum(300, 900, 0.45, Kind.TRANSMITTANCE)
    control = flat_spectrum(300, 900, 0.90, Kind.TRANSMITTANCE)
    tau = soiling_transmittance(soiled, control)
    np.testing.assert_allclose(tau.values, 0.5, rtol=1e-15)
    assert tau.kind is Kind.TRANSMITTANCE


def test_tau_clean_coupon():
    scan = linear_spectrum(300, 900, 0.85, 0.92)
    tau = soiling_transmittance(scan, scan)
    np.testing.assert_array_equal(tau.values, 1.0)


def test_tau_pointwise_division():
    soiled = linear_spectrum(300, 900, 0.45, 0.90)
    control = flat_spectrum(300, 900, 0.9, Kind.TRANSMITTANCE)
    tau = soiling_transmittance(soiled, control)
    f = sampled_eval(tau)
    assert f(300) == pytest.approx(0.5, rel=1e-15)
    assert f(600) == pytest.approx(0.75, rel=1e-15)
    assert f(900) == pytest.approx(1.0, rel=1e-15)


def test_tau_control_floor():
    soiled = flat_spectrum(300, 900, 0.02, Kind.TRANSMITTANCE)
    control = linear_spectrum(300, 900, 0.04, 0.9)
    with pytest.raises(ControlBelowFloor):
        soiling_transmittance(soiled, control)


def test_tau_noise_kept_and_flagged():
    soiled = flat_spectrum(300, 900, 0.91, Kind.TRANSMITTANCE)
    control = flat_spectrum(300, 900, 0.90, Kind.TRANSMITTANCE)
    with pytest.warns(NoisyTransmittance):
        tau = soiling_transmittance(soiled, control)
    # ratio 1.0111 is kept, not clamped
    np.testing.assert_allclose(tau.values, 0.91 / 0.90, rtol=1e-15)


def test_tau_clamped_above_bound():
    soiled = flat_spectrum(300, 900, 0.95, Kind.TRANSMITTANCE)
    control = flat_spectrum(300, 900, 0.90, Kind.TRANSMITTANCE)
    with pytest.warns(NoisyTransmittance, match="clamped"):
        tau = soiling_transmittance(soiled, control)
    np.testing.assert_allclose(tau.values, 1.02, rtol=1e-15)


def test_tau_requires_transmittance_kinds():
    with pytest.raises(KindMismatch):
        soiling_transmittance(flat_spectrum(300, 900, 0.5),
                              flat_spectrum(300, 900, 0.9, Kind.TRANSMITTANCE))


def test_tau_requires_overlap():
    a = flat_spectrum(300, 400, 0.5, Kind.TRANSMITTANCE)
    b = flat_spectrum(500, 600, 0.9, Kind.TRANSMITTANCE)
    with pytest.raises(NoOverlap):
        soiling_transmittance(a, b)


# ---------------------------------------------------------------------------
# ratios on the analytic toy
# ---------------------------------------------------------------------------

def test_sratio_no_soiling(toy2j, flat_e):
    tau = flat_spectrum(300, 900, 1.0, Kind.TRANSMITTANCE)
    assert sratio(flat_e, toy2j, tau) == 1.0


def test_sratio_flat(toy2j, flat_e):
    tau = flat_spectrum(300, 900, 0.8, Kind.TRANSMITTANCE)
    assert sratio(flat_e, toy2j, tau) == pytest.approx(0.8, rel=1e-12)


def test_sratio_linear_tau_oracle(toy2j, flat_e, linear_tau):
    # clean min = 200 (mid); soiled mid = 200 * mean tau on [700, 900]
    # mean tau on [700, 900] of the 0.5 -> 1.0 line = (5/6 + 1)/2 = 11/12
    assert sratio(flat_e, toy2j, linear_tau) == pytest.approx(11.0 / 12.0, rel=1e-12)


def test_bsratio_flat(toy2j, flat_e):
    for c in (0.3, 0.8, 1.0):
        tau = flat_spectrum(300, 900, c, Kind.TRANSMITTANCE)
        assert bsratio(flat_e, toy2j, tau) == pytest.approx(c, rel=1e-12)


def test_bsratio_trapezoid_arithmetic():
    cell = boxcar_cell([("a", 300, 1000), ("b", 1000, 1810)])
    e = flat_spectrum(300, 1810, 1.0)
    tau = Spectrum(np.array([300.0, 1055.0, 1810.0]), np.array([0.6, 0.8, 1.0]),
                   Kind.TRANSMITTANCE)
    # hand trapezoids: 755*0.7 + 755*0.9 = 1208; / 1510 = 0.8
    assert bsratio(e, cell, tau) == pytest.approx(0.8, rel=1e-12)


def test_bsratio_linear_tau(toy2j, flat_e, linear_tau):
    assert bsratio(flat_e, toy2j, linear_tau) == pytest.approx(0.75, rel=1e-12)


def test_ssratio_flat_is_one(toy2j, flat_e):
    tau = flat_spectrum(300, 900, 0.8, Kind.TRANSMITTANCE)
    assert ssratio(flat_e, toy2j, tau) == pytest.approx(1.0, rel=1e-12)


def test_ssratio_linear_tau(toy2j, flat_e, linear_tau):
    expected = (11.0 / 12.0) / 0.75
    assert ssratio(flat_e, toy2j, linear_tau) == pytest.approx(expected, rel=1e-12)
    assert ssratio(flat_e, toy2j, linear_tau) == pytest.approx(1.2222, abs=1e-4)


def test_ssratio_times_bsratio_is_sratio(toy2j, flat_e, linear_tau):
    s = sratio(flat_e, toy2j, linear_tau)
    b = bsratio(flat_e, toy2j, linear_tau)
    ss = ssratio(flat_e, toy2j, linear_tau)
    assert b * ss == pytest.approx(s, rel=1e-12)


# ---------------------------------------------------------------------------
# SMR / SMratio
# ---------------------------------------------------------------------------

def test_smr_at_reference_is_one(toy2j, flat_e, bundled_cell, reference):
    assert smr(flat_e, toy2j) == 1.0  # toy reference is flat 1 over [300, 900]
    assert smr(reference, bundled_cell) == pytest.approx(1.0, rel=1e-12)


def test_smr_linear_tau_oracle(toy2j, flat_e, linear_tau):
    # soiled: top = 400 * 2/3 = 266.67, mid = 200 * 11/12 = 183.33
    # smr_soiled = (266.67/183.33) * (200/400) = 8/11
    assert smr(flat_e, toy2j, linear_tau) == pytest.approx(8.0 / 11.0, rel=1e-12)
    assert smr(flat_e, toy2j, linear_tau) == pytest.approx(0.7273, abs=1e-4)


def test_smr_flat_tau_cancels(toy2j):
    rng = np.random.default_rng(5)
    w = np.linspace(300.0, 900.0, 20)
    e = Spectrum(w, rng.uniform(0.3, 1.2, 20), Kind.IRRADIANCE)
    tau = flat_spectrum(300, 900, 0.6, Kind.TRANSMITTANCE)
    assert smr(e, toy2j, tau) == pytest.approx(smr(e, toy2j), rel=1e-12)


def test_smratio_flat_is_one(toy2j, flat_e):
    tau = flat_spectrum(300, 900, 0.42, Kind.TRANSMITTANCE)
    assert smratio(flat_e, toy2j, tau) == pytest.approx(1.0, rel=1e-12)


def test_smratio_linear_tau(toy2j, flat_e, linear_tau):
    assert smratio(flat_e, toy2j, linear_tau) == pytest.approx(8.0 / 11.0, rel=1e-12)


def test_smratio_blue_heavy_below_one(toy2j, flat_e):
    tau = synth_tau(SoilingModel(k=0.3, alpha=1.2), np.linspace(300, 900, 121))
    assert smratio(flat_e, toy2j, tau) < 1.0


def test_smr_pairwise(bundled_cell, reference):
    # any ordered pair is accepted; reference normalisation holds per pair
    for pair in (("top", "mid"), ("mid", "bot"), ("top", "bot"), ("mid", "top")):
        assert smr(reference, bundled_cell, pair=pair) == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(ValueError, match="distinct"):
        smr(reference, bundled_cell, pair=("top", "top"))


def test_smratio_equals_smr_quotient(bundled_cell, reference):
    tau = synth_tau(SoilingModel(k=0.25, alpha=1.0), np.linspace(300, 1810, 302))
    cancelled = smratio(reference, bundled_cell, tau)
    quotient = smr(reference, bundled_cell, tau) / smr(reference, bundled_cell)
    assert cancelled == pytest.approx(quotient, rel=1e-12)


def test_smratio_pair_swap_inverts(toy2j, flat_e, linear_tau):
    forward = smratio(flat_e, toy2j, linear_tau, pair=("top", "mid"))
    backward = smratio(flat_e, toy2j, linear_tau, pair=("mid", "top"))
    assert forward * backward == pytest.approx(1.0, rel=1e-12)


def test_zero_clean_current(toy2j):
    dark = flat_spectrum(300, 900, 0.0)
    tau = flat_spectrum(300, 900, 0.5, Kind.TRANSMITTANCE)
    with pytest.raises(ZeroCleanCurrent):
        sratio(dark, toy2j, tau)
    with pytest.raises(ZeroDenominator):
        bsratio(dark, toy2j, tau)


def test_smr_zero_current(toy2j):
    e = Spectrum(np.array([300.0, 699.0, 700.0, 900.0]),
                 np.array([1.0, 1.0, 0.0, 0.0]), Kind.IRRADIANCE)
    with pytest.raises(ZeroCurrent):
        smr(e, toy2j)  # mid junction current is zero


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

def test_ast_flat():
    tau = flat_spectrum(300, 900, 1.0, Kind.TRANSMITTANCE)
    assert ast(tau, Waveband("b", 300, 900)) == pytest.approx(1.0, rel=1e-15)


def test_ast_linear_means(linear_tau):
    assert ast(linear_tau, Waveband("b", 300, 700)) == pytest.approx(2.0 / 3.0, rel=1e-12)
    assert ast(linear_tau, Waveband("b", 300, 900)) == pytest.approx(0.75, rel=1e-12)


def test_ast_requires_transmittance(flat_e):
    with pytest.raises(KindMismatch):
        ast(flat_e, Waveband("b", 300, 900))


# ---------------------------------------------------------------------------
# full report
# ---------------------------------------------------------------------------

def test_report_no_soiling(toy2j, flat_e):
    tau = flat_spectrum(300, 900, 1.0, Kind.TRANSMITTANCE)
    rep = index_report(flat_e, toy2j, tau)
    for name in ("sratio", "bsratio", "ssratio", "smr_cleaned", "smr_soiled", "smratio"):
        assert getattr(rep, name) == pytest.approx(1.0, rel=1e-12)
    assert all(v == pytest.approx(1.0, rel=1e-12) for v in rep.ast.values())


def test_report_toy_oracle(toy2j, flat_e, linear_tau):
    rep = index_report(flat_e, toy2j, linear_tau)
    assert rep.sratio == pytest.approx(0.91667, abs=1e-4)
    assert rep.bsratio == pytest.approx(0.75, abs=1e-4)
    assert rep.ssratio == pytest.approx(1.2222, abs=1e-4)
    assert rep.smratio == pytest.approx(0.7273, abs=1e-4)
    assert rep.ast["full"] == pytest.approx(0.75, abs=1e-4)
    assert rep.limiting_cleaned == "mid" and rep.limiting_soiled == "mid"


def test_report_flat_tau(toy2j):
    rng = np.random.default_rng(9)
    w = np.linspace(300.0, 900.0, 40)
    e = Spectrum(w, rng.uniform(0.2, 1.4, 40), Kind.IRRADIANCE)
    tau = flat_spectrum(300, 900, 0.8, Kind.TRANSMITTANCE)
    rep = index_report(e, toy2j, tau)
    assert rep.sratio == pytest.approx(0.8, rel=1e-12)
    assert rep.bsratio == pytest.approx(0.8, rel=1e-12)
    assert rep.ssratio == pytest.approx(1.0, rel=1e-12)
    assert rep.smratio == pytest.approx(1.0, rel=1e-12)
    for v in rep.ast.values():
        assert v == pytest.approx(0.8, rel=1e-12)


def test_report_ast_band_order(toy2j, flat_e, linear_tau):
    rep = index_report(flat_e, toy2j, linear_tau)
    assert list(rep.ast.keys()) == ["full", "top", "mid"]


def test_report_serialization(toy2j, flat_e, linear_tau):
    rep = index_report(flat_e, toy2j, linear_tau)
    d = rep.to_dict()
    assert d["ast_full"] == rep.ast["full"]
    assert rep.csv_header().split(",")[0] == "sratio"
    assert len(rep.csv_row().split(",")) == len(d)


def test_report_rejects_broken_identity():
    with pytest.raises(ValueError, match="identity"):
        IndexReport(
            sratio=0.9, bsratio=0.8, ssratio=1.0,
            smr_cleaned=1.0, smr_soiled=1.0, smratio=1.0,
            ast={"full": 0.9}, limiting_cleaned="a", limiting_soiled="a",
        )


def test_weighted_report_sums_currents(toy2j, linear_tau):
    # two spectra: flat 1 and flat 2; daily-weighted indexes must match a
    # single run with flat 3 = 1 + 2 by linearity of every current
    e1 = flat_spectrum(300, 900, 1.0)
    e2 = flat_spectrum(300, 900, 2.0)
    e3 = flat_spectrum(300, 900, 3.0)
    combined = index_report_weighted([e1, e2], toy2j, linear_tau)
    direct = index_report(e3, toy2j, linear_tau)
    assert combined.sratio == pytest.approx(direct.sratio, rel=1e-12)
    assert combined.bsratio == pytest.approx(direct.bsratio, rel=1e-12)
    assert combined.smratio == pytest.approx(direct.smratio, rel=1e-12)


# ---------------------------------------------------------------------------
# step-tau spectral gain, checked against a fine-grid oracle
# ---------------------------------------------------------------------------

def test_step_tau_ssratio_above_one(toy2j, flat_e):
    # attenuation confined to the non-limiting top band leaves the current
    # untouched but cuts the broadband integral, so ssratio > 1
    tau = Spectrum(
        np.array([300.0, 699.99, 700.01, 900.0]),
        np.array([0.6, 0.6, 1.0, 1.0]),
        Kind.TRANSMITTANCE,
    )
    s = sratio(flat_e, toy2j, tau)
    b = bsratio(flat_e, toy2j, tau)
    ss = ssratio(flat_e, toy2j, tau)
    assert ss > 1.0

    # fine-grid midpoint oracle for both ingredients
    tau_f = sampled_eval(tau)
    soiled_mid = midpoint_riemann(tau_f, 700.0, 900.0, 0.01)  # E=1, SR=1
    assert s == pytest.approx(soiled_mid / 200.0, rel=1e-6)
    broad = midpoint_riemann(tau_f, 300.0, 900.0, 0.01) / 600.0
    assert b == pytest.approx(broad, rel=1e-6)
    assert ss == pytest.approx((soiled_mid / 200.0) / broad, rel=1e-6)
