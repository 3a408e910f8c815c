import numpy as np
import pytest

from soilspec import Kind, Spectrum, boxcar_cell, load_bundled_3j, reference_spectrum


def flat_spectrum(lo, hi, value, kind=Kind.IRRADIANCE):
    """Constant spectrum on [lo, hi]; flat curves are exact under trapz."""
    return Spectrum(np.array([lo, hi], dtype=float),
                    np.array([value, value], dtype=float), kind)


def linear_spectrum(lo, hi, v_lo, v_hi, kind=Kind.TRANSMITTANCE):
    return Spectrum(np.array([lo, hi], dtype=float),
                    np.array([v_lo, v_hi], dtype=float), kind)


def midpoint_riemann(f, lo, hi, step=0.01):
    """Brute-force midpoint rule at a fixed step (independent oracle)."""
    n = int(round((hi - lo) / step))
    h = (hi - lo) / n
    mids = lo + h * (np.arange(n) + 0.5)
    return float(np.sum(f(mids)) * h)


def sampled_eval(s):
    """Piecewise-linear evaluator of a sampled spectrum for oracles."""
    return lambda x: np.interp(x, s.wavelengths_nm, s.values)


@pytest.fixture()
def toy2j():
    """Two-junction boxcar toy: bands [300,700]/[700,900], SR = 1, ref = 1."""
    return boxcar_cell([("top", 300.0, 700.0), ("mid", 700.0, 900.0)])


@pytest.fixture()
def flat_e():
    return flat_spectrum(300.0, 900.0, 1.0)


@pytest.fixture()
def linear_tau():
    """tau rising 0.5 -> 1.0 over [300, 900]."""
    return linear_spectrum(300.0, 900.0, 0.5, 1.0)


@pytest.fixture(scope="session")
def bundled_cell():
    return load_bundled_3j()


@pytest.fixture(scope="session")
def reference():
    return reference_spectrum()
