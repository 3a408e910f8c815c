"""Soiling indexes for multi-junction concentrator cells.

All indexes derive from two ingredients: junction short-circuit currents
(irradiance x soiling transmittance x spectral response, integrated over
the junction band) and broadband irradiance integrals over the cell's
full band.

* ``sratio``  - soiled/cleaned stack current (total soiling impact).
* ``bsratio`` - soiled/cleaned broadband irradiance (average attenuation).
* ``ssratio`` - sratio/bsratio, the purely spectral part of the impact.
* ``smr``     - top/mid current ratio normalised to the reference
  spectrum; with a soiling transmittance it is the soiled variant.
* ``smratio`` - soiled/cleaned SMR. The reference currents cancel, so it
  is computed in the cancelled form and never needs calibration.
* ``ast``     - average of the soiling transmittance over a waveband.

The identities sratio == bsratio * ssratio and
smratio == smr_soiled / smr_cleaned hold to floating-point round-off by
construction.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .cell import CellModel, Junction, jsc_cell, jsc_junction
from .errors import (
    ControlBelowFloor,
    NoEligibleJunction,
    ZeroCleanCurrent,
    ZeroCurrent,
    ZeroDenominator,
)
from .spectral import (
    DIMENSIONLESS,
    TRANSMITTANCE_EPS,
    Kind,
    Spectrum,
    Waveband,
    _union_grid,
    integrate,
    pointwise_product,
    require_kind,
)

__all__ = [
    "IndexReport",
    "NoisyTransmittance",
    "soiling_transmittance",
    "sratio",
    "bsratio",
    "ssratio",
    "smr",
    "smratio",
    "ast",
    "index_report",
    "index_report_weighted",
    "CONTROL_FLOOR",
]

# Control-coupon transmittance below this value signals a corrupted scan:
# low-iron glass transmits far more than 5% everywhere in 300-2000 nm.
CONTROL_FLOOR = 0.05


class NoisyTransmittance(UserWarning):
    """Soiling transmittance exceeded 1 (measurement noise)."""


def soiling_transmittance(soiled: Spectrum, control: Spectrum,
                          control_floor: float = CONTROL_FLOOR) -> Spectrum:
    """Soiling transmittance from a soiled/control coupon scan pair.

    Pointwise ratio soiled/control on the union grid over the overlap of
    the two scans. Ratio values in (1, 1 + 0.02] are kept (noise) with a
    warning; values above that are clamped to the bound, also with a
    warning. A control value below ``control_floor`` anywhere in the
    overlap raises :class:`ControlBelowFloor`.
    """
    require_kind(soiled, Kind.TRANSMITTANCE, "soiled scan")
    require_kind(control, Kind.TRANSMITTANCE, "control scan")
    grid = _union_grid([soiled, control])
    s = np.interp(grid, soiled.wavelengths_nm, soiled.values)
    c = np.interp(grid, control.wavelengths_nm, control.values)
    if c.min() < control_floor:
        raise ControlBelowFloor(
            f"control transmittance {c.min():.4g} below floor {control_floor} "
            f"near {grid[int(np.argmin(c))]:.1f} nm"
        )
    ratio = s / c
    hi = 1.0 + TRANSMITTANCE_EPS
    n_clamped = int(np.sum(ratio > hi))
    n_noisy = int(np.sum(ratio > 1.0)) - n_clamped
    if n_clamped:
        ratio = np.minimum(ratio, hi)
        warnings.warn(
            f"{n_clamped} soiling-transmittance samples above {hi} clamped "
            f"to the bound; {n_noisy} more kept in (1, {hi}]",
            NoisyTransmittance,
            stacklevel=2,
        )
    elif n_noisy:
        warnings.warn(
            f"{n_noisy} soiling-transmittance samples in (1, {hi}] kept (noise)",
            NoisyTransmittance,
            stacklevel=2,
        )
    return Spectrum(grid, ratio, Kind.TRANSMITTANCE, DIMENSIONLESS)


def ast(tau: Spectrum, band: Waveband) -> float:
    """Average spectral transmittance of soiling over a waveband."""
    require_kind(tau, Kind.TRANSMITTANCE, "soiling transmittance")
    return integrate(tau, band) / band.width_nm


# ---------------------------------------------------------------------------
# Current bookkeeping shared by the single-spectrum and daily-weighted paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Currents:
    """Cleaned/soiled junction currents and broadband integrals, summed
    over one or more irradiance spectra."""

    cleaned: dict[str, float]
    soiled: dict[str, float]
    broadband_cleaned: float
    broadband_soiled: float


def _accumulate_currents(spectra: Sequence[Spectrum], cell: CellModel,
                         tau: Spectrum) -> _Currents:
    require_kind(tau, Kind.TRANSMITTANCE, "soiling transmittance")
    cleaned = {j.name: 0.0 for j in cell.junctions}
    soiled = {j.name: 0.0 for j in cell.junctions}
    b_clean = 0.0
    b_soil = 0.0
    for e in spectra:
        require_kind(e, Kind.IRRADIANCE, "irradiance spectrum")
        for j in cell.junctions:
            cleaned[j.name] += jsc_junction(e, j)
            soiled[j.name] += jsc_junction(e, j, tau)
        b_clean += integrate(e, cell.full_band)
        b_soil += integrate(pointwise_product(e, tau), cell.full_band)
    return _Currents(cleaned, soiled, b_clean, b_soil)


def _min_eligible(currents: Mapping[str, float], cell: CellModel) -> tuple[float, str]:
    eligible = [j.name for j in cell.junctions if j.limiting_eligible]
    if not eligible:
        raise NoEligibleJunction(f"cell {cell.name!r}: no limiting-eligible junction")
    value = min(currents[n] for n in eligible)
    limiting = next(n for n in eligible if currents[n] == value)
    return value, limiting


def _resolve_pair(cell: CellModel, pair: tuple[str, str] | None) -> tuple[Junction, Junction]:
    if pair is None:
        # The first two junctions of a standard stack are top and mid.
        ji, jj = cell.junctions[0], cell.junctions[1]
    else:
        ji, jj = cell.junction(pair[0]), cell.junction(pair[1])
    if ji.name == jj.name:
        raise ValueError(f"SMR pair must name two distinct junctions, got {ji.name!r}")
    return ji, jj


# ---------------------------------------------------------------------------
# Index operations
# ---------------------------------------------------------------------------

def sratio(e: Spectrum, cell: CellModel, tau: Spectrum) -> float:
    """Soiling ratio: soiled/cleaned stack short-circuit current."""
    clean = jsc_cell(e, cell)
    if clean.value == 0.0:
        raise ZeroCleanCurrent("cleaned stack current is zero")
    return jsc_cell(e, cell, tau).value / clean.value


def bsratio(e: Spectrum, cell: CellModel, tau: Spectrum) -> float:
    """Broadband soiling ratio over the cell's full band."""
    require_kind(e, Kind.IRRADIANCE, "irradiance spectrum")
    require_kind(tau, Kind.TRANSMITTANCE, "soiling transmittance")
    den = integrate(e, cell.full_band)
    if den == 0.0:
        raise ZeroDenominator("broadband irradiance integral is zero")
    return integrate(pointwise_product(e, tau), cell.full_band) / den


def ssratio(e: Spectrum, cell: CellModel, tau: Spectrum) -> float:
    """Spectral soiling ratio: sratio / bsratio."""
    b = bsratio(e, cell, tau)
    if b == 0.0:
        raise ZeroDenominator("broadband soiling ratio is zero")
    return sratio(e, cell, tau) / b


def smr(e: Spectrum, cell: CellModel, tau: Spectrum | None = None,
        pair: tuple[str, str] | None = None) -> float:
    """Spectral matching ratio of an ordered junction pair.

    (J_i / J_j) * (J_j* / J_i*) with the starred currents taken under the
    cell's reference spectrum. With ``tau`` the currents are the soiled
    ones; without it, the cleaned ones.
    """
    ji, jj = _resolve_pair(cell, pair)
    j_i = jsc_junction(e, ji, tau)
    j_j = jsc_junction(e, jj, tau)
    ref_i = cell.reference_currents[ji.name]
    ref_j = cell.reference_currents[jj.name]
    if j_j == 0.0 or ref_i == 0.0:
        raise ZeroCurrent(
            f"SMR denominator current is zero (J_{jj.name}={j_j}, J*_{ji.name}={ref_i})"
        )
    return (j_i / j_j) * (ref_j / ref_i)


def smratio(e: Spectrum, cell: CellModel, tau: Spectrum,
            pair: tuple[str, str] | None = None) -> float:
    """Soiling mismatch ratio of an ordered junction pair.

    Soiled-to-cleaned SMR. The reference currents cancel, so this is
    computed as (J_soiled_i / J_soiled_j) * (J_cleaned_j / J_cleaned_i)
    and works for cells without calibrated reference currents.
    """
    ji, jj = _resolve_pair(cell, pair)
    js_i = jsc_junction(e, ji, tau)
    js_j = jsc_junction(e, jj, tau)
    jc_i = jsc_junction(e, ji)
    jc_j = jsc_junction(e, jj)
    if js_j == 0.0 or jc_i == 0.0:
        raise ZeroCurrent(
            f"SMratio denominator current is zero "
            f"(J_soiled_{jj.name}={js_j}, J_cleaned_{ji.name}={jc_i})"
        )
    return (js_i / js_j) * (jc_j / jc_i)


# ---------------------------------------------------------------------------
# The full report
# ---------------------------------------------------------------------------

_IDENTITY_RTOL = 1e-12


@dataclass(frozen=True)
class IndexReport:
    """All soiling indexes for one instant (or one aggregated day).

    ``ast`` maps band name to average spectral transmittance; the first
    entry is the cell's full band, followed by the junction bands in
    stack order.
    """

    sratio: float
    bsratio: float
    ssratio: float
    smr_cleaned: float
    smr_soiled: float
    smratio: float
    ast: dict[str, float]
    limiting_cleaned: str
    limiting_soiled: str

    def __post_init__(self) -> None:
        for fname in ("sratio", "bsratio", "ssratio", "smr_cleaned", "smr_soiled", "smratio"):
            if getattr(self, fname) <= 0.0:
                raise ValueError(f"{fname} must be > 0")
        if abs(self.sratio - self.bsratio * self.ssratio) > _IDENTITY_RTOL * abs(self.sratio):
            raise ValueError("identity sratio = bsratio * ssratio violated")
        if abs(self.smratio - self.smr_soiled / self.smr_cleaned) > _IDENTITY_RTOL * abs(self.smratio):
            raise ValueError("identity smratio = smr_soiled / smr_cleaned violated")
        for band, value in self.ast.items():
            if not (0.0 <= value <= 1.0 + TRANSMITTANCE_EPS):
                raise ValueError(f"ast[{band!r}] = {value} outside [0, {1.0 + TRANSMITTANCE_EPS}]")

    def to_dict(self) -> dict:
        """Flat mapping with stable keys (ast bands become ast_<name>)."""
        out: dict = {
            "sratio": self.sratio,
            "bsratio": self.bsratio,
            "ssratio": self.ssratio,
            "smr_cleaned": self.smr_cleaned,
            "smr_soiled": self.smr_soiled,
            "smratio": self.smratio,
            "limiting_cleaned": self.limiting_cleaned,
            "limiting_soiled": self.limiting_soiled,
        }
        for band, value in self.ast.items():
            out[f"ast_{band}"] = value
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def csv_header(self) -> str:
        return ",".join(self.to_dict().keys())

    def csv_row(self) -> str:
        cells = []
        for v in self.to_dict().values():
            cells.append(repr(float(v)) if isinstance(v, float) else str(v))
        return ",".join(cells)


def index_report_weighted(spectra: Sequence[Spectrum], cell: CellModel,
                          tau: Spectrum,
                          pair: tuple[str, str] | None = None) -> IndexReport:
    """Indexes from per-junction currents summed over several spectra.

    This is the daily-current-weighted aggregation: every current and
    broadband integral is summed over the given spectra before any ratio
    is taken. With a single spectrum it reduces exactly to the
    instantaneous report.
    """
    if len(spectra) == 0:
        raise ValueError("need at least one irradiance spectrum")
    cur = _accumulate_currents(spectra, cell, tau)
    clean_min, limiting_cleaned = _min_eligible(cur.cleaned, cell)
    soiled_min, limiting_soiled = _min_eligible(cur.soiled, cell)
    if clean_min == 0.0:
        raise ZeroCleanCurrent("cleaned stack current is zero")
    if cur.broadband_cleaned == 0.0:
        raise ZeroDenominator("broadband irradiance integral is zero")

    sr = soiled_min / clean_min
    bs = cur.broadband_soiled / cur.broadband_cleaned
    if bs == 0.0:
        raise ZeroDenominator("broadband soiling ratio is zero")
    ss = sr / bs

    ji, jj = _resolve_pair(cell, pair)
    ref_i = cell.reference_currents[ji.name]
    ref_j = cell.reference_currents[jj.name]
    jc_i, jc_j = cur.cleaned[ji.name], cur.cleaned[jj.name]
    js_i, js_j = cur.soiled[ji.name], cur.soiled[jj.name]
    if 0.0 in (jc_i, jc_j, js_i, js_j, ref_i, ref_j):
        raise ZeroCurrent(
            f"a {ji.name}/{jj.name} junction current needed for SMR/SMratio is zero"
        )
    smr_cleaned = (jc_i / jc_j) * (ref_j / ref_i)
    smr_soiled = (js_i / js_j) * (ref_j / ref_i)
    smratio_value = (js_i / js_j) * (jc_j / jc_i)

    ast_map = {cell.full_band.name: ast(tau, cell.full_band)}
    for j in cell.junctions:
        ast_map[j.band.name] = ast(tau, j.band)

    return IndexReport(
        sratio=sr,
        bsratio=bs,
        ssratio=ss,
        smr_cleaned=smr_cleaned,
        smr_soiled=smr_soiled,
        smratio=smratio_value,
        ast=ast_map,
        limiting_cleaned=limiting_cleaned,
        limiting_soiled=limiting_soiled,
    )


def index_report(e: Spectrum, cell: CellModel, tau: Spectrum,
                 pair: tuple[str, str] | None = None) -> IndexReport:
    """All indexes for a single irradiance spectrum."""
    return index_report_weighted([e], cell, tau, pair)
