"""Synthetic soiling transmittance, spectra, and whole campaigns.

Measured coupon data is rarely at hand on a desk, so campaign-level
behaviour is exercised with a small generative model:

* soiling transmittance: tau(lambda) = exp(-k * (lambda_ref/lambda)**alpha),
  an Angstrom-like optical depth that is bounded in (0, 1], attenuates
  short wavelengths more (alpha > 0), and composes multiplicatively as
  deposits accumulate. It is a stand-in shape, not a fit to any measured
  curve.
* spectra: the bundled reference spectrum reshaped by
  (lambda_ref/lambda)**tilt and renormalised to the reference's broadband
  integral; tilt > 0 is blue-rich, tilt < 0 red-rich.
* campaigns: per week the optical depth grows by a fixed deposition,
  rain events wash a fraction of it away after that week's scan, and
  triplicate scans carry seeded multiplicative noise (default 0.2%, well
  below the 1% replicate rejection rule).
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from .cell import CellModel, reference_spectrum
from .errors import ConfigError, EmptyScenario
from .pipeline import FieldDay, FieldRecord, WeeklyMeasurement
from .spectral import DIMENSIONLESS, Kind, Spectrum, resample

__all__ = [
    "SoilingModel",
    "RainEvent",
    "CampaignScenario",
    "synth_tau",
    "synth_spectrum",
    "synth_campaign",
    "load_scenario",
]

TILT_REFERENCE_NM = 550.0


@dataclass(frozen=True)
class SoilingModel:
    """Angstrom-like soiling layer: tau = exp(-k * (lambda_ref/lambda)**alpha)."""

    k: float
    alpha: float
    lambda_ref_nm: float = 550.0

    def __post_init__(self) -> None:
        if self.k < 0.0:
            raise ValueError(f"optical-depth scale k must be >= 0, got {self.k}")
        if self.lambda_ref_nm <= 0.0:
            raise ValueError("lambda_ref_nm must be > 0")

    def tau_at(self, wavelengths_nm: np.ndarray) -> np.ndarray:
        wl = np.asarray(wavelengths_nm, dtype=float)
        return np.exp(-self.k * (self.lambda_ref_nm / wl) ** self.alpha)


def synth_tau(model: SoilingModel, grid) -> Spectrum:
    """Evaluate a soiling model on a wavelength grid."""
    g = np.asarray(grid, dtype=float)
    return Spectrum(g, model.tau_at(g), Kind.TRANSMITTANCE, DIMENSIONLESS)


def synth_spectrum(tilt: float, grid=None, reference: Spectrum | None = None) -> Spectrum:
    """Reshape the reference spectrum toward blue (tilt > 0) or red (< 0).

    The curve is multiplied by (lambda_ref/lambda)**tilt and rescaled so
    its broadband integral over its own support equals the base
    spectrum's; tilt = 0 returns the base unchanged.
    """
    base = reference if reference is not None else reference_spectrum()
    if grid is not None:
        base = resample(base, grid)
    if tilt == 0.0:
        return base
    w = base.wavelengths_nm
    shaped = base.values * (TILT_REFERENCE_NM / w) ** tilt
    scale = np.trapezoid(base.values, w) / np.trapezoid(shaped, w)
    return Spectrum(w, shaped * scale, Kind.IRRADIANCE, base.units)


@dataclass(frozen=True)
class RainEvent:
    """Washing event; the fraction of accumulated soiling removed."""

    week: int
    wash_fraction: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.wash_fraction <= 1.0):
            raise ValueError(f"wash_fraction must be in [0, 1], got {self.wash_fraction}")
        if self.week < 1:
            raise ValueError(f"rain week must be >= 1, got {self.week}")


@dataclass(frozen=True)
class CampaignScenario:
    """Knobs for a desk-scale synthetic campaign."""

    weeks: int
    deposition_per_week: float
    rain_weeks: tuple[RainEvent, ...] = ()
    spectrum_tilt: float = 0.0
    seed: int = 0
    alpha: float = 1.0
    lambda_ref_nm: float = 550.0
    noise_sigma: float = 0.002
    grid_min_nm: float = 300.0
    grid_max_nm: float = 2000.0
    grid_step_nm: float = 5.0
    start_date: dt.date = dt.date(2017, 1, 2)
    glass_transmittance: float = 0.92
    dni_peak_wm2: float = 850.0
    dni_to_gni: float = 0.85

    def __post_init__(self) -> None:
        if self.weeks < 1:
            raise EmptyScenario(f"scenario generates no weeks (weeks={self.weeks})")
        if self.deposition_per_week < 0.0:
            raise ValueError("deposition_per_week must be >= 0")
        if self.noise_sigma < 0.0:
            raise ValueError("noise_sigma must be >= 0")
        if not (0.0 < self.glass_transmittance <= 1.0):
            raise ValueError("glass_transmittance must be in (0, 1]")
        object.__setattr__(self, "rain_weeks", tuple(self.rain_weeks))

    @property
    def grid(self) -> np.ndarray:
        n = int(round((self.grid_max_nm - self.grid_min_nm) / self.grid_step_nm)) + 1
        return np.linspace(self.grid_min_nm, self.grid_max_nm, n)


def _day_shape(minutes_since_8: np.ndarray, day_minutes: float) -> np.ndarray:
    # Zero at the 08:00/16:00 edges, one at noon.
    return np.sin(np.pi * minutes_since_8 / day_minutes)


def _field_day(date: dt.date, base_e: Spectrum, scenario: CampaignScenario,
               rainfall_mm: float, k: float) -> FieldDay:
    minutes = np.arange(0, 8 * 60 + 1, 5, dtype=float)  # 08:00-16:00, 5-min cadence
    shape = _day_shape(minutes, 8 * 60)
    spectra_minutes = {(h - 8) * 60 for h in range(9, 16)}  # hourly spectra 09:00-15:00
    records = []
    for m, s in zip(minutes, shape):
        ts = dt.datetime.combine(date, dt.time(8, 0)) + dt.timedelta(minutes=float(m))
        dni = scenario.dni_peak_wm2 * float(s)
        gni = dni / scenario.dni_to_gni
        spec = None
        if m in spectra_minutes and s > 0.0:
            spec = base_e.with_values(base_e.values * float(s))
        records.append(
            FieldRecord(
                timestamp=ts,
                dni=dni,
                gni=gni,
                ghi=0.75 * gni,
                dhi=gni - dni,
                rainfall_mm=rainfall_mm if ts.time() == dt.time(12, 0) else 0.0,
                pm10=20.0 + 200.0 * k,
                pm25=0.5 * (20.0 + 200.0 * k),
                spectral_dni=spec,
            )
        )
    return FieldDay(date=date, records=tuple(records))


def synth_campaign(scenario: CampaignScenario,
                   cell: CellModel | None = None,
                   ) -> tuple[list[WeeklyMeasurement], list[FieldDay]]:
    """Generate a campaign: weekly triplicate scans plus field days.

    Per week the optical depth grows by the deposition, that week's scan
    is taken, and any rain event then washes its fraction away, so a full
    wash returns the next week to the one-week-deposition state. Scan
    noise uses a per-week sub-seed derived from (seed, week), keeping
    generation deterministic and parallelizable across weeks.
    """
    if cell is not None:
        lo, hi = scenario.grid_min_nm, scenario.grid_max_nm
        if cell.full_band.lambda_min_nm < lo or cell.full_band.lambda_max_nm > hi:
            raise ConfigError(
                f"scenario grid [{lo}, {hi}] nm does not cover cell full band "
                f"[{cell.full_band.lambda_min_nm}, {cell.full_band.lambda_max_nm}] nm"
            )
    grid = scenario.grid
    base_e = synth_spectrum(scenario.spectrum_tilt, grid)
    wash = {r.week: r.wash_fraction for r in scenario.rain_weeks}
    glass = scenario.glass_transmittance

    weeks: list[WeeklyMeasurement] = []
    days: list[FieldDay] = []
    k = 0.0
    for w in range(1, scenario.weeks + 1):
        k += scenario.deposition_per_week
        model = SoilingModel(k, scenario.alpha, scenario.lambda_ref_nm)
        tau_true = model.tau_at(grid)
        rng = np.random.default_rng([scenario.seed, w])
        soiled = []
        control = []
        for _ in range(3):
            noise_s = 1.0 + scenario.noise_sigma * rng.standard_normal(grid.size)
            noise_c = 1.0 + scenario.noise_sigma * rng.standard_normal(grid.size)
            soiled.append(
                Spectrum(grid, glass * tau_true * noise_s, Kind.TRANSMITTANCE)
            )
            control.append(Spectrum(grid, glass * noise_c, Kind.TRANSMITTANCE))
        scan_date = scenario.start_date + dt.timedelta(days=7 * (w - 1))
        rainfall = 40.0 * wash.get(w, 0.0)
        weeks.append(
            WeeklyMeasurement(
                week_id=w,
                scan_date=scan_date,
                soiled_scans=tuple(soiled),
                control_scans=tuple(control),
            )
        )
        days.append(_field_day(scan_date, base_e, scenario, rainfall, k))
        if w in wash:
            k *= 1.0 - wash[w]
    return weeks, days


# ---------------------------------------------------------------------------
# Scenario files
# ---------------------------------------------------------------------------

_SCENARIO_KEYS = {
    "weeks", "deposition_per_week", "rain_weeks", "spectrum_tilt", "seed",
    "alpha", "lambda_ref_nm", "noise_sigma",
    "grid_min_nm", "grid_max_nm", "grid_step_nm",
    "start_date", "glass_transmittance", "dni_peak_wm2", "dni_to_gni",
}


def load_scenario(path: str | Path) -> CampaignScenario:
    """Load a campaign scenario from a YAML document."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"scenario file not found: {path}")
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: scenario must be a mapping")
    unknown = set(doc) - _SCENARIO_KEYS
    if unknown:
        raise ConfigError(f"{path}: unknown scenario keys {sorted(unknown)}")
    if "weeks" not in doc or "deposition_per_week" not in doc:
        raise ConfigError(f"{path}: scenario needs 'weeks' and 'deposition_per_week'")
    kwargs = dict(doc)
    rain = []
    for entry in kwargs.pop("rain_weeks", []) or []:
        rain.append(RainEvent(week=int(entry["week"]),
                              wash_fraction=float(entry["wash_fraction"])))
    if "start_date" in kwargs:
        value = kwargs["start_date"]
        kwargs["start_date"] = value if isinstance(value, dt.date) else dt.date.fromisoformat(str(value))
    return CampaignScenario(rain_weeks=tuple(rain), **kwargs)
