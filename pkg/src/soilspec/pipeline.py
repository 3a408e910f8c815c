"""Weekly campaign procedure: ingest, filter, compute, summarize.

The campaign walks the measurement protocol: weekly triplicate coupon
scans are turned into a soiling transmittance (replicates whose
full-band average transmittance spreads by more than the rejection
threshold are dropped), the matching field day supplies the direct
spectral irradiance (cloudy days are substituted by a clear neighbour
within +/-1 day), and every accepted week yields an
:class:`~soilspec.metrics.IndexReport`.

Two aggregation modes are supported because sub-daily index values can
be collapsed into a weekly value in more than one defensible way:

* ``NOON``: the spectral record closest to 12:00 local clock time.
* ``DAILY_CURRENT_WEIGHTED`` (default): junction currents and broadband
  integrals are summed over all spectral records of the day before any
  ratio is formed, which matches how a fielded system accumulates
  charge. For a day with a single spectral record the two modes agree
  exactly.
"""

from __future__ import annotations

import datetime as dt
import enum
import json
import re
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
import yaml

from .cell import CellModel
from .errors import (
    ConfigError,
    IncompleteReplicates,
    NoClearDay,
    NoIrradianceRecords,
    NoWeeksFound,
    SoilspecError,
    TooFewPoints,
    ZeroVariance,
)
from .metrics import IndexReport, ast, index_report_weighted, soiling_transmittance
from .spectral import (
    Kind,
    Spectrum,
    Waveband,
    _union_grid,
    read_spectrum_csv,
    write_spectrum_csv,
    write_text_atomic,
)
from .stats import linfit

__all__ = [
    "Aggregation",
    "FieldRecord",
    "FieldDay",
    "WeeklyMeasurement",
    "WeekValidation",
    "WeeklyOutcome",
    "CampaignResult",
    "SoilingRateFit",
    "validate_week",
    "is_cloudy",
    "select_spectra",
    "run_campaign",
    "soiling_rate_fit",
    "campaign_fits",
    "read_field_csv",
    "write_field_day",
    "load_campaign_dir",
    "write_campaign_dir",
    "CLOUDY_THRESHOLD",
    "SPREAD_THRESHOLD",
    "SCAN_COVERAGE_NM",
]

# Days with total-DNI/total-GNI below this ratio are cloudy.
CLOUDY_THRESHOLD = 0.75
# Replicate rejection: max-min spread of full-band average transmittance,
# read as absolute in AST units (AST is already a normalized quantity).
SPREAD_THRESHOLD = 0.01
# Instrument convention for weekly coupon scans.
SCAN_COVERAGE_NM = (300.0, 2000.0)


class Aggregation(enum.Enum):
    NOON = "noon"
    DAILY_CURRENT_WEIGHTED = "daily"


# ---------------------------------------------------------------------------
# Data model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldRecord:
    """One 5-minute meteorological record; spectral DNI optional."""

    timestamp: dt.datetime
    dni: float
    gni: float
    ghi: float = 0.0
    dhi: float = 0.0
    rainfall_mm: float | None = None
    pm10: float | None = None
    pm25: float | None = None
    spectral_dni: Spectrum | None = None

    def __post_init__(self) -> None:
        for fname in ("dni", "gni", "ghi", "dhi"):
            if getattr(self, fname) < 0.0:
                raise ValueError(f"{fname} must be >= 0, got {getattr(self, fname)}")


@dataclass(frozen=True)
class FieldDay:
    """All records of one calendar day, in time order."""

    date: dt.date
    records: tuple[FieldRecord, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        ts = [r.timestamp for r in self.records]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError(f"field day {self.date}: timestamps must be strictly increasing")
        for r in self.records:
            if r.timestamp.date() != self.date:
                raise ValueError(
                    f"record at {r.timestamp} does not belong to day {self.date}"
                )

    @property
    def spectral_records(self) -> tuple[FieldRecord, ...]:
        return tuple(r for r in self.records if r.spectral_dni is not None)


@dataclass(frozen=True)
class WeeklyMeasurement:
    """Dated triplicate soiled/control coupon scans for one week."""

    week_id: int
    scan_date: dt.date
    soiled_scans: tuple[Spectrum, ...]
    control_scans: tuple[Spectrum, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "soiled_scans", tuple(self.soiled_scans))
        object.__setattr__(self, "control_scans", tuple(self.control_scans))

    @property
    def complete(self) -> bool:
        return len(self.soiled_scans) == 3 and len(self.control_scans) == 3


@dataclass(frozen=True)
class WeekValidation:
    """Replicate-consistency verdict for one week."""

    accepted: bool
    tau: Spectrum | None
    reason: str | None
    replicate_ast: tuple[float, ...]
    spread: float


# ---------------------------------------------------------------------------
# Filtering rules
# ---------------------------------------------------------------------------

def validate_week(m: WeeklyMeasurement, cell: CellModel,
                  spread_threshold: float = SPREAD_THRESHOLD,
                  spread_mode: str = "absolute") -> WeekValidation:
    """Apply the triplicate-spread rejection rule and average the scans.

    Computes the soiling transmittance of each replicate pair and its
    average over the cell's full band. If max - min of the three averages
    exceeds ``spread_threshold`` (absolute in AST units by default;
    ``spread_mode="relative"`` divides by their mean) the week is
    rejected with reason ``SpreadExceeded``. Otherwise the accepted
    transmittance is the arithmetic mean of the three replicate curves.
    """
    if not m.complete:
        raise IncompleteReplicates(
            f"week {m.week_id}: need 3 replicate pairs, got "
            f"{len(m.soiled_scans)} soiled / {len(m.control_scans)} control"
        )
    taus = [
        soiling_transmittance(s, c)
        for s, c in zip(m.soiled_scans, m.control_scans)
    ]
    asts = tuple(ast(t, cell.full_band) for t in taus)
    spread = max(asts) - min(asts)
    if spread_mode == "relative":
        spread = spread / (sum(asts) / len(asts))
    elif spread_mode != "absolute":
        raise ValueError(f"spread_mode must be 'absolute' or 'relative', got {spread_mode!r}")
    if spread > spread_threshold:
        return WeekValidation(False, None, "SpreadExceeded", asts, spread)
    grid = _union_grid(taus)
    mean_vals = np.mean(
        [np.interp(grid, t.wavelengths_nm, t.values) for t in taus], axis=0
    )
    tau = Spectrum(grid, mean_vals, Kind.TRANSMITTANCE)
    return WeekValidation(True, tau, None, asts, spread)


def is_cloudy(day: FieldDay, threshold: float = CLOUDY_THRESHOLD) -> bool:
    """True iff the day's total-DNI/total-GNI ratio is below the threshold.

    Sums run over records with positive GNI; a day without any raises
    :class:`NoIrradianceRecords`.
    """
    recs = [r for r in day.records if r.gni > 0.0]
    if not recs:
        raise NoIrradianceRecords(f"day {day.date}: no records with GNI > 0")
    total_dni = sum(r.dni for r in recs)
    total_gni = sum(r.gni for r in recs)
    return total_dni / total_gni < threshold


def select_spectra(scan_date: dt.date,
                   days: Sequence[FieldDay] | Mapping[dt.date, FieldDay]) -> FieldDay:
    """Pick the field day whose spectra represent a scan date.

    The scan day itself if it is clear; otherwise the nearest clear day
    within +/-1 day, preferring the previous day on a tie (the coupon
    state matches the day before the scan better than the day after).
    """
    if not isinstance(days, Mapping):
        days = {d.date: d for d in days}
    for offset in (0, -1, +1):
        day = days.get(scan_date + dt.timedelta(days=offset))
        if day is None:
            continue
        try:
            cloudy = is_cloudy(day)
        except NoIrradianceRecords:
            continue
        if not cloudy:
            return day
    raise NoClearDay(f"no clear field day within +/-1 day of {scan_date}")


# ---------------------------------------------------------------------------
# Campaign driver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeeklyOutcome:
    """Per-week result: either a full report or a rejection reason."""

    week_id: int
    scan_date: dt.date
    accepted: bool
    rejection_reason: str | None
    spectra_date: dt.date | None
    tau: Spectrum | None
    report: IndexReport | None
    ast_full: float | None
    ast_by_band: dict[str, float] | None

    def to_json_dict(self) -> dict:
        return {
            "week_id": self.week_id,
            "scan_date": self.scan_date.isoformat(),
            "accepted": self.accepted,
            "rejection_reason": self.rejection_reason,
            "spectra_date": self.spectra_date.isoformat() if self.spectra_date else None,
            "ast_full": self.ast_full,
            "ast_by_band": self.ast_by_band,
            "report": self.report.to_dict() if self.report else None,
            "tau": None
            if self.tau is None
            else {
                "wavelengths_nm": [float(x) for x in self.tau.wavelengths_nm],
                "values": [float(x) for x in self.tau.values],
            },
        }


@dataclass(frozen=True)
class CampaignResult:
    """All weekly outcomes plus summary statistics over accepted weeks."""

    weekly: tuple[WeeklyOutcome, ...]
    summary: dict
    ast_band_names: tuple[str, ...]
    aggregation: str
    cell_name: str

    @property
    def accepted(self) -> tuple[WeeklyOutcome, ...]:
        return tuple(w for w in self.weekly if w.accepted)

    def to_json_dict(self) -> dict:
        return {
            "cell": self.cell_name,
            "aggregation": self.aggregation,
            "ast_band_names": list(self.ast_band_names),
            "summary": self.summary,
            "weeks": [w.to_json_dict() for w in self.weekly],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def weekly_csv(self) -> str:
        """Wide CSV, one row per week, plot-ready."""
        scalar_cols = [
            "sratio", "bsratio", "ssratio",
            "smr_cleaned", "smr_soiled", "smratio",
            "limiting_cleaned", "limiting_soiled",
        ]
        ast_cols = [f"ast_{b}" for b in self.ast_band_names]
        header = ["week_id", "scan_date", "accepted", "rejection_reason",
                  "spectra_date"] + scalar_cols + ast_cols
        lines = [",".join(header)]
        for w in self.weekly:
            row = [
                str(w.week_id),
                w.scan_date.isoformat(),
                "true" if w.accepted else "false",
                w.rejection_reason or "",
                w.spectra_date.isoformat() if w.spectra_date else "",
            ]
            rep = w.report.to_dict() if w.report else {}
            for col in scalar_cols:
                v = rep.get(col)
                row.append("" if v is None else (repr(float(v)) if not isinstance(v, str) else v))
            for bname in self.ast_band_names:
                v = (w.ast_by_band or {}).get(bname)
                row.append("" if v is None else repr(float(v)))
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def _noon_record(day: FieldDay) -> FieldRecord | None:
    """Spectral record nearest 12:00 local clock time (earlier wins ties)."""
    recs = day.spectral_records
    if not recs:
        return None
    noon = dt.datetime.combine(day.date, dt.time(12, 0))
    return min(recs, key=lambda r: abs(r.timestamp - noon))


def run_campaign(weeks: Iterable[WeeklyMeasurement],
                 days: Iterable[FieldDay],
                 cell: CellModel,
                 aggregation: Aggregation = Aggregation.DAILY_CURRENT_WEIGHTED,
                 pair: tuple[str, str] | None = None,
                 spread_threshold: float = SPREAD_THRESHOLD,
                 spread_mode: str = "absolute") -> CampaignResult:
    """Run the full weekly procedure over a campaign.

    Per-week failures are recorded as rejections (with the error kind as
    the reason) and never abort the campaign. Summary statistics cover
    accepted weeks only.
    """
    day_map = {d.date: d for d in days}
    band_names = (cell.full_band.name,) + tuple(j.band.name for j in cell.junctions)
    outcomes: list[WeeklyOutcome] = []
    for m in sorted(weeks, key=lambda w: w.week_id):
        scan_date = m.scan_date
        tau = None
        spectra_date = None
        report = None
        ast_full = None
        ast_by_band = None
        accepted = False
        reason: str | None = None
        try:
            v = validate_week(m, cell, spread_threshold, spread_mode)
            if not v.accepted:
                reason = v.reason
            else:
                tau = v.tau
                ast_by_band = {b: ast(tau, _band_of(cell, b)) for b in band_names}
                ast_full = ast_by_band[cell.full_band.name]
                day = select_spectra(scan_date, day_map)
                spectra_date = day.date
                if aggregation is Aggregation.NOON:
                    rec = _noon_record(day)
                    spectra = [] if rec is None else [rec.spectral_dni]
                else:
                    spectra = [r.spectral_dni for r in day.spectral_records]
                if not spectra:
                    reason = "NoSpectralData"
                else:
                    report = index_report_weighted(spectra, cell, tau, pair)
                    accepted = True
        except SoilspecError as exc:
            reason = exc.kind
        outcomes.append(
            WeeklyOutcome(
                week_id=m.week_id,
                scan_date=scan_date,
                accepted=accepted,
                rejection_reason=None if accepted else reason,
                spectra_date=spectra_date,
                tau=tau,
                report=report,
                ast_full=ast_full,
                ast_by_band=ast_by_band,
            )
        )
    summary = _summarize(outcomes, band_names)
    return CampaignResult(
        weekly=tuple(outcomes),
        summary=summary,
        ast_band_names=band_names,
        aggregation=aggregation.value,
        cell_name=cell.name,
    )


def _band_of(cell: CellModel, name: str) -> Waveband:
    if name == cell.full_band.name:
        return cell.full_band
    for j in cell.junctions:
        if j.band.name == name:
            return j.band
    raise KeyError(name)


_SUMMARY_INDEXES = ("sratio", "bsratio", "ssratio", "smr_cleaned", "smr_soiled", "smratio")


def _summarize(outcomes: Sequence[WeeklyOutcome], band_names: tuple[str, ...]) -> dict:
    accepted = [w for w in outcomes if w.accepted]
    indexes: dict = {}
    for key in _SUMMARY_INDEXES:
        vals = [getattr(w.report, key) for w in accepted]
        if vals:
            indexes[key] = {
                "mean": float(np.mean(vals)),
                "min": float(np.min(vals)),
                "max": float(np.max(vals)),
            }
    for bname in band_names:
        vals = [w.ast_by_band[bname] for w in accepted]
        if vals:
            indexes[f"ast_{bname}"] = {
                "mean": float(np.mean(vals)),
                "min": float(np.min(vals)),
                "max": float(np.max(vals)),
            }
    return {
        "n_weeks": len(outcomes),
        "n_accepted": len(accepted),
        "n_rejected": len(outcomes) - len(accepted),
        "indexes": indexes,
    }


# ---------------------------------------------------------------------------
# Regression analyses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SoilingRateFit:
    """Weekly transmittance derate over a dry stretch."""

    slope_per_week: float
    r2: float
    n: int
    degenerate: bool


def soiling_rate_fit(result: CampaignResult,
                     week_range: tuple[int, int] | None = None) -> SoilingRateFit:
    """OLS of full-band AST against week index over accepted weeks.

    ``week_range`` is an inclusive (first, last) week-id window. A
    constant AST series is reported as slope 0, r2 0 with the
    ``degenerate`` flag set.
    """
    pts = [
        (w.week_id, w.ast_full)
        for w in result.accepted
        if week_range is None or week_range[0] <= w.week_id <= week_range[1]
    ]
    if len(pts) < 3:
        raise TooFewPoints(f"soiling-rate fit needs >= 3 accepted weeks, got {len(pts)}")
    x = [p[0] for p in pts]
    y = [p[1] for p in pts]
    try:
        fit = linfit(x, y)
    except ZeroVariance:
        return SoilingRateFit(slope_per_week=0.0, r2=0.0, n=len(pts), degenerate=True)
    return SoilingRateFit(slope_per_week=fit.slope, r2=fit.r2, n=fit.n, degenerate=False)


def campaign_fits(result: CampaignResult) -> dict:
    """Linear fits of each index against the full-band AST.

    Mirrors the campaign regression analyses: sratio, bsratio, ssratio
    and smratio against ast_full, plus the first junction band's AST
    ratio against each other junction band. Fits that cannot be computed
    carry an ``error`` kind instead of coefficients.
    """
    accepted = result.accepted
    full = result.ast_band_names[0]
    x = [w.ast_full for w in accepted]
    fits: dict = {}

    def _fit(key: str, y: list[float]) -> None:
        try:
            fits[key] = linfit(x, y).to_dict()
        except SoilspecError as exc:
            fits[key] = {"error": exc.kind}

    for index in ("sratio", "bsratio", "ssratio", "smratio"):
        _fit(f"{index}_vs_ast_{full}", [getattr(w.report, index) for w in accepted])
    bands = result.ast_band_names[1:]
    if len(bands) >= 2:
        first = bands[0]
        for other in bands[1:]:
            y = [w.ast_by_band[first] / w.ast_by_band[other] for w in accepted]
            _fit(f"ast_{first}_over_{other}_vs_ast_{full}", y)
    return fits


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

FIELD_HEADER = ("timestamp_iso8601,dni_wm2,gni_wm2,ghi_wm2,dhi_wm2,"
                "rainfall_mm,pm10,pm25,spectrum_file")
_SCAN_RE = re.compile(r"^week(\d+)_(soiled|control)_([123])\.csv$")


def _opt_float(text: str) -> float | None:
    return None if text == "" else float(text)


def read_field_csv(path: str | Path) -> FieldDay:
    """Read one day of field records.

    The ``spectrum_file`` column, when present, is a path relative to the
    CSV's own directory.
    """
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != FIELD_HEADER:
        raise ValueError(f"{path}: expected header {FIELD_HEADER!r}")
    records = []
    for raw in lines[1:]:
        if not raw.strip():
            continue
        parts = raw.split(",")
        if len(parts) != 9:
            raise ValueError(f"{path}: expected 9 columns, got {len(parts)}: {raw!r}")
        spec = None
        if parts[8]:
            spec = read_spectrum_csv(path.parent / parts[8])
        records.append(
            FieldRecord(
                timestamp=dt.datetime.fromisoformat(parts[0]),
                dni=float(parts[1]),
                gni=float(parts[2]),
                ghi=float(parts[3]),
                dhi=float(parts[4]),
                rainfall_mm=_opt_float(parts[5]),
                pm10=_opt_float(parts[6]),
                pm25=_opt_float(parts[7]),
                spectral_dni=spec,
            )
        )
    if not records:
        raise ValueError(f"{path}: no records")
    return FieldDay(date=records[0].timestamp.date(), records=tuple(records))


def write_field_day(day: FieldDay, out_dir: str | Path,
                    spectra_subdir: str = "spectra") -> Path:
    """Write one field day (and its referenced spectra) into a data dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = [FIELD_HEADER]
    for r in day.records:
        spec_rel = ""
        if r.spectral_dni is not None:
            (out_dir / spectra_subdir).mkdir(exist_ok=True)
            stamp = r.timestamp.strftime("%Y-%m-%dT%H-%M")
            spec_rel = f"{spectra_subdir}/{stamp}.csv"
            write_spectrum_csv(r.spectral_dni, out_dir / spec_rel)
        rows.append(",".join([
            r.timestamp.isoformat(),
            repr(float(r.dni)),
            repr(float(r.gni)),
            repr(float(r.ghi)),
            repr(float(r.dhi)),
            "" if r.rainfall_mm is None else repr(float(r.rainfall_mm)),
            "" if r.pm10 is None else repr(float(r.pm10)),
            "" if r.pm25 is None else repr(float(r.pm25)),
            spec_rel,
        ]))
    path = out_dir / f"field_{day.date.isoformat()}.csv"
    write_text_atomic(path, "\n".join(rows) + "\n")
    return path


def write_campaign_dir(weeks: Sequence[WeeklyMeasurement],
                       days: Sequence[FieldDay],
                       out_dir: str | Path,
                       cadence_days: int = 7) -> Path:
    """Write a complete campaign data directory the loader can ingest."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    weeks = sorted(weeks, key=lambda w: w.week_id)
    for m in weeks:
        for rep, scan in enumerate(m.soiled_scans, start=1):
            write_spectrum_csv(scan, out_dir / f"week{m.week_id:02d}_soiled_{rep}.csv")
        for rep, scan in enumerate(m.control_scans, start=1):
            write_spectrum_csv(scan, out_dir / f"week{m.week_id:02d}_control_{rep}.csv")
    for day in sorted(days, key=lambda d: d.date):
        write_field_day(day, out_dir)
    manifest: dict = {"cadence_days": cadence_days}
    if weeks:
        first = weeks[0]
        manifest["start_date"] = first.scan_date.isoformat()
        regular = all(
            m.scan_date == first.scan_date
            + dt.timedelta(days=cadence_days * (m.week_id - first.week_id))
            for m in weeks
        )
        if not regular:
            manifest["weeks"] = [
                {"week_id": m.week_id, "scan_date": m.scan_date.isoformat()}
                for m in weeks
            ]
    write_text_atomic(out_dir / "manifest.yaml",
                      yaml.safe_dump(manifest, sort_keys=True))
    return out_dir


def _parse_date(value) -> dt.date:
    if isinstance(value, dt.date):
        return value
    return dt.date.fromisoformat(str(value))


def load_campaign_dir(data_dir: str | Path,
                      required_coverage: tuple[float, float] | None = SCAN_COVERAGE_NM,
                      ) -> tuple[list[WeeklyMeasurement], list[FieldDay]]:
    """Load weekly scans and field days from a campaign data directory.

    Weekly scans follow the ``week<NN>_<soiled|control>_<1|2|3>.csv``
    convention; ``manifest.yaml`` may carry ``start_date`` and
    ``cadence_days`` (scan dates default to start + cadence * week
    offset) plus explicit per-week ``scan_date`` overrides. Scans that do
    not span ``required_coverage`` draw a warning; weeks whose scans
    cannot cover the analysis cell's full band are later rejected by the
    campaign run.
    """
    data_dir = Path(data_dir)
    if not data_dir.is_dir():
        raise FileNotFoundError(f"campaign data dir not found: {data_dir}")

    days = [read_field_csv(p) for p in sorted(data_dir.glob("field_*.csv"))]

    manifest: dict = {}
    manifest_path = data_dir / "manifest.yaml"
    if manifest_path.is_file():
        try:
            loaded = yaml.safe_load(manifest_path.read_text(encoding="utf-8"))
        except yaml.YAMLError as exc:
            raise ConfigError(f"{manifest_path}: invalid YAML: {exc}") from exc
        if loaded is not None:
            if not isinstance(loaded, dict):
                raise ConfigError(f"{manifest_path}: manifest must be a mapping")
            manifest = loaded

    scans: dict[int, dict[str, dict[int, Path]]] = {}
    for p in sorted(data_dir.iterdir()):
        m = _SCAN_RE.match(p.name)
        if m is None:
            continue
        wid, role, rep = int(m.group(1)), m.group(2), int(m.group(3))
        scans.setdefault(wid, {"soiled": {}, "control": {}})[role][rep] = p
    if not scans:
        raise NoWeeksFound(f"no weekly coupon scans found in {data_dir}")

    overrides: dict[int, dict] = {}
    for entry in manifest.get("weeks", []) or []:
        overrides[int(entry["week_id"])] = entry

    cadence = int(manifest.get("cadence_days", 7))
    start = manifest.get("start_date")
    if start is None:
        if days:
            start_date = days[0].date
        else:
            raise ConfigError(
                f"{data_dir}: cannot date weekly scans; provide manifest.yaml "
                "with start_date or include field_*.csv files"
            )
    else:
        start_date = _parse_date(start)
    first_wid = min(scans)

    weeks: list[WeeklyMeasurement] = []
    for wid in sorted(scans):
        entry = overrides.get(wid)
        if entry is not None and "scan_date" in entry:
            scan_date = _parse_date(entry["scan_date"])
        else:
            scan_date = start_date + dt.timedelta(days=cadence * (wid - first_wid))
        soiled = _read_scans(scans[wid]["soiled"], required_coverage)
        control = _read_scans(scans[wid]["control"], required_coverage)
        weeks.append(
            WeeklyMeasurement(
                week_id=wid,
                scan_date=scan_date,
                soiled_scans=soiled,
                control_scans=control,
            )
        )
    return weeks, days


def _read_scans(paths: Mapping[int, Path],
                required_coverage: tuple[float, float] | None) -> tuple[Spectrum, ...]:
    out = []
    for rep in sorted(paths):
        s = read_spectrum_csv(paths[rep])
        if required_coverage is not None:
            lo, hi = s.support
            if lo > required_coverage[0] or hi < required_coverage[1]:
                warnings.warn(
                    f"{paths[rep].name}: scan covers [{lo}, {hi}] nm, less than "
                    f"the {required_coverage} nm convention",
                    UserWarning,
                    stacklevel=2,
                )
        out.append(s)
    return tuple(out)
