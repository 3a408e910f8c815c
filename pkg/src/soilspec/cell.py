"""Multi-junction cell description and short-circuit current integrals.

A :class:`CellModel` is an ordered stack of :class:`Junction` objects
(waveband + spectral response), the cell's full absorption band, a
reference spectrum, and the per-junction reference currents computed
under it. The stack current is the minimum junction current over the
junctions eligible to limit; by default the germanium-style bottom
junction of a 3J stack is excluded from that minimum because its large
current excess keeps it from limiting under realistic soiling.

Spectral responses are external data. Configs may supply EQE curves
instead of SR; the loader converts with SR(lambda) = EQE * lambda * q/(h*c)
using exact SI values for q, h, c.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping, NamedTuple, Sequence

import numpy as np
import yaml

from .errors import (
    BandCoverage,
    ConfigError,
    KindMismatch,
    MissingReferenceSpectrum,
    NoEligibleJunction,
)
from .spectral import (
    DIMENSIONLESS,
    SR_UNITS,
    Kind,
    Spectrum,
    Waveband,
    integrate,
    pointwise_product,
    read_spectrum_csv,
    require_kind,
)

__all__ = [
    "Junction",
    "CellModel",
    "JscResult",
    "jsc_junction",
    "jsc_cell",
    "build_cell",
    "boxcar_cell",
    "load_cell",
    "eqe_to_sr",
    "reference_spectrum",
    "reference_spectrum_path",
    "ELEMENTARY_CHARGE_C",
    "PLANCK_J_S",
    "LIGHT_SPEED_M_S",
]

# Exact SI defining constants (2019 redefinition).
ELEMENTARY_CHARGE_C = 1.602176634e-19
PLANCK_J_S = 6.62607015e-34
LIGHT_SPEED_M_S = 299792458.0

_REL_TOL_REFERENCE = 1e-9


def eqe_to_sr(eqe: Spectrum) -> Spectrum:
    """Convert an external-quantum-efficiency curve to spectral response.

    SR(lambda) = EQE(lambda) * lambda * q / (h c), with lambda in metres.
    The input must be a dimensionless SpectralResponse-kind curve.
    """
    require_kind(eqe, Kind.SPECTRAL_RESPONSE, "EQE curve")
    if eqe.units != DIMENSIONLESS:
        raise KindMismatch(
            f"EQE curve must be dimensionless, got units {eqe.units!r}"
        )
    lam_m = eqe.wavelengths_nm * 1e-9
    sr_vals = eqe.values * lam_m * (ELEMENTARY_CHARGE_C / (PLANCK_J_S * LIGHT_SPEED_M_S))
    return Spectrum(eqe.wavelengths_nm, sr_vals, Kind.SPECTRAL_RESPONSE, SR_UNITS)


@dataclass(frozen=True)
class Junction:
    """One subcell: a waveband plus its spectral response.

    ``limiting_eligible`` marks whether the junction participates in the
    stack-current minimum.
    """

    name: str
    band: Waveband
    sr: Spectrum
    limiting_eligible: bool = True

    def __post_init__(self) -> None:
        require_kind(self.sr, Kind.SPECTRAL_RESPONSE, f"junction {self.name!r} SR")
        if not self.sr.covers(self.band):
            lo, hi = self.sr.support
            raise BandCoverage(
                f"junction {self.name!r}: SR support [{lo}, {hi}] nm does not "
                f"cover band [{self.band.lambda_min_nm}, {self.band.lambda_max_nm}] nm"
            )
        if self.sr.values.min() < 0.0:
            raise ValueError(f"junction {self.name!r}: SR values must be >= 0")


class JscResult(NamedTuple):
    """Stack current, name of the limiting junction, and a tie flag."""

    value: float
    limiting: str
    tie: bool


def jsc_junction(e: Spectrum, junction: Junction, tau: Spectrum | None = None) -> float:
    """Short-circuit current density of one junction, in A*m^-2.

    Integrates E(lambda) * [tau(lambda)] * SR(lambda) over the junction
    band. ``tau`` is the soiling transmittance; omit it for the cleaned
    current.
    """
    require_kind(e, Kind.IRRADIANCE, "irradiance spectrum")
    if tau is not None:
        require_kind(tau, Kind.TRANSMITTANCE, "soiling transmittance")
        integrand = pointwise_product(e, tau, junction.sr)
    else:
        integrand = pointwise_product(e, junction.sr)
    return integrate(integrand, junction.band)


@dataclass(frozen=True)
class CellModel:
    """An ordered multi-junction stack with reference calibration.

    ``reference_currents`` are the per-junction currents under
    ``reference_spectrum``; they are recomputed at construction and must
    match to 1e-9 relative.
    """

    name: str
    junctions: tuple[Junction, ...]
    full_band: Waveband
    reference_spectrum: Spectrum
    reference_currents: Mapping[str, float]

    def __post_init__(self) -> None:
        if len(self.junctions) < 2:
            raise ConfigError(f"cell {self.name!r}: need >= 2 junctions")
        names = [j.name for j in self.junctions]
        if len(set(names)) != len(names):
            raise ConfigError(f"cell {self.name!r}: duplicate junction names {names}")
        if not any(j.limiting_eligible for j in self.junctions):
            raise NoEligibleJunction(
                f"cell {self.name!r}: at least one junction must be limiting-eligible"
            )
        span_lo = min(j.band.lambda_min_nm for j in self.junctions)
        span_hi = max(j.band.lambda_max_nm for j in self.junctions)
        if (
            abs(self.full_band.lambda_min_nm - span_lo) > 1e-9
            or abs(self.full_band.lambda_max_nm - span_hi) > 1e-9
        ):
            raise ConfigError(
                f"cell {self.name!r}: full band [{self.full_band.lambda_min_nm}, "
                f"{self.full_band.lambda_max_nm}] nm must span the junction bands "
                f"[{span_lo}, {span_hi}] nm"
            )
        require_kind(self.reference_spectrum, Kind.IRRADIANCE, "reference spectrum")
        object.__setattr__(self, "junctions", tuple(self.junctions))
        object.__setattr__(self, "reference_currents", dict(self.reference_currents))
        for j in self.junctions:
            expected = jsc_junction(self.reference_spectrum, j)
            stored = self.reference_currents.get(j.name)
            if stored is None:
                raise ConfigError(
                    f"cell {self.name!r}: missing reference current for {j.name!r}"
                )
            scale = max(abs(expected), abs(stored))
            if scale > 0.0 and abs(stored - expected) > _REL_TOL_REFERENCE * scale:
                raise ConfigError(
                    f"cell {self.name!r}: reference current for {j.name!r} is "
                    f"{stored}, recomputed {expected} (tolerance 1e-9 relative)"
                )

    def junction(self, name: str) -> Junction:
        for j in self.junctions:
            if j.name == name:
                return j
        raise KeyError(f"cell {self.name!r} has no junction {name!r}")

    @property
    def junction_names(self) -> tuple[str, ...]:
        return tuple(j.name for j in self.junctions)


def jsc_cell(e: Spectrum, cell: CellModel, tau: Spectrum | None = None) -> JscResult:
    """Stack short-circuit current: min over limiting-eligible junctions.

    Ties are broken by junction order (first wins) and reported via the
    ``tie`` flag.
    """
    eligible = [j for j in cell.junctions if j.limiting_eligible]
    if not eligible:
        raise NoEligibleJunction(f"cell {cell.name!r}: no limiting-eligible junction")
    currents = [(jsc_junction(e, j, tau), j.name) for j in eligible]
    # min() keeps the first minimal element, which is the tie-break rule.
    value, limiting = min(currents, key=lambda c: c[0])
    tie = sum(1 for c, _ in currents if c == value) > 1
    return JscResult(value=value, limiting=limiting, tie=tie)


def build_cell(
    name: str,
    junctions: Sequence[Junction],
    reference: Spectrum,
    full_band: Waveband | None = None,
    full_band_name: str = "full",
    reference_currents: Mapping[str, float] | None = None,
) -> CellModel:
    """Assemble a CellModel, computing reference currents when not given."""
    junctions = tuple(junctions)
    if full_band is None:
        full_band = Waveband(
            full_band_name,
            min(j.band.lambda_min_nm for j in junctions),
            max(j.band.lambda_max_nm for j in junctions),
        )
    if reference_currents is None:
        reference_currents = {j.name: jsc_junction(reference, j) for j in junctions}
    return CellModel(
        name=name,
        junctions=junctions,
        full_band=full_band,
        reference_spectrum=reference,
        reference_currents=reference_currents,
    )


def boxcar_cell(
    bands: Sequence[tuple[str, float, float]],
    sr_height: float = 1.0,
    reference: Spectrum | None = None,
    not_eligible: Sequence[str] = (),
    name: str = "boxcar",
    full_band_name: str = "full",
) -> CellModel:
    """Toy cell with a flat spectral response on each band.

    With SR == 1 the junction current reduces to the band integral of the
    irradiance, which makes hand-checked oracles easy. The default
    reference spectrum is flat 1 W*m^-2*nm^-1 over the union of bands.
    """
    lo = min(b[1] for b in bands)
    hi = max(b[2] for b in bands)
    if reference is None:
        reference = Spectrum(np.array([lo, hi]), np.array([1.0, 1.0]), Kind.IRRADIANCE)
    junctions = [
        Junction(
            name=bname,
            band=Waveband(bname, bmin, bmax),
            sr=Spectrum(
                np.array([bmin, bmax]),
                np.array([sr_height, sr_height]),
                Kind.SPECTRAL_RESPONSE,
            ),
            limiting_eligible=bname not in set(not_eligible),
        )
        for bname, bmin, bmax in bands
    ]
    return build_cell(name, junctions, reference, full_band_name=full_band_name)


# ---------------------------------------------------------------------------
# Bundled reference spectrum and config loading
# ---------------------------------------------------------------------------

def reference_spectrum_path() -> Path:
    """Path of the bundled reference direct-normal spectrum."""
    return Path(str(resources.files("soilspec").joinpath("data/reference_spectrum.csv")))


@lru_cache(maxsize=1)
def reference_spectrum() -> Spectrum:
    """The bundled AM1.5-direct-shaped reference spectrum.

    This is a smooth stand-in with the magnitude and shape of the direct +
    circumsolar reference conditions used to rate concentrator cells; see
    the data README for provenance. For bit-exact rating work, point cell
    configs at an official reference table in the same CSV format.
    """
    path = reference_spectrum_path()
    if not path.is_file():
        raise MissingReferenceSpectrum(f"bundled reference spectrum missing: {path}")
    return read_spectrum_csv(path)


def _load_sr(entry: Mapping, base_dir: Path, jname: str) -> Spectrum:
    sr_file = entry.get("sr_file")
    eqe_file = entry.get("eqe_file")
    if (sr_file is None) == (eqe_file is None):
        raise ConfigError(
            f"junction {jname!r}: specify exactly one of sr_file or eqe_file"
        )
    rel = sr_file if sr_file is not None else eqe_file
    path = base_dir / rel
    if not path.is_file():
        raise ConfigError(f"junction {jname!r}: response file not found: {path}")
    curve = read_spectrum_csv(path)
    if sr_file is not None:
        if curve.units == DIMENSIONLESS:
            raise ConfigError(
                f"junction {jname!r}: {path} is dimensionless; load it via eqe_file"
            )
        return curve
    return eqe_to_sr(curve)


def load_cell(config_path: str | Path) -> CellModel:
    """Load a cell model from a YAML config document.

    The document names the junction bands and their SR/EQE data files
    (paths relative to the config file), and may override the reference
    spectrum and pin expected reference currents::

        name: my-cell
        full_band: {name: MJ, min_nm: 300, max_nm: 1810}   # optional
        reference_spectrum: my_reference.csv                # optional
        junctions:
          - name: top
            band: [300, 720]
            eqe_file: eqe_top.csv
          - name: bot
            band: [720, 1810]
            sr_file: sr_bot.csv
            limiting_eligible: false
        reference_currents: {top: 123.4, bot: 234.5}        # optional, checked
    """
    config_path = Path(config_path)
    if not config_path.is_file():
        raise FileNotFoundError(f"cell config not found: {config_path}")
    try:
        doc = yaml.safe_load(config_path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"{config_path}: invalid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{config_path}: config must be a mapping")
    base_dir = config_path.parent

    name = doc.get("name")
    if not name:
        raise ConfigError(f"{config_path}: missing 'name'")
    jdocs = doc.get("junctions")
    if not isinstance(jdocs, list) or len(jdocs) < 2:
        raise ConfigError(f"{config_path}: 'junctions' must list >= 2 junctions")

    ref_path = doc.get("reference_spectrum")
    if ref_path is None:
        reference = reference_spectrum()
    else:
        full = base_dir / ref_path
        if not full.is_file():
            raise MissingReferenceSpectrum(f"reference spectrum not found: {full}")
        reference = read_spectrum_csv(full)

    junctions = []
    for entry in jdocs:
        jname = entry.get("name")
        if not jname:
            raise ConfigError(f"{config_path}: junction missing 'name'")
        band = entry.get("band")
        if not (isinstance(band, (list, tuple)) and len(band) == 2):
            raise ConfigError(f"junction {jname!r}: 'band' must be [min_nm, max_nm]")
        junctions.append(
            Junction(
                name=jname,
                band=Waveband(jname, float(band[0]), float(band[1])),
                sr=_load_sr(entry, base_dir, jname),
                limiting_eligible=bool(entry.get("limiting_eligible", True)),
            )
        )

    full_band = None
    fb = doc.get("full_band")
    full_band_name = "MJ"
    if fb is not None:
        if not (isinstance(fb, dict) and {"name", "min_nm", "max_nm"} <= set(fb)):
            raise ConfigError(f"{config_path}: full_band needs name/min_nm/max_nm")
        full_band = Waveband(str(fb["name"]), float(fb["min_nm"]), float(fb["max_nm"]))

    stored = doc.get("reference_currents")
    return build_cell(
        name=str(name),
        junctions=junctions,
        reference=reference,
        full_band=full_band,
        full_band_name=full_band_name,
        reference_currents=stored,
    )


@lru_cache(maxsize=1)
def bundled_cell_config_path() -> Path:
    """Path of the bundled lattice-matched 3J config."""
    return Path(str(resources.files("soilspec").joinpath("data/cells/lattice_matched_3j.yaml")))


def load_bundled_3j() -> CellModel:
    """Load the bundled GaInP/GaInAs/Ge-style triple-junction config."""
    return load_cell(bundled_cell_config_path())
