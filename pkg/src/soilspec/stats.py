"""Error metrics and ordinary least squares for campaign analyses.

MAPE and MPE are percentage errors of a modelled series against a
measured one; R^2 is the squared sample Pearson correlation (implemented
in that exact form rather than 1 - SS_res/SS_tot; the two coincide for
OLS fits with an intercept).
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .errors import (
    DegenerateX,
    LengthMismatch,
    TooFewPoints,
    ZeroMeasured,
    ZeroVariance,
)

__all__ = ["FitResult", "mape", "mpe", "r2", "linfit"]


@dataclass(frozen=True)
class FitResult:
    """Ordinary-least-squares line plus its error statistics."""

    slope: float
    intercept: float
    r2: float
    mape_pct: float
    mpe_pct: float
    n: int

    def __post_init__(self) -> None:
        if not (0.0 <= self.r2 <= 1.0):
            raise ValueError(f"r2 must lie in [0, 1], got {self.r2}")
        if self.n < 3:
            raise ValueError(f"a fit needs n >= 3, got {self.n}")

    def to_dict(self) -> dict:
        return asdict(self)


def _paired(measured, modelled) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(measured, dtype=float)
    b = np.asarray(modelled, dtype=float)
    if a.ndim != 1 or b.ndim != 1 or a.size != b.size or a.size == 0:
        raise LengthMismatch(
            f"series must be 1-D, equal, nonzero length; got {a.shape} vs {b.shape}"
        )
    return a, b


def mape(measured, modelled) -> float:
    """Mean absolute percentage error of modelled against measured, in %."""
    a, b = _paired(measured, modelled)
    if np.any(a == 0.0):
        raise ZeroMeasured("measured series contains 0; MAPE undefined")
    return float(100.0 / a.size * np.sum(np.abs((b - a) / a)))


def mpe(measured, modelled) -> float:
    """Signed mean percentage error of modelled against measured, in %."""
    a, b = _paired(measured, modelled)
    if np.any(a == 0.0):
        raise ZeroMeasured("measured series contains 0; MPE undefined")
    return float(100.0 / a.size * np.sum((b - a) / a))


def r2(measured, modelled) -> float:
    """Squared sample Pearson correlation between the two series."""
    a, b = _paired(measured, modelled)
    da = a - a.mean()
    db = b - b.mean()
    ssa = float(np.sum(da * da))
    ssb = float(np.sum(db * db))
    if ssa == 0.0 or ssb == 0.0:
        raise ZeroVariance("a series is constant; correlation undefined")
    num = float(np.sum(da * db))
    val = (num * num) / (ssa * ssb)
    # Guard against 1 + few-ulp from rounding.
    return float(min(max(val, 0.0), 1.0))


def linfit(x, y) -> FitResult:
    """Ordinary least squares y = slope*x + intercept.

    The returned MAPE/MPE compare y (measured) against the fitted line
    (modelled). Raises TooFewPoints for n < 3 and DegenerateX when x has
    zero variance; a constant y propagates ZeroVariance from ``r2``.
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.ndim != 1 or ya.ndim != 1 or xa.size != ya.size:
        raise LengthMismatch(f"x and y must be 1-D equal length, got {xa.shape} vs {ya.shape}")
    n = int(xa.size)
    if n < 3:
        raise TooFewPoints(f"linear fit needs >= 3 points, got {n}")
    dx = xa - xa.mean()
    sxx = float(np.sum(dx * dx))
    if sxx == 0.0:
        raise DegenerateX("x values are all identical")
    slope = float(np.sum(dx * (ya - ya.mean())) / sxx)
    intercept = float(ya.mean() - slope * xa.mean())
    yhat = slope * xa + intercept
    return FitResult(
        slope=slope,
        intercept=intercept,
        r2=r2(ya, yhat),
        mape_pct=mape(ya, yhat),
        mpe_pct=mpe(ya, yhat),
        n=n,
    )
