"""Measured two-photon spectral intensity: loading, projections, bandwidths.

A joint spectral intensity is a rectangular grid of coincidence counts over
signal and idler wavelengths.  Projections collapse it onto the signal
wavelength axis or onto the diagonal / anti-diagonal cuts.  Diagonal
binning groups cells by index sum or difference, which moves counts
between bins without creating or destroying any, so every projection
conserves the total exactly.

The diagonal coordinate is arc length, (lambda_s +/- lambda_i) / sqrt(2),
with bin width step / sqrt(2): widths quoted along the cut axes then close
with the wavelength marginals under the usual bivariate Gaussian variance
identities, which is how diagonal widths are normally reported.

Wavelengths are meters internally; CSV files carry nm.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import wavelength_bandwidth_to_frequency
from .errors import (
    CsvFormatError,
    IncompleteGrid,
    NegativeCount,
    NonUniform,
    NotSquare,
)
from .extraction import fwhm

SQRT2 = math.sqrt(2.0)

# Relative tolerance for wavelength axis uniformity and step equality.
AXIS_TOL = 1e-6

PROJECTION_AXES = ("x", "diagonal", "antidiagonal")


@dataclass(frozen=True, eq=False)
class TsiGrid:
    """Coincidence counts on a rectangular wavelength grid (meters)."""

    lambda_s: np.ndarray
    lambda_i: np.ndarray
    counts: np.ndarray

    def __post_init__(self) -> None:
        ls = np.asarray(self.lambda_s, dtype=float).copy()
        li = np.asarray(self.lambda_i, dtype=float).copy()
        c = np.asarray(self.counts, dtype=float).copy()
        if ls.ndim != 1 or li.ndim != 1:
            raise ValueError("wavelength axes must be 1D")
        if c.shape != (len(ls), len(li)):
            raise ValueError("counts shape must be (len(lambda_s), len(lambda_i))")
        for name, ax in (("signal", ls), ("idler", li)):
            if len(ax) < 2:
                raise IncompleteGrid(f"{name} axis needs at least 2 points")
            steps = np.diff(ax)
            if np.any(steps <= 0.0):
                raise NonUniform(f"{name} wavelength axis must be increasing")
            if np.max(np.abs(steps - steps[0])) > AXIS_TOL * steps[0]:
                raise NonUniform(f"{name} wavelength axis is not uniform")
        if not np.all(np.isfinite(c)):
            raise CsvFormatError("counts contain non-finite values")
        if np.any(c < 0.0):
            raise NegativeCount("coincidence counts must be nonnegative")
        for arr in (ls, li, c):
            arr.setflags(write=False)
        object.__setattr__(self, "lambda_s", ls)
        object.__setattr__(self, "lambda_i", li)
        object.__setattr__(self, "counts", c)

    @property
    def step_s(self) -> float:
        return float(self.lambda_s[1] - self.lambda_s[0])

    @property
    def step_i(self) -> float:
        return float(self.lambda_i[1] - self.lambda_i[0])

    @property
    def is_square(self) -> bool:
        return (
            len(self.lambda_s) == len(self.lambda_i)
            and abs(self.step_i - self.step_s) <= AXIS_TOL * self.step_s
        )

    @property
    def total(self) -> float:
        return float(np.sum(self.counts))

    def reference_wavelength(self) -> float:
        """Intensity centroid wavelength, averaged over both photons (m)."""
        m_s = np.sum(self.counts, axis=1)
        m_i = np.sum(self.counts, axis=0)
        c_s = float(np.sum(self.lambda_s * m_s) / np.sum(m_s))
        c_i = float(np.sum(self.lambda_i * m_i) / np.sum(m_i))
        return 0.5 * (c_s + c_i)


@dataclass(frozen=True, eq=False)
class TsiProfile:
    """One projection: per-bin counts over a 1D wavelength coordinate (m).

    The coordinate is plain signal wavelength for the x axis and arc length
    (lambda_s +/- lambda_i) / sqrt(2) for the diagonal cuts.
    """

    axis: str
    coordinate: np.ndarray
    counts: np.ndarray

    def __post_init__(self) -> None:
        if self.axis not in PROJECTION_AXES:
            raise ValueError(f"axis must be one of {PROJECTION_AXES}")
        if self.coordinate.shape != self.counts.shape:
            raise ValueError("coordinate and counts must have equal shape")

    @property
    def total(self) -> float:
        return float(np.sum(self.counts))

    def fwhm(self) -> float:
        return fwhm(self.coordinate, self.counts)


def subtract_background(tsi: TsiGrid) -> TsiGrid:
    """Remove a flat background floor estimated from the darkest cells.

    The floor is the 5th percentile of the counts; results are clipped at
    zero.  Useful before projecting data with accidental coincidences,
    harmless on clean data.
    """
    floor = float(np.quantile(tsi.counts, 0.05))
    cleaned = np.maximum(tsi.counts - floor, 0.0)
    return TsiGrid(tsi.lambda_s, tsi.lambda_i, cleaned)


def _diagonal_masses(tsi: TsiGrid, sign: int) -> tuple[np.ndarray, np.ndarray]:
    if not tsi.is_square:
        raise NotSquare("diagonal projections need a square wavelength grid")
    step = tsi.step_s
    n = len(tsi.lambda_s)
    j = np.arange(n)[:, None]
    k = np.arange(n)[None, :]
    if sign > 0:
        idx = j + k
        first = float(tsi.lambda_s[0] + tsi.lambda_i[0])
    else:
        idx = j - k + (n - 1)
        first = float(tsi.lambda_s[0] - tsi.lambda_i[-1])
    n_bins = 2 * n - 1
    masses = np.bincount(idx.ravel(), weights=tsi.counts.ravel(), minlength=n_bins)
    coord = (first + step * np.arange(n_bins)) / SQRT2
    return coord, masses


def project(tsi: TsiGrid, axis: str) -> TsiProfile:
    """Collapse the joint intensity onto one axis, conserving total counts."""
    if axis == "x":
        return TsiProfile("x", tsi.lambda_s, np.sum(tsi.counts, axis=1))
    if axis == "diagonal":
        coord, masses = _diagonal_masses(tsi, +1)
        return TsiProfile("diagonal", coord, masses)
    if axis == "antidiagonal":
        coord, masses = _diagonal_masses(tsi, -1)
        return TsiProfile("antidiagonal", coord, masses)
    raise ValueError(f"axis must be one of {PROJECTION_AXES}")


def profile_bandwidth_report(
    profile: TsiProfile, center_wavelength: float
) -> tuple[float, float]:
    """FWHM of a projection in meters, and its frequency equivalent in Hz.

    The conversion evaluates dnu = c * dlambda / lambda0**2 at the given
    center wavelength, the standard scalar small-bandwidth rule.
    """
    width = profile.fwhm()
    return width, wavelength_bandwidth_to_frequency(width, center_wavelength)


@dataclass(frozen=True)
class TsiBandwidthReport:
    """FWHM of the three projections, in meters and converted to Hz.

    All conversions use the grid's reference (centroid) wavelength,
    matching the practice of quoting every bandwidth at the degenerate
    wavelength.
    """

    reference_wavelength: float
    x_fwhm: float
    diagonal_fwhm: float
    antidiagonal_fwhm: float
    x_fwhm_hz: float
    diagonal_fwhm_hz: float
    antidiagonal_fwhm_hz: float


def bandwidth_report(tsi: TsiGrid) -> TsiBandwidthReport:
    lam0 = tsi.reference_wavelength()
    widths = {}
    for axis in PROJECTION_AXES:
        widths[axis] = profile_bandwidth_report(project(tsi, axis), lam0)
    return TsiBandwidthReport(
        reference_wavelength=lam0,
        x_fwhm=widths["x"][0],
        diagonal_fwhm=widths["diagonal"][0],
        antidiagonal_fwhm=widths["antidiagonal"][0],
        x_fwhm_hz=widths["x"][1],
        diagonal_fwhm_hz=widths["diagonal"][1],
        antidiagonal_fwhm_hz=widths["antidiagonal"][1],
    )


def correlated_gaussian_tsi(
    x_fwhm_nm: float,
    antidiagonal_fwhm_nm: float,
    diagonal_fwhm_nm: float,
    center_nm: float = 1584.0,
    half_span_nm: float = 25.0,
    count: int = 251,
    peak_counts: float = 1000.0,
) -> TsiGrid:
    """Synthetic positively correlated joint intensity with set bandwidths.

    Builds the bivariate Gaussian whose signal marginal and arc-length
    diagonal / anti-diagonal cuts have exactly the requested FWHM.  With
    sum / difference standard deviations s_p, s_m (of lambda_s +/- lambda_i)
    fixed by the two cut widths, the idler variance and the correlation
    follow from

        var_i = (s_p**2 + s_m**2) / 2 - var_s
        rho   = (s_p**2 - s_m**2) / (4 * sigma_s * sigma_i).

    Raises ValueError when the three widths are not realizable by any
    Gaussian (var_i <= 0 or |rho| >= 1).
    """
    to_sigma = 1.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)))
    sigma_s = x_fwhm_nm * to_sigma
    s_p = SQRT2 * diagonal_fwhm_nm * to_sigma
    s_m = SQRT2 * antidiagonal_fwhm_nm * to_sigma
    var_i = 0.5 * (s_p**2 + s_m**2) - sigma_s**2
    if var_i <= 0.0:
        raise ValueError("requested widths imply nonpositive idler variance")
    sigma_i = math.sqrt(var_i)
    rho = (s_p**2 - s_m**2) / (4.0 * sigma_s * sigma_i)
    if abs(rho) >= 1.0:
        raise ValueError(f"requested widths imply |rho| = {abs(rho):.4f} >= 1")

    axis = np.linspace(center_nm - half_span_nm, center_nm + half_span_nm, count)
    ds = (axis - center_nm)[:, None] / sigma_s
    di = (axis - center_nm)[None, :] / sigma_i
    quad = (ds**2 - 2.0 * rho * ds * di + di**2) / (2.0 * (1.0 - rho**2))
    counts = peak_counts * np.exp(-quad)
    return TsiGrid(axis * 1e-9, axis * 1e-9, counts)


# ---------------------------------------------------------------------------
# CSV input and output
# ---------------------------------------------------------------------------

def load_tsi(source: str | os.PathLike | Iterable[str]) -> TsiGrid:
    """Read a joint intensity from lambda_s_nm,lambda_i_nm,counts records.

    source is a CSV path or any iterable of CSV lines.  Rows may come in
    any order but must tile a complete rectangular grid with each
    wavelength pair appearing exactly once.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return load_tsi(list(fh))

    rows: list[tuple[float, float, float]] = []
    for lineno, line in enumerate(source, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split(",")
        if parts[0].strip() == "lambda_s_nm":
            continue
        if len(parts) != 3:
            raise CsvFormatError(f"line {lineno}: expected 3 columns")
        try:
            rows.append((float(parts[0]), float(parts[1]), float(parts[2])))
        except ValueError as exc:
            raise CsvFormatError(f"line {lineno}: {exc}") from exc
    if not rows:
        raise IncompleteGrid("no data rows found")

    data = np.array(rows)
    lam_s = np.unique(data[:, 0])
    lam_i = np.unique(data[:, 1])
    n_s, n_i = len(lam_s), len(lam_i)
    if n_s < 2 or n_i < 2:
        raise IncompleteGrid("grid needs at least 2 distinct wavelengths per axis")
    if len(rows) != n_s * n_i:
        raise IncompleteGrid(
            f"{len(rows)} rows cannot tile a {n_s} x {n_i} wavelength grid"
        )
    j = np.searchsorted(lam_s, data[:, 0])
    k = np.searchsorted(lam_i, data[:, 1])
    counts = np.full((n_s, n_i), np.nan)
    seen = np.zeros((n_s, n_i), dtype=bool)
    for jj, kk, value in zip(j, k, data[:, 2]):
        if seen[jj, kk]:
            raise CsvFormatError(
                f"duplicate wavelength pair ({lam_s[jj]}, {lam_i[kk]})"
            )
        seen[jj, kk] = True
        counts[jj, kk] = value
    if not np.all(seen):
        raise IncompleteGrid("grid has missing wavelength pairs")
    return TsiGrid(lam_s * 1e-9, lam_i * 1e-9, counts)


def save_profile(profile: TsiProfile, path: str | os.PathLike) -> None:
    """Write a projection as a wavelength_nm,counts CSV with an axis comment."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# axis={profile.axis}\n")
        fh.write("wavelength_nm,counts\n")
        for x, c in zip(profile.coordinate, profile.counts):
            fh.write(f"{float(x / 1e-9)!r},{float(c)!r}\n")


def save_tsi(tsi: TsiGrid, path: str | os.PathLike) -> None:
    """Write a joint intensity as a lambda_s_nm,lambda_i_nm,counts CSV."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("lambda_s_nm,lambda_i_nm,counts\n")
        for j, ls in enumerate(tsi.lambda_s):
            for k, li in enumerate(tsi.lambda_i):
                row = (float(ls / 1e-9), float(li / 1e-9), float(tsi.counts[j, k]))
                fh.write(f"{row[0]!r},{row[1]!r},{row[2]!r}\n")
