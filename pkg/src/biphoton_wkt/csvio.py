"""Interferogram and spectrum CSV schemas.

Both formats carry one `#` metadata comment, one header row, and data rows.
Floats are written with repr(), the shortest decimal that parses back to
the same double, so writes are deterministic and reads are lossless.
Files use fs and THz at the boundary; in-memory objects stay in SI.

    # kind=homi units=probability start_fs=-8000.0 step_fs=10.0
    delay_fs,value
    -8000.0,0.5
    ...

    # axis=omega_minus center_thz=0.0 start_thz=-24.9 step_thz=0.05
    freq_thz,intensity
    -24.9,0.0013
    ...

Spectrum intensity is a per-THz density (the SI per-(rad/s) density times
2*pi*1e12), so trapezoid integration over the freq_thz column gives the
same total as the in-memory spectrum.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .core import (
    DelayGrid,
    FrequencyGrid,
    Interferogram,
    Spectrum1D,
    angular_from_thz,
    thz_from_angular,
)
from .errors import CsvFormatError, NegativeCount, NonUniform

FS = 1e-15
PER_THZ = 2.0 * math.pi * 1e12  # per-(rad/s) density -> per-THz density

# kind -> spectrum axis label and back
AXIS_FOR_KIND = {"mzi": "omega", "nooni": "omega_plus", "homi": "omega_minus"}
KIND_FOR_AXIS = {v: k for k, v in AXIS_FOR_KIND.items()}


def _format(value: float) -> str:
    return repr(float(value))


def _parse_metadata(line: str) -> dict[str, str]:
    meta: dict[str, str] = {}
    for token in line.lstrip("#").split():
        if "=" not in token:
            raise CsvFormatError(f"bad metadata token {token!r}")
        key, _, value = token.partition("=")
        meta[key] = value
    return meta


def _read_rows(
    path: str | os.PathLike, header: str
) -> tuple[dict[str, str], np.ndarray]:
    meta: dict[str, str] = {}
    seen_header = False
    rows: list[tuple[float, float]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            if text.startswith("#"):
                meta.update(_parse_metadata(text))
                continue
            if not seen_header:
                if text != header:
                    raise CsvFormatError(
                        f"line {lineno}: expected header {header!r}, got {text!r}"
                    )
                seen_header = True
                continue
            parts = text.split(",")
            if len(parts) != 2:
                raise CsvFormatError(f"line {lineno}: expected 2 columns")
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except ValueError as exc:
                raise CsvFormatError(f"line {lineno}: {exc}") from exc
    if not seen_header:
        raise CsvFormatError(f"missing header row {header!r}")
    if len(rows) < 2:
        raise CsvFormatError("need at least 2 data rows")
    return meta, np.array(rows)


def _grid_metadata(
    meta: dict[str, str], column: np.ndarray, start_key: str, step_key: str, what: str
) -> tuple[float, float]:
    """Exact grid from metadata when present, else inferred from the column."""
    if start_key in meta and step_key in meta:
        try:
            start = float(meta[start_key])
            step = float(meta[step_key])
        except ValueError as exc:
            raise CsvFormatError(f"bad grid metadata: {exc}") from exc
        expected = start + step * np.arange(len(column))
        if np.max(np.abs(column - expected)) > 1e-6 * abs(step):
            raise NonUniform(f"{what} column disagrees with grid metadata")
        return start, step
    steps = np.diff(column)
    step = float(np.mean(steps))
    if step <= 0.0 or np.max(np.abs(steps - step)) > 1e-6 * abs(step):
        raise NonUniform(f"{what} axis is not uniformly increasing")
    return float(column[0]), step


# ---------------------------------------------------------------------------
# interferograms
# ---------------------------------------------------------------------------

def write_interferogram(ig: Interferogram, path: str | os.PathLike) -> None:
    if ig.kind is None:
        raise ValueError("cannot write an interferogram without a kind")
    start_fs = ig.delays.start / FS
    step_fs = ig.delays.step / FS
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(
            f"# kind={ig.kind} units={ig.units} "
            f"start_fs={_format(start_fs)} step_fs={_format(step_fs)}\n"
        )
        fh.write("delay_fs,value\n")
        for n, value in enumerate(ig.values):
            fh.write(
                f"{_format((ig.delays.start + n * ig.delays.step) / FS)},"
                f"{_format(value)}\n"
            )


def read_interferogram(path: str | os.PathLike) -> Interferogram:
    meta, data = _read_rows(path, "delay_fs,value")
    kind = meta.get("kind")
    if kind is not None and kind not in AXIS_FOR_KIND:
        raise CsvFormatError(f"unknown kind {kind!r}")
    units = meta.get("units", "probability")
    if units not in ("probability", "counts"):
        raise CsvFormatError(f"unknown units {units!r}")
    start_fs, step_fs = _grid_metadata(meta, data[:, 0], "start_fs", "step_fs", "delay")
    values = data[:, 1]
    if units == "counts":
        if np.any(values < 0.0):
            raise NegativeCount("counts column has negative entries")
        if np.max(np.abs(values - np.rint(values))) > 1e-9:
            raise CsvFormatError("counts column has non-integer entries")
    else:
        if values.min() < -1e-9 or values.max() > 1.0 + 1e-9:
            raise CsvFormatError("probability column leaves [0, 1]")
    grid = DelayGrid(start_fs * FS, step_fs * FS, len(data))
    return Interferogram(grid, values, kind, units)


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

def write_spectrum(spectrum: Spectrum1D, axis: str, path: str | os.PathLike) -> None:
    if axis not in KIND_FOR_AXIS:
        raise ValueError(f"axis must be one of {sorted(KIND_FOR_AXIS)}")
    start_thz = thz_from_angular(spectrum.grid.start)
    step_thz = thz_from_angular(spectrum.grid.step)
    center_thz = thz_from_angular(spectrum.center)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(
            f"# axis={axis} center_thz={_format(center_thz)} "
            f"start_thz={_format(start_thz)} step_thz={_format(step_thz)}\n"
        )
        fh.write("freq_thz,intensity\n")
        for n, value in enumerate(spectrum.values):
            fh.write(
                f"{_format(start_thz + n * step_thz)},{_format(value * PER_THZ)}\n"
            )


def read_spectrum(path: str | os.PathLike) -> tuple[Spectrum1D, str]:
    meta, data = _read_rows(path, "freq_thz,intensity")
    axis = meta.get("axis")
    if axis not in KIND_FOR_AXIS:
        raise CsvFormatError(f"missing or unknown axis {axis!r}")
    start_thz, step_thz = _grid_metadata(
        meta, data[:, 0], "start_thz", "step_thz", "frequency"
    )
    grid = FrequencyGrid(angular_from_thz(start_thz), angular_from_thz(step_thz), len(data))
    values = data[:, 1] / PER_THZ
    if values.min() < 0.0:
        raise CsvFormatError("intensity column has negative entries")
    if "center_thz" in meta:
        try:
            center = angular_from_thz(float(meta["center_thz"]))
        except ValueError as exc:
            raise CsvFormatError(f"bad center metadata: {exc}") from exc
    else:
        center = float(grid.points[int(np.argmax(values))])
    return Spectrum1D(grid, values, center), axis
