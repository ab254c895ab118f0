"""Run configuration: flat key=value files with validated, typed keys.

Every key has a default, so an empty or absent config is a complete run
description; unknown keys are errors rather than silent typos.  Frequency
and delay grids default per interferometer kind and can be overridden with
the freq_* / delay_* keys.  File values use nm / fs / mm / THz; conversion
to SI happens in the accessors.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, fields, replace

from .core import C_LIGHT, DelayGrid, FrequencyGrid, angular_from_thz
from .errors import ConfigError
from .models import (
    DEFAULT_CRYSTAL_LENGTH,
    DEFAULT_GROUP_DELAY_MISMATCH,
    DEFAULT_PUMP_DURATION,
    DEFAULT_PUMP_WAVELENGTH,
    PhaseMatchSpec,
    PumpSpec,
)

KINDS = ("mzi", "homi", "nooni")
MODELS = ("gaussian", "phasematched", "double_gaussian")
UNITS = ("probability", "counts")
NOISE = ("none", "poisson")

# Delay window half span (fs) and point count per kind, sized so the
# default envelopes decay below the extraction edge limit.
KIND_DELAY_DEFAULTS = {
    "mzi": (1200.0, 2401),
    "homi": (8000.0, 1601),
    "nooni": (400.0, 1601),
}

# Frequency half span (THz) and point count per kind (per photon for the
# two-photon kinds).
KIND_FREQ_DEFAULTS = {
    "mzi": (8.0, 801),
    "homi": (15.0, 1201),
    "nooni": (15.0, 1201),
}


@dataclass(frozen=True)
class RunConfig:
    """All run parameters; None means 'use the per-kind default'."""

    kind: str | None = None
    model: str | None = None
    # gaussian one-photon model
    spectrum_center_nm: float = 1584.0
    spectrum_fwhm_thz: float = 2.18
    # phasematched two-photon model
    pump_wavelength_nm: float = DEFAULT_PUMP_WAVELENGTH / 1e-9
    pump_duration_fs: float = DEFAULT_PUMP_DURATION / 1e-15
    crystal_length_mm: float = DEFAULT_CRYSTAL_LENGTH / 1e-3
    group_delay_mismatch_fs_per_mm: float = DEFAULT_GROUP_DELAY_MISMATCH * 1e12
    # per-leg overrides; unset means the symmetric +/- mismatch/2 split
    group_delay_signal_fs_per_mm: float | None = None
    group_delay_idler_fs_per_mm: float | None = None
    # double_gaussian two-photon model (std devs of |f|^2, ordinary THz)
    sigma_plus_thz: float = 2.0
    sigma_minus_thz: float = 0.2
    # grids
    freq_half_span_thz: float | None = None
    freq_count: int | None = None
    delay_half_span_fs: float | None = None
    delay_count: int | None = None
    # output
    units: str = "probability"
    peak_counts: float = 10000.0
    noise: str = "none"
    seed: int = 0
    visibility: float = 1.0
    # extraction and verification
    pad_factor: int = 8
    apodize: bool = False
    background: bool = False
    tolerance: float = 0.02
    out: str | None = None

    def __post_init__(self) -> None:
        if self.kind is not None and self.kind not in KINDS:
            raise ConfigError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.model is not None and self.model not in MODELS:
            raise ConfigError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.units not in UNITS:
            raise ConfigError(f"units must be one of {UNITS}, got {self.units!r}")
        if self.noise not in NOISE:
            raise ConfigError(f"noise must be one of {NOISE}, got {self.noise!r}")
        for key in (
            "spectrum_center_nm",
            "spectrum_fwhm_thz",
            "pump_wavelength_nm",
            "pump_duration_fs",
            "crystal_length_mm",
            "group_delay_mismatch_fs_per_mm",
            "sigma_plus_thz",
            "sigma_minus_thz",
            "peak_counts",
            "tolerance",
        ):
            if not getattr(self, key) > 0.0:
                raise ConfigError(f"{key} must be positive")
        for key in ("freq_half_span_thz", "delay_half_span_fs"):
            value = getattr(self, key)
            if value is not None and not value > 0.0:
                raise ConfigError(f"{key} must be positive")
        for key in ("freq_count", "delay_count"):
            value = getattr(self, key)
            if value is not None and value < 9:
                raise ConfigError(f"{key} must be at least 9")
        if self.seed < 0:
            raise ConfigError("seed must be nonnegative")
        if not 0.0 <= self.visibility <= 1.0:
            raise ConfigError("visibility must lie in [0, 1]")
        if self.pad_factor < 1:
            raise ConfigError("pad_factor must be at least 1")

    # -- resolved pieces ---------------------------------------------------

    def model_for(self, kind: str) -> str:
        if self.model is not None:
            return self.model
        return "gaussian" if kind == "mzi" else "phasematched"

    def pump(self) -> PumpSpec:
        return PumpSpec(
            center_wavelength=self.pump_wavelength_nm * 1e-9,
            intensity_fwhm_duration=self.pump_duration_fs * 1e-15,
        )

    def phase_match(self) -> PhaseMatchSpec:
        d = self.group_delay_mismatch_fs_per_mm * 1e-12
        signal = 0.5 * d
        idler = -0.5 * d
        if self.group_delay_signal_fs_per_mm is not None:
            signal = self.group_delay_signal_fs_per_mm * 1e-12
        if self.group_delay_idler_fs_per_mm is not None:
            idler = self.group_delay_idler_fs_per_mm * 1e-12
        return PhaseMatchSpec(
            crystal_length=self.crystal_length_mm * 1e-3,
            group_delay_signal=signal,
            group_delay_idler=idler,
        )

    def frequency_grid_for(self, kind: str) -> FrequencyGrid:
        half_default, count_default = KIND_FREQ_DEFAULTS[kind]
        half = angular_from_thz(
            half_default if self.freq_half_span_thz is None else self.freq_half_span_thz
        )
        count = count_default if self.freq_count is None else self.freq_count
        if kind == "mzi":
            center = 2.0 * math.pi * C_LIGHT / (self.spectrum_center_nm * 1e-9)
        else:
            center = self.pump().degenerate_photon_frequency
        return FrequencyGrid.from_center_span(center, half, count)

    def delay_grid_for(self, kind: str) -> DelayGrid:
        half_default, count_default = KIND_DELAY_DEFAULTS[kind]
        half = (
            half_default if self.delay_half_span_fs is None else self.delay_half_span_fs
        )
        count = count_default if self.delay_count is None else self.delay_count
        step = 2.0 * half * 1e-15 / (count - 1)
        return DelayGrid.symmetric(step, count)


# Key table: name -> parser.  Booleans accept true/false only.
def _parse_bool(text: str) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise ValueError(f"expected true or false, got {text!r}")


_PARSERS = {}
for _field in fields(RunConfig):
    if _field.name in ("kind", "model", "units", "noise", "out"):
        _PARSERS[_field.name] = str
    elif _field.name in ("freq_count", "delay_count", "seed", "pad_factor"):
        _PARSERS[_field.name] = int
    elif _field.name in ("apodize", "background"):
        _PARSERS[_field.name] = _parse_bool
    else:
        _PARSERS[_field.name] = float


def parse_config(lines: list[str]) -> RunConfig:
    """Parse key=value lines; '#' starts a comment, blank lines are skipped."""
    values: dict[str, object] = {}
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, _, raw = text.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in _PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = _PARSERS[key](raw)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from exc
    return RunConfig(**values)


def load_config(path: str | os.PathLike | None) -> RunConfig:
    """Load a config file, or return pure defaults when path is None."""
    if path is None:
        return RunConfig()
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    with open(path, encoding="utf-8") as fh:
        return parse_config(list(fh))


def with_overrides(cfg: RunConfig, **overrides: object) -> RunConfig:
    """Apply non-None CLI overrides on top of a loaded config."""
    actual = {k: v for k, v in overrides.items() if v is not None}
    return replace(cfg, **actual) if actual else cfg
