"""Grids, spectra and joint spectral amplitudes.

Conventions used throughout the package:

  * frequency axes are angular frequency in rad/s (THz and nm appear only at
    file and CLI boundaries),
  * delay axes are seconds,
  * every integral is a trapezoidal sum on a uniform grid,
  * a grid is a finite window: spectra placed on it are expected to decay
    below 1e-6 of their peak at the window edges, and a spectrum whose mass
    sits in a single interior bin represents a delta line with density
    1/step in that bin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    GridMismatch,
    InvalidWavelength,
    ZeroSpectrum,
)

# Speed of light, m/s, exact by SI definition.
C_LIGHT = 299_792_458.0

TWO_PI = 2.0 * math.pi

# Gaussian intensity profiles: FWHM(time) * FWHM(ordinary frequency).
GAUSSIAN_TIME_BANDWIDTH = 4.0 * math.log(2.0) / math.pi

# First positive root of sinc^2(x) = 1/2, i.e. sin(x)/x = 1/sqrt(2).
SINC2_HALF_MAX_ARG = 1.3915573782515105

# Triangular envelope of FWHM T pairs with a sinc^2 spectrum:
# FWHM(time) * FWHM(ordinary frequency) = 2*x_half/pi.
TRIANGLE_SINC2_TIME_BANDWIDTH = 2.0 * SINC2_HALF_MAX_ARG / math.pi


def angular_from_thz(value_thz: float) -> float:
    """Ordinary frequency in THz to angular frequency in rad/s."""
    return TWO_PI * 1e12 * value_thz


def thz_from_angular(omega: float) -> float:
    """Angular frequency in rad/s to ordinary frequency in THz."""
    return omega / (TWO_PI * 1e12)


def trapezoid_weights(count: int, step: float) -> np.ndarray:
    """Quadrature weights of the composite trapezoidal rule on a uniform grid."""
    w = np.full(count, step, dtype=float)
    w[0] = 0.5 * step
    w[-1] = 0.5 * step
    return w


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform angular-frequency grid: points are start + k*step, k in [0, count)."""

    start: float
    step: float
    count: int

    def __post_init__(self) -> None:
        if not self.step > 0.0:
            raise ValueError("FrequencyGrid step must be positive")
        if self.count < 2:
            raise ValueError("FrequencyGrid needs at least 2 points")

    @classmethod
    def from_center_span(cls, center: float, half_span: float, count: int) -> "FrequencyGrid":
        step = 2.0 * half_span / (count - 1)
        return cls(center - half_span, step, count)

    @property
    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @property
    def stop(self) -> float:
        return self.start + self.step * (self.count - 1)

    @property
    def center(self) -> float:
        return self.start + 0.5 * self.step * (self.count - 1)

    def index_of(self, value: float) -> int:
        """Nearest-grid-point index (inverse of points[k])."""
        k = int(round((value - self.start) / self.step))
        if k < 0 or k >= self.count:
            raise IndexError(f"value {value!r} outside grid")
        return k

    def weights(self) -> np.ndarray:
        return trapezoid_weights(self.count, self.step)


@dataclass(frozen=True)
class DelayGrid:
    """Uniform delay grid in seconds."""

    start: float
    step: float
    count: int

    def __post_init__(self) -> None:
        if not self.step > 0.0:
            raise ValueError("DelayGrid step must be positive")
        if self.count < 2:
            raise ValueError("DelayGrid needs at least 2 points")

    @classmethod
    def symmetric(cls, step: float, count: int) -> "DelayGrid":
        """Grid symmetric about zero delay; odd count places a sample at 0."""
        return cls(-0.5 * step * (count - 1), step, count)

    @property
    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @property
    def stop(self) -> float:
        return self.start + self.step * (self.count - 1)

    @property
    def center(self) -> float:
        return self.start + 0.5 * self.step * (self.count - 1)


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Spectrum1D:
    """Nonnegative spectral density sampled on a FrequencyGrid.

    values[k] is a density per rad/s, so trapezoidal integration over the
    grid gives the spectral mass.  center records the nominal carrier
    frequency and is carried through transforms for reporting.
    """

    grid: FrequencyGrid
    values: np.ndarray
    center: float

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float).copy()
        if vals.shape != (self.grid.count,):
            raise ValueError("values shape does not match grid")
        if not np.all(np.isfinite(vals)):
            raise ValueError("spectrum values must be finite")
        if np.any(vals < 0.0):
            raise ZeroSpectrum("spectrum values must be nonnegative")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def integral(self) -> float:
        return float(self.grid.weights() @ self.values)

    @property
    def is_normalized(self) -> bool:
        return abs(self.integral() - 1.0) <= 1e-9


def normalize_spectrum(spectrum: Spectrum1D) -> Spectrum1D:
    """Rescale so the trapezoidal integral equals 1.

    A spectrum concentrated in one interior bin ends up at 1/step there
    (the single-bin delta convention).  Idempotent to rounding.
    """
    total = spectrum.integral()
    if total <= 0.0:
        raise ZeroSpectrum("spectrum has zero integral")
    return Spectrum1D(spectrum.grid, spectrum.values / total, spectrum.center)


# ---------------------------------------------------------------------------
# joint spectral amplitude
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class JointSpectralAmplitude:
    """Two-photon amplitude f(omega_s, omega_i) on a pair of frequency grids.

    amplitude[j, k] samples f at (grid_s.points[j], grid_i.points[k]).
    """

    grid_s: FrequencyGrid
    grid_i: FrequencyGrid
    amplitude: np.ndarray

    def __post_init__(self) -> None:
        amp = np.asarray(self.amplitude, dtype=complex).copy()
        if amp.shape != (self.grid_s.count, self.grid_i.count):
            raise ValueError("amplitude shape does not match grids")
        if not np.all(np.isfinite(amp)):
            raise ValueError("amplitude must be finite")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitude", amp)

    def intensity_integral(self) -> float:
        """2D trapezoidal integral of |f|^2."""
        ws = self.grid_s.weights()
        wi = self.grid_i.weights()
        return float(ws @ (np.abs(self.amplitude) ** 2) @ wi)

    @property
    def is_normalized(self) -> bool:
        return abs(self.intensity_integral() - 1.0) <= 1e-9

    def swapped(self) -> "JointSpectralAmplitude":
        """Amplitude with the two photons exchanged, f(omega_i, omega_s)."""
        return JointSpectralAmplitude(self.grid_i, self.grid_s, self.amplitude.T)


def normalize_jsa(jsa: JointSpectralAmplitude) -> JointSpectralAmplitude:
    """Rescale so the 2D trapezoidal integral of |f|^2 equals 1."""
    total = jsa.intensity_integral()
    if total <= 0.0:
        raise ZeroSpectrum("joint amplitude has zero intensity")
    return JointSpectralAmplitude(jsa.grid_s, jsa.grid_i, jsa.amplitude / math.sqrt(total))


def exchange_symmetry_residual(jsa: JointSpectralAmplitude) -> float:
    """Relative exchange asymmetry ||f - f^T||_2 / ||f||_2.

    Norms are 2D trapezoidal L2 norms, so a JSA supported on a single
    off-diagonal cell returns exactly sqrt(2).  Requires grid_s == grid_i.
    """
    if jsa.grid_s != jsa.grid_i:
        raise GridMismatch("signal and idler grids differ")
    w = jsa.grid_s.weights()
    w2 = np.outer(w, w)
    diff = jsa.amplitude - jsa.amplitude.T
    num = float(np.sum(w2 * np.abs(diff) ** 2))
    den = float(np.sum(w2 * np.abs(jsa.amplitude) ** 2))
    if den <= 0.0:
        raise ZeroSpectrum("joint amplitude has zero intensity")
    return math.sqrt(num / den)


# ---------------------------------------------------------------------------
# interferograms
# ---------------------------------------------------------------------------

_KINDS = ("mzi", "homi", "nooni")
_UNITS = ("probability", "counts")


@dataclass(frozen=True, eq=False)
class Interferogram:
    """Detection pattern versus pump-photon or pair delay.

    kind is 'mzi', 'homi' or 'nooni' (None when a file did not say).
    Probability values live in [0, 1]; excursions up to 1e-9 from rounding
    are clipped, larger ones are an error.  Count values are nonnegative
    integers stored as floats.
    """

    delays: DelayGrid
    values: np.ndarray
    kind: str | None
    units: str = "probability"

    def __post_init__(self) -> None:
        if self.kind is not None and self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS} or None")
        if self.units not in _UNITS:
            raise ValueError(f"units must be one of {_UNITS}")
        vals = np.asarray(self.values, dtype=float).copy()
        if vals.shape != (self.delays.count,):
            raise ValueError("values shape does not match delay grid")
        if not np.all(np.isfinite(vals)):
            raise ValueError("interferogram values must be finite")
        if self.units == "probability":
            if vals.min() < -1e-9 or vals.max() > 1.0 + 1e-9:
                raise ValueError("probability values leave [0, 1] by more than 1e-9")
            vals = np.clip(vals, 0.0, 1.0)
        else:
            if vals.min() < 0.0:
                raise ValueError("count values must be nonnegative")
            rounded = np.rint(vals)
            if np.max(np.abs(vals - rounded)) > 1e-9:
                raise ValueError("count values must be integers")
            vals = rounded
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


# ---------------------------------------------------------------------------
# unit conversion
# ---------------------------------------------------------------------------

def wavelength_bandwidth_to_frequency(delta_lambda: float, center_wavelength: float) -> float:
    """Convert a wavelength FWHM to an ordinary-frequency FWHM in Hz.

    First-order relation delta_nu = c * delta_lambda / lambda0**2, valid for
    bandwidths small against the center wavelength.
    """
    if not center_wavelength > 0.0:
        raise InvalidWavelength("center wavelength must be positive")
    if delta_lambda < 0.0:
        raise InvalidWavelength("bandwidth must be nonnegative")
    return C_LIGHT * delta_lambda / center_wavelength**2
