"""Analytic source models: one-photon spectra and two-photon joint amplitudes.

The workhorse is a collinear degenerate down-conversion model with a Gaussian
pump and a sinc phase-matching function linearized in the group delays of the
daughter photons.  With opposite group delays (the group-velocity-matched
cut) the joint amplitude is exchange symmetric and positively correlated:
the sum-frequency marginal follows the pump, the difference-frequency
marginal follows sinc^2 with a width set by the crystal length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    C_LIGHT,
    GAUSSIAN_TIME_BANDWIDTH,
    TWO_PI,
    FrequencyGrid,
    JointSpectralAmplitude,
    Spectrum1D,
    normalize_jsa,
    normalize_spectrum,
)
from .errors import GridTooNarrow, InvalidWavelength

# Relative intensity allowed at a window edge before the grid is rejected.
EDGE_DECAY_LIMIT = 1e-6

# ---------------------------------------------------------------------------
# calibrated defaults, version 1
#
# The group-delay mismatch D = gd_signal - gd_idler of the stock crystal is
# an effective number, fixed so that the difference-frequency marginal of
# the default model has a 0.22 THz intensity FWHM at 30 mm length:
#     D = 4 * x_half / (pi * 0.22e12 * 0.030)   with sinc^2(x_half) = 1/2.
# Changing any value here is a calibration change; bump the version.
# ---------------------------------------------------------------------------

DEFAULTS_VERSION = 1

DEFAULT_PUMP_WAVELENGTH = 792e-9          # m
DEFAULT_PUMP_DURATION = 120e-15           # s, intensity FWHM
DEFAULT_CRYSTAL_LENGTH = 30e-3            # m
DEFAULT_GROUP_DELAY_MISMATCH = 2.6845240647845605e-10  # s/m
DEFAULT_GROUP_DELAY_SIGNAL = 0.5 * DEFAULT_GROUP_DELAY_MISMATCH
DEFAULT_GROUP_DELAY_IDLER = -0.5 * DEFAULT_GROUP_DELAY_MISMATCH


@dataclass(frozen=True)
class PumpSpec:
    """Transform-limited Gaussian pump pulse.

    center_wavelength in meters, intensity_fwhm_duration in seconds.
    """

    center_wavelength: float = DEFAULT_PUMP_WAVELENGTH
    intensity_fwhm_duration: float = DEFAULT_PUMP_DURATION

    def __post_init__(self) -> None:
        if not self.center_wavelength > 0.0:
            raise InvalidWavelength("pump wavelength must be positive")
        if not self.intensity_fwhm_duration > 0.0:
            raise ValueError("pump duration must be positive")

    @property
    def carrier_frequency(self) -> float:
        """Pump angular frequency 2*pi*c/lambda, rad/s."""
        return TWO_PI * C_LIGHT / self.center_wavelength

    @property
    def degenerate_photon_frequency(self) -> float:
        """Angular frequency of each daughter photon at degeneracy, rad/s."""
        return 0.5 * self.carrier_frequency

    @property
    def spectral_intensity_fwhm(self) -> float:
        """Pump spectral intensity FWHM in ordinary Hz, 4ln2/(pi*dt)."""
        return GAUSSIAN_TIME_BANDWIDTH / self.intensity_fwhm_duration


@dataclass(frozen=True)
class PhaseMatchSpec:
    """Linearized phase matching: crystal length and group delays per unit length.

    group_delay_signal/idler are the signal and idler group delays relative
    to the pump, in s/m.  Opposite values give the exchange-symmetric
    group-velocity-matched configuration.
    """

    crystal_length: float = DEFAULT_CRYSTAL_LENGTH
    group_delay_signal: float = DEFAULT_GROUP_DELAY_SIGNAL
    group_delay_idler: float = DEFAULT_GROUP_DELAY_IDLER

    def __post_init__(self) -> None:
        if not self.crystal_length > 0.0:
            raise ValueError("crystal length must be positive")

    @property
    def is_gvm_symmetric(self) -> bool:
        return self.group_delay_signal == -self.group_delay_idler


def _edge_check(values: np.ndarray, what: str) -> None:
    peak = float(np.max(values))
    if peak <= 0.0:
        return
    edge = max(float(values[0]), float(values[-1]))
    if edge > EDGE_DECAY_LIMIT * peak:
        raise GridTooNarrow(
            f"{what}: window edge at {edge / peak:.2e} of peak, limit {EDGE_DECAY_LIMIT:.0e}"
        )


def gaussian_spectrum(center: float, intensity_fwhm: float, grid: FrequencyGrid) -> Spectrum1D:
    """Normalized Gaussian spectral intensity.

    center is angular (rad/s); intensity_fwhm is ordinary frequency (Hz).
    Raises GridTooNarrow when the window edges see more than 1e-6 of the
    peak.  In the opposite limit (FWHM far below the step) the mass lands in
    a single bin per the delta convention.
    """
    if not intensity_fwhm > 0.0:
        raise ValueError("intensity FWHM must be positive")
    fwhm_omega = TWO_PI * intensity_fwhm
    arg = (grid.points - center) / fwhm_omega
    values = np.exp(-4.0 * math.log(2.0) * arg**2)
    _edge_check(values, "gaussian_spectrum")
    return normalize_spectrum(Spectrum1D(grid, values, center))


def _pump_amplitude(omega_sum: np.ndarray, pump: PumpSpec) -> np.ndarray:
    # Amplitude is the square root of a Gaussian intensity spectrum whose
    # FWHM follows from the pulse duration.
    fwhm_omega = TWO_PI * pump.spectral_intensity_fwhm
    arg = (omega_sum - pump.carrier_frequency) / fwhm_omega
    return np.exp(-2.0 * math.log(2.0) * arg**2)


def build_jsa(pump: PumpSpec, pm: PhaseMatchSpec, grid: FrequencyGrid) -> JointSpectralAmplitude:
    """Joint spectral amplitude alpha(ws + wi) * sinc(dk L / 2) on grid x grid.

    dk = gd_s*(ws - w0) + gd_i*(wi - w0) with w0 the degenerate photon
    frequency.  The edge-decay check is applied to the pump envelope along
    the sum-frequency diagonal; the sinc tails along the difference axis
    fall off only polynomially and the window is simply where the model
    lives (everything downstream is normalized on the same window).
    """
    w0 = pump.degenerate_photon_frequency
    ws = grid.points[:, None]
    wi = grid.points[None, :]
    alpha = _pump_amplitude(ws + wi, pump)
    # np.sinc(x) is sin(pi x)/(pi x) with the limit handled, so divide by pi.
    dk_half_l = 0.5 * pm.crystal_length * (
        pm.group_delay_signal * (ws - w0) + pm.group_delay_idler * (wi - w0)
    )
    phi = np.sinc(dk_half_l / math.pi)
    # Pump decay at the extreme corners of the sum axis.
    corners = np.array(
        [2.0 * grid.start, grid.start + grid.stop, 2.0 * grid.stop]
    )
    _edge_check(_pump_amplitude(corners, pump) ** 2, "build_jsa pump envelope")
    return normalize_jsa(JointSpectralAmplitude(grid, grid, alpha * phi))


def double_gaussian_jsa(
    sigma_plus: float, sigma_minus: float, center_sum: float, grid: FrequencyGrid
) -> JointSpectralAmplitude:
    """Analytic test model, Gaussian in both rotated frequency coordinates.

    |f|^2 = exp(-(w+ - center_sum)^2 / (2 sigma_plus^2)) *
            exp(-(w-)^2 / (2 sigma_minus^2))
    with w+ = ws + wi and w- = ws - wi; sigma_plus, sigma_minus and
    center_sum are angular (rad/s).  Exchange symmetric by construction.
    """
    if not (sigma_plus > 0.0 and sigma_minus > 0.0):
        raise ValueError("sigmas must be positive")
    ws = grid.points[:, None]
    wi = grid.points[None, :]
    log_i = (
        -((ws + wi - center_sum) ** 2) / (2.0 * sigma_plus**2)
        - ((ws - wi) ** 2) / (2.0 * sigma_minus**2)
    )
    intensity = np.exp(log_i)
    peak = float(np.max(intensity))
    edge = max(
        float(np.max(intensity[0, :])),
        float(np.max(intensity[-1, :])),
        float(np.max(intensity[:, 0])),
        float(np.max(intensity[:, -1])),
    )
    if peak <= 0.0 or edge > EDGE_DECAY_LIMIT * peak:
        raise GridTooNarrow("double_gaussian_jsa: window edges see too much intensity")
    return normalize_jsa(JointSpectralAmplitude(grid, grid, np.sqrt(intensity)))


def default_photon_grid(
    pump: PumpSpec | None = None, half_span: float = TWO_PI * 15e12, count: int = 1201
) -> FrequencyGrid:
    """Per-photon grid centered on degeneracy, wide enough for the defaults."""
    pump = pump or PumpSpec()
    return FrequencyGrid.from_center_span(pump.degenerate_photon_frequency, half_span, count)
