"""Inverse side of the pipeline: interferogram -> spectrum and envelope fits.

The detrended fringe signal of every interferometer kind is a cosine
transform of a nonnegative spectral density, so the density comes back from
a discrete Fourier transform of the signal over the delay window:

    F(w) = (1/2pi) int s(tau) exp(i w tau) dtau.

The transform window is treated as exact support, which is why extraction
insists that the signal has decayed at the window edges.  Zero padding is
plain trigonometric interpolation of the same transform onto a finer
frequency comb, not new information; apodization is off by default.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares
from scipy.signal import hilbert

from .core import (
    TWO_PI,
    DelayGrid,
    FrequencyGrid,
    Interferogram,
    Spectrum1D,
)
from .errors import (
    FitDiverged,
    NoCrossing,
    NonUniformGrid,
    NyquistViolation,
    TooFewSamples,
    UnknownKind,
    WindowTooShort,
)

# Signal must be below this fraction of its peak at the window edges.
EDGE_DECAY_LIMIT = 1e-3

# Negative spectral values beyond this fraction of the peak trigger a warning.
NEGATIVE_CLIP_LIMIT = 0.01

DEFAULT_PAD_FACTOR = 8


@dataclass(frozen=True, eq=False)
class FringeSignal:
    """Detrended, baseline-free fringe signal on a delay grid."""

    delays: DelayGrid
    values: np.ndarray
    kind: str

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float).copy()
        if vals.shape != (self.delays.count,):
            raise ValueError("values shape does not match delay grid")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class FitReport:
    """Result of an envelope fit."""

    model: str
    temporal_fwhm: float
    visibility: float
    visibility_uncertainty: float
    residual_rms: float

    def __post_init__(self) -> None:
        if not self.temporal_fwhm > 0.0:
            raise ValueError("fitted FWHM must be positive")
        if self.visibility_uncertainty < 0.0:
            raise ValueError("uncertainty must be nonnegative")
        if self.visibility > 1.0 + self.visibility_uncertainty + 1e-9:
            raise ValueError("visibility exceeds 1 beyond its uncertainty")


# ---------------------------------------------------------------------------
# detrending
# ---------------------------------------------------------------------------

def _counts_scale(ig: Interferogram) -> float:
    """Counts-per-unit-probability factor 2*B, from the fringe baseline.

    MZI and NOONI fringes oscillate about half the single-arm level, so the
    window mean estimates B.  The HOMI dip sits below an asymptotic level
    reached away from zero delay, so B comes from the outer quarter of the
    window.
    """
    c = ig.values
    if ig.kind == "homi":
        k = max(1, len(c) // 8)
        baseline = 0.5 * (float(np.mean(c[:k])) + float(np.mean(c[-k:])))
    else:
        baseline = float(np.mean(c))
    if baseline <= 0.0:
        raise ValueError("cannot normalize counts with zero baseline")
    return 2.0 * baseline


def _probability_values(ig: Interferogram) -> np.ndarray:
    if ig.units == "counts":
        return ig.values / _counts_scale(ig)
    return ig.values


def detrend(ig: Interferogram) -> FringeSignal:
    """Remove the incoherent baseline: s = 2P - 1 (MZI, NOONI) or 1 - 2P (HOMI).

    Count data is first converted to probability using the fitted baseline.
    """
    if ig.kind is None:
        raise UnknownKind("interferogram kind is unset")
    p = _probability_values(ig)
    if ig.kind == "homi":
        s = 1.0 - 2.0 * p
    else:
        s = 2.0 * p - 1.0
    return FringeSignal(ig.delays, s, ig.kind)


# ---------------------------------------------------------------------------
# envelope and width estimation
# ---------------------------------------------------------------------------

def _dominant_frequency(values: np.ndarray, step: float) -> float:
    """Frequency (rad/s) of the strongest rFFT bin, DC included."""
    spec = np.abs(np.fft.rfft(values))
    k = int(np.argmax(spec))
    return TWO_PI * k / (len(values) * step)


def envelope(signal: FringeSignal) -> np.ndarray:
    """Magnitude of the analytic signal (one-sided spectrum method).

    For carrier-free signals this is |s| with the kinks rounded by the same
    transform.  Accurate away from the window edges once the carrier has at
    least 4 samples per period.
    """
    n = signal.delays.count
    if n < 8:
        raise TooFewSamples("envelope needs at least 8 samples")
    w_dom = _dominant_frequency(signal.values, signal.delays.step)
    # 4 samples per period puts the carrier at half the Nyquist frequency.
    if w_dom > 0.5 * math.pi / signal.delays.step:
        raise TooFewSamples("carrier has fewer than 4 samples per period")
    return np.abs(hilbert(signal.values))


def fwhm(x: np.ndarray, y: np.ndarray) -> float:
    """Full width at half maximum by linear interpolation about the peak.

    Walks outward from the global maximum to the nearest half-maximum
    crossing on each side.  Raises NoCrossing when a side never drops below
    half maximum inside the window.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1D arrays of equal length")
    if len(y) < 2:
        raise NoCrossing("need at least 2 samples for a width")
    i_peak = int(np.argmax(y))
    half = 0.5 * y[i_peak]

    def crossing(side: int) -> float:
        # side -1 walks left of the peak, +1 walks right.
        i = i_peak
        while 0 <= i + side < len(y):
            j = i + side
            if y[j] < half:
                # Interpolate between samples j and i.
                return float(x[j] + (x[i] - x[j]) * (half - y[j]) / (y[i] - y[j]))
            i = j
        raise NoCrossing("signal does not reach half maximum inside the window")

    return crossing(+1) - crossing(-1)


def spectrum_fwhm_hz(spectrum: Spectrum1D) -> float:
    """FWHM of a spectral density in ordinary Hz."""
    return fwhm(spectrum.grid.points, spectrum.values) / TWO_PI


# ---------------------------------------------------------------------------
# spectral extraction
# ---------------------------------------------------------------------------

def _check_window(delays: DelayGrid, s: np.ndarray) -> None:
    mid = delays.center
    if abs(mid) > 1e-6 * max(abs(delays.start), abs(delays.stop)):
        raise NonUniformGrid("delay window must be symmetric about zero")
    peak = float(np.max(np.abs(s)))
    if peak == 0.0:
        return
    k = max(2, len(s) // 50)
    edge = max(float(np.max(np.abs(s[:k]))), float(np.max(np.abs(s[-k:]))))
    if edge > EDGE_DECAY_LIMIT * peak:
        raise WindowTooShort(
            f"signal at window edge is {edge / peak:.2e} of peak, "
            f"limit {EDGE_DECAY_LIMIT:.0e}"
        )


def extract_spectrum(
    ig: Interferogram,
    pad_factor: int = DEFAULT_PAD_FACTOR,
    apodize: bool = False,
) -> Spectrum1D:
    """Recover the spectral density behind an interferogram.

    The detrended signal is Fourier transformed over the delay window.  MZI
    and NOONI spectra live on a positive carrier, so the positive-frequency
    half is returned with twice the raw density (the transform of a real
    signal splits the mass between +w and -w); the HOMI difference-frequency
    spectrum is two sided and returned as is.  Negative values from noise
    are clipped at zero; if any undershoot exceeds 1% of the peak a
    RuntimeWarning is emitted as well.
    """
    if ig.kind is None:
        raise UnknownKind("interferogram kind is unset")
    if pad_factor < 1:
        raise ValueError("pad_factor must be >= 1")
    sig = detrend(ig)
    s = sig.values
    delays = ig.delays
    _check_window(delays, s)
    if apodize:
        s = s * np.hanning(len(s))

    n_pad = delays.count * pad_factor
    dt = delays.step
    # F(w_k) = (dt/2pi) sum_n s_n exp(i w_k tau_n), tau_n = start + n*dt.
    raw = np.fft.ifft(s, n_pad) * n_pad
    omega = TWO_PI * np.fft.fftfreq(n_pad, dt)
    density = (dt / TWO_PI) * (np.exp(1j * omega * delays.start) * raw).real

    omega = np.fft.fftshift(omega)
    density = np.fft.fftshift(density)
    step = TWO_PI / (n_pad * dt)

    if ig.kind == "homi":
        grid = FrequencyGrid(omega[0], step, n_pad)
        values = density
    else:
        # Strictly positive frequencies, doubled density.
        pos = omega > 0.0
        first = int(np.argmax(pos))
        grid = FrequencyGrid(omega[first], step, int(np.sum(pos)))
        values = 2.0 * density[pos]
        w_dom = grid.points[int(np.argmax(values))]
        # Aliased carriers land implausibly close to the Nyquist edge.
        if w_dom > 0.5 * (math.pi / dt):
            raise NyquistViolation(
                "dominant frequency above half Nyquist; carrier undersampled"
            )

    peak = float(np.max(values))
    if peak > 0.0 and float(np.min(values)) < -NEGATIVE_CLIP_LIMIT * peak:
        warnings.warn(
            "spectrum has negative values beyond 1% of peak; clipping to zero",
            RuntimeWarning,
            stacklevel=2,
        )
    values = np.maximum(values, 0.0)
    center = float(grid.points[int(np.argmax(values))])
    return Spectrum1D(grid, values, center)


def l2_shape_error(candidate: Spectrum1D, reference: Spectrum1D) -> float:
    """Scale-free L2 distance between two spectra after centroid alignment.

    Both spectra are shifted to their intensity centroids (computed over
    bins above 5% of peak), the candidate is linearly resampled onto the
    reference axis, both are L2 normalized, and ||a - b||_2 / ||b||_2 is
    returned.
    """

    def centered(s: Spectrum1D) -> tuple[np.ndarray, np.ndarray]:
        x = s.grid.points
        v = s.values
        mask = v >= 0.05 * np.max(v)
        centroid = float(np.sum(x[mask] * v[mask]) / np.sum(v[mask]))
        return x - centroid, v

    xa, va = centered(candidate)
    xb, vb = centered(reference)
    va_on_b = np.interp(xb, xa, va, left=0.0, right=0.0)
    na = math.sqrt(float(np.sum(va_on_b**2)))
    nb = math.sqrt(float(np.sum(vb**2)))
    if na == 0.0 or nb == 0.0:
        raise ValueError("cannot compare empty spectra")
    return float(np.sqrt(np.sum((va_on_b / na - vb / nb) ** 2)))


# ---------------------------------------------------------------------------
# envelope fits
# ---------------------------------------------------------------------------

def _gaussian_envelope(tau: np.ndarray, center: float, width: float) -> np.ndarray:
    return np.exp(-4.0 * math.log(2.0) * ((tau - center) / width) ** 2)


def _triangle_envelope(tau: np.ndarray, center: float, width: float) -> np.ndarray:
    # width is the FWHM; the envelope reaches zero at +/- width.
    return np.clip(1.0 - np.abs(tau - center) / width, 0.0, None)


_ENVELOPES = {"gaussian": _gaussian_envelope, "triangle": _triangle_envelope}


def fit_envelope(ig: Interferogram, model: str) -> FitReport:
    """Least-squares fit of P(tau) = (1 +/- V * E(tau) * carrier) / 2.

    model is 'gaussian' or 'triangle' for the envelope E; MZI and NOONI
    include a cosine carrier, HOMI does not.  Count data is fitted with
    Poisson weights and the visibility uncertainty comes from the weighted
    covariance; probability data uses the residual variance.
    """
    if ig.kind is None:
        raise UnknownKind("interferogram kind is unset")
    if model not in _ENVELOPES:
        raise ValueError(f"model must be one of {sorted(_ENVELOPES)}")
    env = _ENVELOPES[model]
    tau = ig.delays.points
    n = len(tau)
    if n < 16:
        raise TooFewSamples("envelope fit needs at least 16 samples")

    p_data = _probability_values(ig)
    if ig.units == "counts":
        sigma = np.sqrt(np.maximum(ig.values, 1.0)) / _counts_scale(ig)
        absolute_sigma = True
    else:
        sigma = np.ones(n)
        absolute_sigma = False

    sig = detrend(ig)
    s = sig.values
    has_carrier = ig.kind in ("mzi", "nooni")
    dip_sign = -1.0 if ig.kind == "homi" else 1.0

    # Initial values from the signal itself.
    peak_env = np.abs(hilbert(s)) if has_carrier else np.abs(s)
    i0 = int(np.argmax(peak_env))
    center0 = float(tau[i0])
    v0 = min(1.0, max(0.1, float(peak_env[i0])))
    try:
        width0 = fwhm(tau, peak_env)
    except NoCrossing:
        width0 = 0.25 * (tau[-1] - tau[0])
    span = float(tau[-1] - tau[0])

    # Optimize in units of the initial width.  Femtosecond-scale parameters
    # sit so far below 1.0 that the default finite-difference steps of the
    # optimizer would dwarf them; both envelope shapes depend only on
    # (tau - center) / width, so rescaling leaves the model unchanged.
    t_ref = float(width0)
    u = tau / t_ref

    if has_carrier:
        w_carrier0 = _dominant_frequency(s, ig.delays.step)
        if w_carrier0 <= 0.0:
            w_carrier0 = math.pi / (4.0 * ig.delays.step)
        phase0 = float(np.angle(np.sum(s * np.exp(-1j * w_carrier0 * tau))))

        def model_p(theta: np.ndarray) -> np.ndarray:
            v, center, width, w_c, phi = theta
            carrier = np.cos(w_c * (u - center) + phi)
            return 0.5 * (1.0 + dip_sign * v * env(u, center, width) * carrier)

        theta0 = np.array(
            [v0, center0 / t_ref, 1.0, w_carrier0 * t_ref, phase0]
        )
        lower = [
            0.0,
            tau[0] / t_ref,
            ig.delays.step / t_ref,
            0.5 * w_carrier0 * t_ref,
            -2.0 * math.pi,
        ]
        upper = [
            1.0,
            tau[-1] / t_ref,
            4.0 * span / t_ref,
            1.5 * w_carrier0 * t_ref,
            2.0 * math.pi,
        ]
    else:

        def model_p(theta: np.ndarray) -> np.ndarray:
            v, center, width = theta
            return 0.5 * (1.0 + dip_sign * v * env(u, center, width))

        theta0 = np.array([v0, center0 / t_ref, 1.0])
        lower = [0.0, tau[0] / t_ref, ig.delays.step / t_ref]
        upper = [1.0, tau[-1] / t_ref, 4.0 * span / t_ref]

    def residuals(theta: np.ndarray) -> np.ndarray:
        return (model_p(theta) - p_data) / sigma

    result = least_squares(
        residuals,
        theta0,
        bounds=(lower, upper),
        method="trf",
        ftol=1e-12,
        xtol=1e-12,
        gtol=1e-12,
        max_nfev=400,
    )

    res_p = model_p(result.x) - p_data
    residual_rms = float(np.sqrt(np.mean(res_p**2)))
    signal_rms = float(np.sqrt(np.mean(s**2)))
    # Residuals and signal compared in the same detrended units (factor 2).
    if signal_rms > 0.0 and 2.0 * residual_rms > 0.2 * signal_rms:
        raise FitDiverged(
            f"fit residual rms {2.0 * residual_rms:.3e} exceeds 20% of "
            f"signal rms {signal_rms:.3e}"
        )

    # Covariance from the Gauss-Newton approximation at the solution.
    jac = result.jac
    try:
        cov = np.linalg.inv(jac.T @ jac)
    except np.linalg.LinAlgError:
        cov = np.full((len(result.x), len(result.x)), np.nan)
    if not absolute_sigma:
        dof = max(1, n - len(result.x))
        cov = cov * 2.0 * result.cost / dof
    v_sigma = float(np.sqrt(abs(cov[0, 0])))

    return FitReport(
        model=model,
        temporal_fwhm=float(result.x[2]) * t_ref,
        visibility=float(result.x[0]),
        visibility_uncertainty=v_sigma,
        residual_rms=residual_rms,
    )
