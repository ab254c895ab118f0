"""Forward interferometry: correlation traces and fringe patterns.

One-photon side (classical Wiener-Khinchin):

    G1(tau) = int F1(w) exp(-i w tau) dw,      P_mzi = (1 + Re G1) / 2.

Two-photon side, exchange-symmetric fast path (extended Wiener-Khinchin):
the joint intensity |f|^2 is first collapsed onto the sum or difference
frequency axis (marginal_projection, Jacobian 1/2), then cosine transformed,

    P(tau) = (1 -/+ ... ) / 2 = (1 + s * Re G2_s(tau)) / 2,   s = +1 NOONI, -1 HOMI.

The general quadrature paths evaluate the full double integrals with no
symmetry assumption and serve as oracles for the fast path:

    HOMI:  P(tau) = 1/4 iint |f(w1,w2) - f(w2,w1) e^{-i(w1-w2) tau}|^2
    NOONI: P(tau) = 1/16 iint |f(w3,w4)(e^{-i w3 tau}+1)(e^{-i w4 tau}+1)
                              + f(w4,w3)(e^{-i w3 tau}-1)(e^{-i w4 tau}-1)|^2

All sums run in a fixed order so results are reproducible bit for bit; the
environment variable BIPHOTON_WKT_THREADS only distributes independent delay
points over a thread pool.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import (
    DelayGrid,
    FrequencyGrid,
    Interferogram,
    JointSpectralAmplitude,
    Spectrum1D,
    exchange_symmetry_residual,
)
from .errors import (
    AsymmetricJsa,
    ComplexJsa,
    ConfigError,
    GridMismatch,
    NotNormalized,
    NyquistViolation,
)

DEFAULT_SYMMETRY_TOL = 1e-6
DEFAULT_REALNESS_TOL = 1e-9

_PROB_SLACK = 1e-9

THREADS_ENV_VAR = "BIPHOTON_WKT_THREADS"


@dataclass(frozen=True, eq=False)
class CorrelationTrace:
    """Complex correlation versus delay; order is 'g1', 'g2plus' or 'g2minus'."""

    delays: DelayGrid
    values: np.ndarray
    order: str

    def __post_init__(self) -> None:
        if self.order not in ("g1", "g2plus", "g2minus"):
            raise ValueError("order must be g1, g2plus or g2minus")
        vals = np.asarray(self.values, dtype=complex).copy()
        if vals.shape != (self.delays.count,):
            raise ValueError("values shape does not match delay grid")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


def thread_count() -> int:
    """Parallelism cap from BIPHOTON_WKT_THREADS (default 1)."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from exc
    if n < 1:
        raise ConfigError(f"{THREADS_ENV_VAR} must be >= 1, got {n}")
    return n


def _check_spectrum_normalized(spectrum: Spectrum1D) -> None:
    total = spectrum.integral()
    if abs(total - 1.0) > 1e-6:
        raise NotNormalized(f"spectrum integral is {total!r}, expected 1")


def _check_jsa_normalized(jsa: JointSpectralAmplitude) -> None:
    total = jsa.intensity_integral()
    if abs(total - 1.0) > 1e-6:
        raise NotNormalized(f"joint intensity integral is {total!r}, expected 1")


def _check_nyquist(delays: DelayGrid, omega_max: float) -> None:
    # Half a fringe period per sample at the fastest frequency on the axis.
    if omega_max > 0.0 and delays.step > math.pi / omega_max:
        raise NyquistViolation(
            f"delay step {delays.step:.3e} s exceeds pi/omega_max = "
            f"{math.pi / omega_max:.3e} s"
        )


def _clip_probability(p: np.ndarray) -> np.ndarray:
    excess = max(float(-p.min(initial=0.0)), float(p.max(initial=0.0) - 1.0))
    if excess > _PROB_SLACK:
        raise FloatingPointError(
            f"probability leaves [0,1] by {excess:.2e}; inputs are inconsistent"
        )
    return np.clip(p, 0.0, 1.0)


# ---------------------------------------------------------------------------
# one-photon side
# ---------------------------------------------------------------------------

def g1(spectrum: Spectrum1D, delays: DelayGrid) -> CorrelationTrace:
    """First-order correlation, trapezoidal Fourier transform of the spectrum.

    Normalized input gives G1(0) = 1 exactly; a delta spectrum gives a pure
    phasor exp(-i w0 tau).
    """
    _check_spectrum_normalized(spectrum)
    omega = spectrum.grid.points
    _check_nyquist(delays, max(abs(spectrum.grid.start), abs(spectrum.grid.stop)))
    masses = spectrum.grid.weights() * spectrum.values
    vals = np.exp(-1j * np.outer(delays.points, omega)) @ masses
    return CorrelationTrace(delays, vals, "g1")


def mzi_pattern(spectrum: Spectrum1D, delays: DelayGrid) -> Interferogram:
    """Mach-Zehnder single-photon pattern P(tau) = (1 + Re G1(tau)) / 2."""
    trace = g1(spectrum, delays)
    p = _clip_probability(0.5 * (1.0 + trace.values.real))
    return Interferogram(delays, p, "mzi", "probability")


def with_visibility(ig: Interferogram, visibility: float) -> Interferogram:
    """Shrink fringe contrast about the incoherent level 1/2.

    Models reduced visibility as P -> 1/2 + V (P - 1/2); the ideal patterns
    all have unit contrast, so this is where experimental V < 1 enters a
    synthetic run.
    """
    if not 0.0 <= visibility <= 1.0:
        raise ValueError("visibility must lie in [0, 1]")
    if ig.units != "probability":
        raise ValueError("visibility scaling applies to probability data")
    values = 0.5 + visibility * (ig.values - 0.5)
    return Interferogram(ig.delays, values, ig.kind, ig.units)


# ---------------------------------------------------------------------------
# sum / difference marginals
# ---------------------------------------------------------------------------

def _require_square(jsa: JointSpectralAmplitude) -> None:
    if jsa.grid_s != jsa.grid_i:
        raise GridMismatch("signal and idler grids must be identical")


def _projected_masses(jsa: JointSpectralAmplitude, sign: str) -> tuple[FrequencyGrid, np.ndarray]:
    """Per-line masses of |f|^2 on the sum (+) or difference (-) axis.

    Cells are weighted with the 2D trapezoidal weights and accumulated by
    index sum (j+k) or index difference (j-k); on a shared uniform grid the
    lines are uniformly spaced by one grid step.  The continuum Jacobian 1/2
    and the 2*step line spacing cancel, so the masses of a normalized JSA
    sum to exactly its trapezoidal norm, 1.
    """
    _require_square(jsa)
    g = jsa.grid_s
    n = g.count
    w = g.weights()
    cellmass = (np.abs(jsa.amplitude) ** 2) * np.outer(w, w)
    j = np.arange(n)
    if sign == "plus":
        idx = j[:, None] + j[None, :]
        start = 2.0 * g.start
    elif sign == "minus":
        idx = (j[:, None] - j[None, :]) + (n - 1)
        start = -(n - 1) * g.step
    else:
        raise ValueError("sign must be 'plus' or 'minus'")
    masses = np.bincount(idx.ravel(), weights=cellmass.ravel(), minlength=2 * n - 1)
    return FrequencyGrid(start, g.step, 2 * n - 1), masses


def marginal_projection(jsa: JointSpectralAmplitude, sign: str) -> Spectrum1D:
    """Sum- or difference-frequency intensity marginal as a density spectrum.

    F(+/-)(w) = 1/2 int |f|^2 dw(-/+), binned at the native grid step.  The
    returned grid is padded with one empty bin on each side so that the
    trapezoidal integral equals the total projected mass: exactly 1 for a
    normalized input, which is what pins down the 1/2 Jacobian.
    """
    _check_jsa_normalized(jsa)
    axis, masses = _projected_masses(jsa, sign)
    grid = FrequencyGrid(axis.start - axis.step, axis.step, axis.count + 2)
    values = np.concatenate(([0.0], masses / axis.step, [0.0]))
    if sign == "plus":
        center = jsa.grid_s.center + jsa.grid_i.center
    else:
        center = jsa.grid_s.center - jsa.grid_i.center
    return Spectrum1D(grid, values, center)


# ---------------------------------------------------------------------------
# two-photon patterns, symmetric fast path
# ---------------------------------------------------------------------------

def _check_symmetric_real(
    jsa: JointSpectralAmplitude, symmetry_tol: float, realness_tol: float
) -> None:
    residual = exchange_symmetry_residual(jsa)
    if residual > symmetry_tol:
        raise AsymmetricJsa(
            f"exchange asymmetry {residual:.3e} exceeds tolerance {symmetry_tol:.1e}"
        )
    peak = float(np.max(np.abs(jsa.amplitude)))
    if peak > 0.0 and float(np.max(np.abs(jsa.amplitude.imag))) > realness_tol * peak:
        raise ComplexJsa("joint amplitude has a non-negligible imaginary part")


def biphoton_pattern_symmetric(
    jsa: JointSpectralAmplitude,
    sign: str,
    delays: DelayGrid,
    symmetry_tol: float = DEFAULT_SYMMETRY_TOL,
    realness_tol: float = DEFAULT_REALNESS_TOL,
) -> Interferogram:
    """Two-photon pattern for a real exchange-symmetric JSA via 1D reduction.

    P(tau) = (1 + s * sum_b M_b cos(w_b tau)) / 2 with s = +1 on the sum axis
    (NOONI) and s = -1 on the difference axis (HOMI), M_b the projected
    masses.  Identical summands to the general quadratures, so agreement is
    at rounding level.
    """
    _check_jsa_normalized(jsa)
    _check_symmetric_real(jsa, symmetry_tol, realness_tol)
    axis, masses = _projected_masses(jsa, sign)
    _check_nyquist(delays, max(abs(axis.start), abs(axis.stop)))
    s = 1.0 if sign == "plus" else -1.0
    fringe = np.cos(np.outer(delays.points, axis.points)) @ masses
    p = _clip_probability(0.5 * (1.0 + s * fringe))
    kind = "nooni" if sign == "plus" else "homi"
    return Interferogram(delays, p, kind, "probability")


def g2(
    jsa: JointSpectralAmplitude,
    sign: str,
    delays: DelayGrid,
    symmetry_tol: float = DEFAULT_SYMMETRY_TOL,
    realness_tol: float = DEFAULT_REALNESS_TOL,
) -> CorrelationTrace:
    """Complex sum/difference-frequency correlation G2(tau) of a symmetric JSA.

    G2(tau) = int F(w) exp(-i w tau) dw over the projected marginal; the
    pattern relation P = (1 +/- Re G2)/2 holds against the fast path at
    rounding level.
    """
    _check_jsa_normalized(jsa)
    _check_symmetric_real(jsa, symmetry_tol, realness_tol)
    axis, masses = _projected_masses(jsa, sign)
    _check_nyquist(delays, max(abs(axis.start), abs(axis.stop)))
    vals = np.exp(-1j * np.outer(delays.points, axis.points)) @ masses
    return CorrelationTrace(delays, vals, "g2plus" if sign == "plus" else "g2minus")


# ---------------------------------------------------------------------------
# general quadrature paths (oracles, no symmetry assumed)
# ---------------------------------------------------------------------------

def _delay_loop(compute_one, count: int) -> np.ndarray:
    out = np.empty(count)
    threads = thread_count()
    if threads == 1:
        for i in range(count):
            out[i] = compute_one(i)
    else:
        def run(i: int) -> None:
            out[i] = compute_one(i)

        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, range(count)))
    return out


def homi_pattern_general(jsa: JointSpectralAmplitude, delays: DelayGrid) -> Interferogram:
    """Hong-Ou-Mandel coincidence probability by direct 2D quadrature."""
    _require_square(jsa)
    _check_jsa_normalized(jsa)
    g = jsa.grid_s
    _check_nyquist(delays, (g.count - 1) * g.step)
    w = g.weights()
    w2 = 0.25 * np.outer(w, w)
    diff = g.points[:, None] - g.points[None, :]
    f = jsa.amplitude
    ft = f.T.copy()
    taus = delays.points

    def one(i: int) -> float:
        z = f - ft * np.exp(-1j * diff * taus[i])
        return float(np.sum(w2 * (z.real**2 + z.imag**2)))

    p = _clip_probability(_delay_loop(one, delays.count))
    return Interferogram(delays, p, "homi", "probability")


def nooni_pattern_general(jsa: JointSpectralAmplitude, delays: DelayGrid) -> Interferogram:
    """NOON-state coincidence probability by direct 2D quadrature."""
    _require_square(jsa)
    _check_jsa_normalized(jsa)
    g = jsa.grid_s
    _check_nyquist(delays, max(abs(2.0 * g.start), abs(2.0 * g.stop)))
    w = g.weights()
    w2 = np.outer(w, w) / 16.0
    omega = g.points
    f = jsa.amplitude
    ft = f.T.copy()
    taus = delays.points

    def one(i: int) -> float:
        a = np.exp(-1j * omega * taus[i])
        z = f * np.outer(a + 1.0, a + 1.0) + ft * np.outer(a - 1.0, a - 1.0)
        return float(np.sum(w2 * (z.real**2 + z.imag**2)))

    p = _clip_probability(_delay_loop(one, delays.count))
    return Interferogram(delays, p, "nooni", "probability")
