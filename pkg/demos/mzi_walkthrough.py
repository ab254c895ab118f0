#!/usr/bin/env python3
"""One-photon walkthrough: a Gaussian line, its fringes, and the way back.

The power spectrum and the interferogram are a Fourier pair, so a 2.18 THz
Gaussian line must produce a Gaussian fringe envelope of
4 ln2 / (pi * 2.18e12) ~ 405 fs, and the inverse transform of the fringes
must hand the line back.  This script walks that loop once and prints
every number it checks along the way.

Run:  python3 demos/mzi_walkthrough.py
"""

import math

import numpy as np

from biphoton_wkt import (
    GAUSSIAN_TIME_BANDWIDTH,
    extract_spectrum,
    fit_envelope,
    gaussian_spectrum,
    l2_shape_error,
    mzi_pattern,
    spectrum_fwhm_hz,
    thz_from_angular,
)
from biphoton_wkt.config import RunConfig

LINE_FWHM_HZ = 2.18e12


def main() -> None:
    cfg = RunConfig()
    grid = cfg.frequency_grid_for("mzi")
    delays = cfg.delay_grid_for("mzi")

    print("== forward: line -> fringes ==")
    spectrum = gaussian_spectrum(grid.center, LINE_FWHM_HZ, grid)
    print(f"line center        {thz_from_angular(spectrum.center):.3f} THz")
    print(f"line FWHM          {spectrum_fwhm_hz(spectrum) / 1e12:.4f} THz")
    print(f"normalization      {spectrum.integral():.9f}")

    ig = mzi_pattern(spectrum, delays)
    print(f"delay window       +/- {abs(delays.start) / 1e-15:.0f} fs, "
          f"{delays.count} samples")
    print(f"probability range  [{ig.values.min():.4f}, {ig.values.max():.4f}]")

    print()
    print("== envelope: the time-bandwidth product ==")
    report = fit_envelope(ig, "gaussian")
    dt = report.temporal_fwhm
    print(f"fitted envelope    {dt / 1e-15:.2f} fs FWHM")
    print(f"fit visibility     {report.visibility:.6f}")
    print(f"fit residual rms   {report.residual_rms:.2e}")
    product = dt * LINE_FWHM_HZ
    print(f"dt * dnu           {product:.6f}")
    print(f"4 ln2 / pi         {GAUSSIAN_TIME_BANDWIDTH:.6f} "
          f"(difference {abs(product - GAUSSIAN_TIME_BANDWIDTH):.1e})")

    print()
    print("== inverse: fringes -> line ==")
    recovered = extract_spectrum(ig)
    print(f"recovered center   {thz_from_angular(recovered.center):.3f} THz")
    print(f"recovered FWHM     {spectrum_fwhm_hz(recovered) / 1e12:.4f} THz")
    rel = abs(spectrum_fwhm_hz(recovered) - LINE_FWHM_HZ) / LINE_FWHM_HZ
    print(f"width error        {rel:.2e} relative")
    print(f"shape error        {l2_shape_error(recovered, spectrum):.2e} L2")

    # Optional picture; the numbers above are the point.
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.2), tight_layout=True)
        ax1.plot(delays.points / 1e-15, ig.values, lw=0.4)
        ax1.set_xlabel("delay (fs)")
        ax1.set_ylabel("P")
        ax1.set_title("fringes")
        nu = thz_from_angular(recovered.grid.points - recovered.center)
        ax2.plot(nu, recovered.values / recovered.values.max(), label="recovered")
        nu0 = thz_from_angular(spectrum.grid.points - spectrum.center)
        ax2.plot(nu0, spectrum.values / spectrum.values.max(), "--", label="input")
        ax2.set_xlim(-6, 6)
        ax2.set_xlabel("detuning (THz)")
        ax2.legend()
        ax2.set_title("line")
        fig.savefig("mzi_walkthrough.png", dpi=120)
        print()
        print("wrote mzi_walkthrough.png")
    except ImportError:
        pass


if __name__ == "__main__":
    main()
