#!/usr/bin/env python3
"""Two-photon walkthrough: one JSA, two interferometers, two marginals.

A single phase-matched two-photon state drives both experiments.  The
coincidence dip of the beamsplitter interferometer depends only on the
difference-frequency marginal F-(w-), and the phase-super-resolving
fringes depend only on the sum-frequency marginal F+(w+); transforming
either pattern back must reproduce the corresponding projection of |f|^2.
The reduced 1D route is also cross-checked against the full 2D quadrature
on a thinned grid, where the two must agree to rounding.

Run:  python3 demos/two_photon_marginals.py
"""

import numpy as np

from biphoton_wkt import (
    DelayGrid,
    FrequencyGrid,
    JointSpectralAmplitude,
    TRIANGLE_SINC2_TIME_BANDWIDTH,
    biphoton_pattern_symmetric,
    build_jsa,
    exchange_symmetry_residual,
    extract_spectrum,
    fit_envelope,
    homi_pattern_general,
    l2_shape_error,
    marginal_projection,
    nooni_pattern_general,
    normalize_jsa,
    spectrum_fwhm_hz,
    thz_from_angular,
)
from biphoton_wkt.config import RunConfig


def thin(jsa: JointSpectralAmplitude, every: int) -> JointSpectralAmplitude:
    """Subsample a JSA so the O(n^2) quadrature stays cheap."""
    g = jsa.grid_s
    count = (g.count - 1) // every + 1
    grid = FrequencyGrid(g.start, g.step * every, count)
    return normalize_jsa(
        JointSpectralAmplitude(grid, grid, jsa.amplitude[::every, ::every])
    )


def main() -> None:
    cfg = RunConfig()
    jsa = build_jsa(cfg.pump(), cfg.phase_match(), cfg.frequency_grid_for("homi"))
    print("== the state ==")
    print(f"pump               {cfg.pump_wavelength_nm:.0f} nm, "
          f"{cfg.pump_duration_fs:.0f} fs")
    print(f"crystal            {cfg.crystal_length_mm:.0f} mm, group delay "
          f"mismatch {cfg.group_delay_mismatch_fs_per_mm:.2f} fs/mm")
    print(f"exchange residual  {exchange_symmetry_residual(jsa):.2e}")
    print(f"intensity integral {jsa.intensity_integral():.9f}")

    for sign, kind, label in (("minus", "homi", "difference"),
                              ("plus", "nooni", "sum")):
        print()
        print(f"== {kind}: the {label}-frequency marginal ==")
        reference = marginal_projection(jsa, sign)
        ref_width = spectrum_fwhm_hz(reference)
        print(f"projected F{'-' if sign == 'minus' else '+'} FWHM  "
              f"{ref_width / 1e12:.4f} THz")

        ig = biphoton_pattern_symmetric(jsa, sign, cfg.delay_grid_for(kind))
        print(f"pattern range      [{ig.values.min():.2e}, {ig.values.max():.6f}]")

        model = "triangle" if kind == "homi" else "gaussian"
        report = fit_envelope(ig, model)
        print(f"envelope ({model:8s}) {report.temporal_fwhm / 1e-15:9.1f} fs FWHM")
        if kind == "homi":
            product = report.temporal_fwhm * ref_width
            print(f"dt * dnu           {product:.6f} "
                  f"(sinc^2 constant {TRIANGLE_SINC2_TIME_BANDWIDTH:.6f})")

        recovered = extract_spectrum(ig)
        rel = abs(spectrum_fwhm_hz(recovered) - ref_width) / ref_width
        print(f"recovered FWHM     {spectrum_fwhm_hz(recovered) / 1e12:.4f} THz "
              f"({rel:.2e} relative)")
        print(f"shape error        {l2_shape_error(recovered, reference):.2e} L2")
        if sign == "plus":
            period = 2.0 * np.pi / recovered.center
            print(f"carrier period     {period / 1e-15:.4f} fs "
                  f"(center {thz_from_angular(recovered.center):.2f} THz)")

    print()
    print("== reduced route vs full 2D quadrature ==")
    small = thin(jsa, 20)
    delays = DelayGrid.symmetric(cfg.delay_grid_for("nooni").step, 201)
    fast_m = biphoton_pattern_symmetric(small, "minus", delays).values
    fast_p = biphoton_pattern_symmetric(small, "plus", delays).values
    slow_m = homi_pattern_general(small, delays).values
    slow_p = nooni_pattern_general(small, delays).values
    print(f"grid               {small.grid_s.count} x {small.grid_s.count}, "
          f"{delays.count} delays")
    print(f"max |difference|   minus {np.max(np.abs(fast_m - slow_m)):.2e}, "
          f"plus {np.max(np.abs(fast_p - slow_p)):.2e}")


if __name__ == "__main__":
    main()
