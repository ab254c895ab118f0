#!/usr/bin/env python3
"""Project a measured joint spectrum onto its marginal and diagonal cuts.

Reads a lambda_s_nm,lambda_i_nm,counts CSV when a path is given, otherwise
builds a synthetic positively correlated Gaussian with 18.2 / 1.9 / 24.6 nm
cut widths at 1584 nm.  Prints the per-axis FWHM in nm and THz, which is
the bridge between a camera picture of the joint spectrum and the widths
an interferometric measurement sees on the sum and difference axes.

Run:  python3 demos/tsi_projection_report.py [tsi.csv]
"""

import sys

from biphoton_wkt import (
    bandwidth_report,
    correlated_gaussian_tsi,
    load_tsi,
    project,
    subtract_background,
)

SYNTHETIC_WIDTHS_NM = (18.2, 1.9, 24.6)


def main(argv: list[str]) -> None:
    if argv:
        print(f"loading {argv[0]}")
        tsi = subtract_background(load_tsi(argv[0]))
    else:
        x_nm, anti_nm, diag_nm = SYNTHETIC_WIDTHS_NM
        print(f"synthetic correlated Gaussian: x {x_nm} nm, "
              f"anti-diagonal {anti_nm} nm, diagonal {diag_nm} nm")
        tsi = correlated_gaussian_tsi(x_nm, anti_nm, diag_nm)

    print(f"grid               {len(tsi.lambda_s)} x {len(tsi.lambda_i)}, "
          f"step {tsi.step_s / 1e-9:.3f} nm")
    print(f"total counts       {tsi.total:.1f}")

    report = bandwidth_report(tsi)
    lam0 = report.reference_wavelength
    print(f"reference          {lam0 / 1e-9:.2f} nm "
          f"(all conversions quoted here)")
    print()
    print(f"{'axis':<14}{'FWHM (nm)':>12}{'FWHM (THz)':>12}")
    for axis in ("x", "diagonal", "antidiagonal"):
        nm = getattr(report, f"{axis}_fwhm") / 1e-9
        thz = getattr(report, f"{axis}_fwhm_hz") / 1e12
        print(f"{axis:<14}{nm:>12.3f}{thz:>12.4f}")

    # The wide diagonal / narrow anti-diagonal pair is the signature of
    # positive frequency anticorrelation: the photon energies sum to the
    # pump, so the sum axis carries the pump linewidth and the difference
    # axis carries the (much broader) phase-matching width.  On the
    # wavelength picture near degeneracy the roles appear swapped.
    diag = project(tsi, "diagonal")
    anti = project(tsi, "antidiagonal")
    ratio = diag.fwhm() / anti.fwhm()
    print()
    print(f"diagonal / anti-diagonal width ratio: {ratio:.2f}")


if __name__ == "__main__":
    main(sys.argv[1:])
