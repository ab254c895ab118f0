"""Command line pipeline: simulate, extract, project, roundtrip, fit.

Exit statuses are 0 (success), 1 (round-trip tolerance failure), 2 (input
or configuration error) and 3 (numerical precondition violated).  Failures
print one machine-readable line on stderr:

    error exit=2 type=ConfigError message='...'

Outputs are deterministic: identical config and inputs give byte-identical
CSV files.  BIPHOTON_WKT_THREADS caps internal parallelism of the general
quadrature paths and never changes results.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .config import RunConfig, load_config, with_overrides
from .core import Interferogram, Spectrum1D, angular_from_thz, thz_from_angular
from .csvio import (
    AXIS_FOR_KIND,
    read_interferogram,
    write_interferogram,
    write_spectrum,
)
from .errors import ConfigError, InputDataError, NumericalPreconditionError, UnknownKind
from .extraction import extract_spectrum, fit_envelope, l2_shape_error, spectrum_fwhm_hz
from .interference import (
    biphoton_pattern_symmetric,
    marginal_projection,
    mzi_pattern,
    with_visibility,
)
from .models import build_jsa, double_gaussian_jsa, gaussian_spectrum
from .tsi import (
    PROJECTION_AXES,
    bandwidth_report,
    load_tsi,
    project,
    save_profile,
    subtract_background,
)

SIGN_FOR_KIND = {"homi": "minus", "nooni": "plus"}


def _require(value: str | None, what: str) -> str:
    if value is None:
        raise ConfigError(f"{what} is required (flag or config key)")
    return value


def _one_photon_spectrum(cfg: RunConfig) -> Spectrum1D:
    grid = cfg.frequency_grid_for("mzi")
    center = grid.center  # grid is built around the configured line
    return gaussian_spectrum(center, cfg.spectrum_fwhm_thz * 1e12, grid)


def _two_photon_jsa(cfg: RunConfig, kind: str):
    model = cfg.model_for(kind)
    grid = cfg.frequency_grid_for(kind)
    if model == "phasematched":
        return build_jsa(cfg.pump(), cfg.phase_match(), grid)
    if model == "double_gaussian":
        return double_gaussian_jsa(
            angular_from_thz(cfg.sigma_plus_thz),
            angular_from_thz(cfg.sigma_minus_thz),
            cfg.pump().carrier_frequency,
            grid,
        )
    raise ConfigError(f"model {model!r} cannot produce a two-photon state")


def _to_counts(ig: Interferogram, cfg: RunConfig) -> Interferogram:
    peak = float(np.max(ig.values))
    if peak <= 0.0:
        raise ConfigError("pattern is identically zero; cannot scale to counts")
    expected = ig.values * (cfg.peak_counts / peak)
    if cfg.noise == "poisson":
        counts = np.random.default_rng(cfg.seed).poisson(expected)
    else:
        counts = np.rint(expected)
    return Interferogram(ig.delays, counts.astype(float), ig.kind, "counts")


def simulate_pattern(cfg: RunConfig, kind: str) -> Interferogram:
    """Noiseless-to-noisy forward model for one interferometer kind."""
    delays = cfg.delay_grid_for(kind)
    if kind == "mzi":
        if cfg.model_for(kind) != "gaussian":
            raise ConfigError("kind=mzi works with model=gaussian only")
        ig = mzi_pattern(_one_photon_spectrum(cfg), delays)
    else:
        jsa = _two_photon_jsa(cfg, kind)
        ig = biphoton_pattern_symmetric(jsa, SIGN_FOR_KIND[kind], delays)
    if cfg.visibility < 1.0:
        ig = with_visibility(ig, cfg.visibility)
    if cfg.units == "counts":
        ig = _to_counts(ig, cfg)
    return ig


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = with_overrides(load_config(args.config), kind=args.kind, out=args.out)
    kind = _require(cfg.kind, "kind")
    out = _require(cfg.out, "output path")
    ig = simulate_pattern(cfg, kind)
    write_interferogram(ig, out)
    print(f"wrote {out} kind={kind} units={ig.units} points={ig.delays.count}")
    return 0


def _with_kind(ig: Interferogram, kind_flag: str | None) -> Interferogram:
    kind = kind_flag or ig.kind
    if kind is None:
        raise UnknownKind("interferogram kind not in file; pass --kind")
    if kind != ig.kind:
        ig = Interferogram(ig.delays, ig.values, kind, ig.units)
    return ig


def _cmd_extract(args: argparse.Namespace) -> int:
    cfg = with_overrides(load_config(args.config), out=args.out)
    out = _require(cfg.out, "output path")
    ig = _with_kind(read_interferogram(args.input), args.kind)
    spectrum = extract_spectrum(ig, pad_factor=cfg.pad_factor, apodize=cfg.apodize)
    axis = AXIS_FOR_KIND[ig.kind]
    write_spectrum(spectrum, axis, out)
    width_thz = spectrum_fwhm_hz(spectrum) / 1e12
    center_thz = thz_from_angular(spectrum.center)
    print(f"wrote {out} axis={axis} fwhm_thz={width_thz!r} center_thz={center_thz!r}")
    return 0


def _cmd_project(args: argparse.Namespace) -> int:
    cfg = with_overrides(load_config(args.config), out=args.out)
    prefix = _require(cfg.out, "output prefix")
    tsi = load_tsi(args.input)
    if cfg.background:
        tsi = subtract_background(tsi)
    report = bandwidth_report(tsi)
    for axis in PROJECTION_AXES:
        save_profile(project(tsi, axis), f"{prefix}_{axis}.csv")
    print(f"reference_wavelength_nm={report.reference_wavelength / 1e-9!r}")
    for axis in PROJECTION_AXES:
        nm = getattr(report, f"{axis}_fwhm") / 1e-9
        thz = getattr(report, f"{axis}_fwhm_hz") / 1e12
        print(f"axis={axis} fwhm_nm={nm!r} fwhm_thz={thz!r}")
    return 0


def _cmd_roundtrip(args: argparse.Namespace) -> int:
    cfg = with_overrides(load_config(args.config), tolerance=args.tolerance)
    rows: list[tuple[str, float, float, float]] = []

    spectrum = _one_photon_spectrum(cfg)
    ig = mzi_pattern(spectrum, cfg.delay_grid_for("mzi"))
    extracted = extract_spectrum(ig, pad_factor=cfg.pad_factor)
    rows.append((
        "mzi",
        spectrum_fwhm_hz(spectrum),
        spectrum_fwhm_hz(extracted),
        l2_shape_error(extracted, spectrum),
    ))

    jsa = _two_photon_jsa(cfg, "homi")
    for kind in ("homi", "nooni"):
        sign = SIGN_FOR_KIND[kind]
        reference = marginal_projection(jsa, sign)
        ig = biphoton_pattern_symmetric(jsa, sign, cfg.delay_grid_for(kind))
        extracted = extract_spectrum(ig, pad_factor=cfg.pad_factor)
        rows.append((
            kind,
            spectrum_fwhm_hz(reference),
            spectrum_fwhm_hz(extracted),
            l2_shape_error(extracted, reference),
        ))

    all_pass = True
    for kind, ref_hz, ext_hz, shape in rows:
        rel = abs(ext_hz - ref_hz) / ref_hz
        ok = rel <= cfg.tolerance
        all_pass = all_pass and ok
        print(
            f"kind={kind} ref_fwhm_thz={ref_hz / 1e12:.6f} "
            f"extracted_fwhm_thz={ext_hz / 1e12:.6f} rel_err={rel:.2e} "
            f"shape_err={shape:.2e} {'PASS' if ok else 'FAIL'}"
        )
    print(f"tolerance={cfg.tolerance!r} result={'PASS' if all_pass else 'FAIL'}")
    return 0 if all_pass else 1


_DEFAULT_FIT_MODEL = {"mzi": "gaussian", "homi": "triangle", "nooni": "gaussian"}


def _cmd_fit(args: argparse.Namespace) -> int:
    ig = _with_kind(read_interferogram(args.input), args.kind)
    model = args.model or _DEFAULT_FIT_MODEL[ig.kind]
    report = fit_envelope(ig, model)
    print(
        f"kind={ig.kind} model={report.model} "
        f"visibility={report.visibility!r} "
        f"visibility_uncertainty={report.visibility_uncertainty!r} "
        f"temporal_fwhm_fs={report.temporal_fwhm / 1e-15!r} "
        f"residual_rms={report.residual_rms!r}"
    )
    return 0


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biphoton-wkt",
        description=(
            "Simulate and invert one- and two-photon interferograms, and "
            "project measured joint spectra."
        ),
        epilog="BIPHOTON_WKT_THREADS caps internal parallelism (default 1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, kind: bool = True) -> None:
        p.add_argument("--config", help="key=value config file")
        if kind:
            p.add_argument("--kind", choices=("mzi", "homi", "nooni"))

    p = sub.add_parser("simulate", help="write a synthetic interferogram CSV")
    common(p)
    p.add_argument("--out", help="interferogram CSV path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("extract", help="recover the spectrum behind an interferogram")
    common(p)
    p.add_argument("input", help="interferogram CSV")
    p.add_argument("--out", help="spectrum CSV path")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("project", help="project a joint spectral intensity CSV")
    common(p, kind=False)
    p.add_argument("input", help="TSI CSV (lambda_s_nm,lambda_i_nm,counts)")
    p.add_argument("--out", help="output prefix for the three profile CSVs")
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("roundtrip", help="simulate, extract and compare all kinds")
    common(p, kind=False)
    p.add_argument("--tolerance", type=float, help="relative FWHM tolerance")
    p.set_defaults(func=_cmd_roundtrip)

    p = sub.add_parser("fit", help="fit an envelope model to an interferogram")
    common(p)
    p.add_argument("input", help="interferogram CSV")
    p.add_argument("--model", choices=("gaussian", "triangle"))
    p.set_defaults(func=_cmd_fit)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputDataError as exc:
        return _fail(2, exc)
    except NumericalPreconditionError as exc:
        return _fail(3, exc)
    except OSError as exc:
        return _fail(2, exc)


def _fail(code: int, exc: Exception) -> int:
    print(
        f"error exit={code} type={type(exc).__name__} message={str(exc)!r}",
        file=sys.stderr,
    )
    return code


if __name__ == "__main__":
    sys.exit(main())
