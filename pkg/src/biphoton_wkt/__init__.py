"""One- and two-photon interferometry as Fourier-transform pipelines.

The classical Wiener-Khinchin theorem links a spectrum to the Mach-Zehnder
interferogram of the light it describes; its two-photon extension links the
sum- and difference-frequency spectra of a photon pair to NOON-state and
Hong-Ou-Mandel interferograms.  This package simulates those patterns from
spectral models, inverts measured patterns back into spectra, and projects
measured joint spectral intensities onto their characteristic axes.
"""

from .core import (
    C_LIGHT,
    GAUSSIAN_TIME_BANDWIDTH,
    SINC2_HALF_MAX_ARG,
    TRIANGLE_SINC2_TIME_BANDWIDTH,
    DelayGrid,
    FrequencyGrid,
    Interferogram,
    JointSpectralAmplitude,
    Spectrum1D,
    angular_from_thz,
    exchange_symmetry_residual,
    normalize_jsa,
    normalize_spectrum,
    thz_from_angular,
    wavelength_bandwidth_to_frequency,
)
from .errors import (
    AsymmetricJsa,
    BiphotonWktError,
    ComplexJsa,
    ConfigError,
    CsvFormatError,
    FitDiverged,
    GridMismatch,
    GridTooNarrow,
    IncompleteGrid,
    InputDataError,
    InvalidWavelength,
    NegativeCount,
    NoCrossing,
    NonUniform,
    NonUniformGrid,
    NotNormalized,
    NotSquare,
    NumericalPreconditionError,
    NyquistViolation,
    TooFewSamples,
    UnknownKind,
    WindowTooShort,
    ZeroSpectrum,
)
from .extraction import (
    FitReport,
    FringeSignal,
    detrend,
    envelope,
    extract_spectrum,
    fit_envelope,
    fwhm,
    l2_shape_error,
    spectrum_fwhm_hz,
)
from .interference import (
    CorrelationTrace,
    biphoton_pattern_symmetric,
    g1,
    g2,
    homi_pattern_general,
    marginal_projection,
    mzi_pattern,
    nooni_pattern_general,
    with_visibility,
)
from .models import (
    PhaseMatchSpec,
    PumpSpec,
    build_jsa,
    default_photon_grid,
    double_gaussian_jsa,
    gaussian_spectrum,
)
from .tsi import (
    TsiGrid,
    TsiProfile,
    bandwidth_report,
    correlated_gaussian_tsi,
    load_tsi,
    profile_bandwidth_report,
    project,
    save_profile,
    save_tsi,
    subtract_background,
)

__version__ = "1.0.0"

__all__ = [
    "C_LIGHT",
    "GAUSSIAN_TIME_BANDWIDTH",
    "SINC2_HALF_MAX_ARG",
    "TRIANGLE_SINC2_TIME_BANDWIDTH",
    "DelayGrid",
    "FrequencyGrid",
    "Interferogram",
    "JointSpectralAmplitude",
    "Spectrum1D",
    "angular_from_thz",
    "exchange_symmetry_residual",
    "normalize_jsa",
    "normalize_spectrum",
    "thz_from_angular",
    "wavelength_bandwidth_to_frequency",
    "BiphotonWktError",
    "InputDataError",
    "NumericalPreconditionError",
    "AsymmetricJsa",
    "ComplexJsa",
    "ConfigError",
    "CsvFormatError",
    "FitDiverged",
    "GridMismatch",
    "GridTooNarrow",
    "IncompleteGrid",
    "InvalidWavelength",
    "NegativeCount",
    "NoCrossing",
    "NonUniform",
    "NonUniformGrid",
    "NotNormalized",
    "NotSquare",
    "NyquistViolation",
    "TooFewSamples",
    "UnknownKind",
    "WindowTooShort",
    "ZeroSpectrum",
    "FitReport",
    "FringeSignal",
    "detrend",
    "envelope",
    "extract_spectrum",
    "fit_envelope",
    "fwhm",
    "l2_shape_error",
    "spectrum_fwhm_hz",
    "CorrelationTrace",
    "biphoton_pattern_symmetric",
    "g1",
    "g2",
    "homi_pattern_general",
    "marginal_projection",
    "mzi_pattern",
    "nooni_pattern_general",
    "with_visibility",
    "PhaseMatchSpec",
    "PumpSpec",
    "build_jsa",
    "default_photon_grid",
    "double_gaussian_jsa",
    "gaussian_spectrum",
    "TsiGrid",
    "TsiProfile",
    "bandwidth_report",
    "correlated_gaussian_tsi",
    "load_tsi",
    "profile_bandwidth_report",
    "project",
    "save_profile",
    "save_tsi",
    "subtract_background",
]
