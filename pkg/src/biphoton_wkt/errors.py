"""Exception types shared across the package.

Two families matter for the CLI exit-code contract: input/format problems
(bad config, malformed CSV, broken measurement grids) and numerical
precondition violations (unnormalized input, undersampled delay grid, ...).
"""


class BiphotonWktError(Exception):
    """Base class for all package errors."""


class InputDataError(BiphotonWktError):
    """Malformed configuration or input data (CLI exit code 2)."""


class NumericalPreconditionError(BiphotonWktError):
    """A numeric precondition of an operation is violated (CLI exit code 3)."""


# ---- input / format errors -------------------------------------------------

class ConfigError(InputDataError):
    """Bad key, bad value, or missing configuration file."""


class CsvFormatError(InputDataError):
    """A CSV file does not follow the documented schema."""


class IncompleteGrid(InputDataError):
    """A tabulated 2D scan does not cover a complete rectangle of cells."""


class NonUniform(InputDataError):
    """A tabulated wavelength axis is not uniformly spaced."""


class NegativeCount(InputDataError):
    """A count value in a tabulated scan is negative."""


# ---- numerical precondition errors ----------------------------------------

class ZeroSpectrum(NumericalPreconditionError):
    """Spectrum has zero integral or negative values where forbidden."""


class GridMismatch(NumericalPreconditionError):
    """Two grids that must be identical differ."""


class InvalidWavelength(NumericalPreconditionError):
    """Nonpositive wavelength or bandwidth in a conversion."""


class GridTooNarrow(NumericalPreconditionError):
    """Spectral window does not contain the requested lineshape."""


class NotNormalized(NumericalPreconditionError):
    """Input spectrum or joint amplitude is not normalized."""


class AsymmetricJsa(NumericalPreconditionError):
    """Joint amplitude lacks the exchange symmetry required by a fast path."""


class ComplexJsa(NumericalPreconditionError):
    """Joint amplitude has a non-negligible imaginary part where a real one is required."""


class NyquistViolation(NumericalPreconditionError):
    """Delay sampling too coarse for the spectral extent of the input."""


class UnknownKind(NumericalPreconditionError):
    """Interferogram kind is unset or not one of mzi/homi/nooni."""


class WindowTooShort(NumericalPreconditionError):
    """Fringe signal has not decayed at the edges of the delay window."""


class NonUniformGrid(NumericalPreconditionError):
    """Delay grid is not uniform or not symmetric about zero."""


class TooFewSamples(NumericalPreconditionError):
    """Not enough samples (or samples per carrier period) for an estimator."""


class NoCrossing(NumericalPreconditionError):
    """A half-maximum crossing required by a width estimate does not exist."""


class FitDiverged(NumericalPreconditionError):
    """Least-squares fit residual is too large relative to the signal."""


class NotSquare(NumericalPreconditionError):
    """Operation requires a square scan grid (same step and count on both axes)."""
