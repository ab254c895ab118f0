"""Shared reference helpers, independent of the package internals."""

import numpy as np


def reference_fwhm(x, y):
    """Full width at half maximum by linear interpolation from the peak.

    Deliberately separate from the package's own width measurement so the
    two can check each other.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    i = int(np.argmax(y))
    half = 0.5 * y[i]
    left = i
    while left > 0 and y[left] > half:
        left -= 1
    if y[left] > half:
        raise ValueError("no left half crossing")
    xl = np.interp(half, [y[left], y[left + 1]], [x[left], x[left + 1]])
    right = i
    while right < len(y) - 1 and y[right] > half:
        right += 1
    if y[right] > half:
        raise ValueError("no right half crossing")
    xr = np.interp(half, [y[right], y[right - 1]], [x[right], x[right - 1]])
    return float(xr - xl)
