"""Input checks shared by the estimator classes."""

from __future__ import annotations

import numpy as np


def validate_observation_matrix(X) -> np.ndarray:
    """Coerce to a complex (n, L + 1) matrix and reject malformed input."""
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D observation matrix, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise ValueError("need at least one observation row")
    if arr.shape[1] < 2:
        raise ValueError("each row needs at least 2 coefficients (bandlimit >= 1)")
    arr = arr.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError("observation matrix contains non-finite values")
    return arr


def validate_sigma(sigma) -> float:
    value = float(sigma)
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"sigma must be a positive finite number, got {sigma!r}")
    return value
