"""Shared domain types for circular multi-reference alignment.

A signal on the unit circle with bandlimit ``L`` is represented by its
one-sided Fourier coefficients ``f[0], f[1], ..., f[L]``; negative
frequencies are implied by conjugate symmetry because the signal is
real-valued.  Observations are rows of noisy, randomly rotated copies of
such a spectrum.  Rotation grids discretize the circle for estimators
that search or integrate over rotations.

All types are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class DegeneratePhaseError(ValueError):
    """Raised when a phase estimate is requested from an identically zero
    accumulation, leaving the phase undetermined."""


def _as_complex_vector(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class SignalSpectrum:
    """One-sided spectrum of a real bandlimited signal.

    ``coeffs[k]`` holds the frequency-``k`` coefficient for ``k = 0..L``.
    The zero-frequency coefficient must have an exactly zero imaginary
    part; every operation in this package preserves that invariant.
    """

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_complex_vector(self.coeffs, "coeffs")
        if arr.size < 2:
            raise ValueError("spectrum needs a bandlimit of at least 1 (>= 2 coefficients)")
        if arr[0].imag != 0.0:
            raise ValueError("zero-frequency coefficient must be real")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def bandlimit(self) -> int:
        return self.coeffs.size - 1


@dataclass(frozen=True, eq=False)
class ObservationSet:
    """A batch of noisy rotated observations in the Fourier domain.

    ``data`` has shape ``(n, L + 1)``; row ``j`` holds the one-sided
    coefficients of observation ``j``.  ``sigma`` is the noise standard
    deviation under which the rows were produced (total variance
    ``sigma**2`` per coefficient).
    """

    data: np.ndarray
    sigma: float

    def __post_init__(self) -> None:
        arr = np.asarray(self.data, dtype=np.complex128)
        if arr.ndim != 2:
            raise ValueError(f"data must be two-dimensional, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("need at least one observation")
        if arr.shape[1] < 2:
            raise ValueError("rows need a bandlimit of at least 1 (>= 2 coefficients)")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "sigma", float(self.sigma))

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def bandlimit(self) -> int:
        return self.data.shape[1] - 1


@dataclass(frozen=True, eq=False)
class RotationGrid:
    """``size`` equispaced rotation angles ``2*pi*r / size`` on [0, 2pi)."""

    size: int
    angles: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("grid size must be positive")
        angles = 2.0 * np.pi * np.arange(self.size) / self.size
        angles.setflags(write=False)
        object.__setattr__(self, "angles", angles)


def negate_frequency(spec: SignalSpectrum, k: int) -> complex:
    """Coefficient at a signed frequency: ``f[k]`` for ``k >= 0`` and
    ``conj(f[-k])`` for ``k < 0`` (conjugate symmetry of real signals)."""
    if abs(k) > spec.bandlimit:
        raise IndexError(f"frequency {k} outside [-{spec.bandlimit}, {spec.bandlimit}]")
    if k >= 0:
        return complex(spec.coeffs[k])
    return complex(np.conj(spec.coeffs[-k]))


def spectrum_norm_sq(spec: SignalSpectrum) -> float:
    """Sum of squared coefficient magnitudes over the one-sided spectrum."""
    return float(np.sum(np.abs(spec.coeffs) ** 2))


def evaluate_signal(spec: SignalSpectrum, t: float) -> complex:
    """Evaluate ``sum_{k=-L..L} f[k] exp(i k t)``.

    Real up to rounding for any spectrum with a real zero-frequency
    coefficient; returned as complex so tests can assert just that.
    """
    total = 0.0 + 0.0j
    for k in range(-spec.bandlimit, spec.bandlimit + 1):
        total += negate_frequency(spec, k) * np.exp(1j * k * t)
    return total
