"""Single-pass closed-form estimator for rotation-alignment recovery.

The estimator works frequency by frequency.  Magnitudes come from the
second moment of each coefficient across observations, which is
invariant to the unknown rotations.  Phases come from a marching loop:
with frequencies below ``k`` already estimated, each observation induces
a log-weight curve over candidate rotations,

    C_jk(theta) = (1 / sigma**2) * sum_{k' != k} Re(conj(y_j[k']) * f[k'] * exp(-i k' theta)),

whose exponential acts as a soft alignment posterior.  Writing
``K[m] = integral exp(C_jk(theta)) exp(-i m theta) d theta`` for the
Fourier coefficients of that posterior, the phase of coefficient ``k``
that maximizes the expanded log-likelihood is the phase of

    Z = sum_j y_j[k] * conj(K_j[k]) / K_j[0].

Each observation contributes through a ratio, so any per-observation
positive scaling of ``exp(C)`` cancels; we exploit that by subtracting
the per-observation maximum of ``C`` before exponentiating, which keeps
the arithmetic in range at any noise level.  The zero-frequency term of
``C`` is constant in ``theta`` and is omitted for the same reason.

Estimation is a single pass in the sense that the marching loop reads
each observation's frequency-``k`` entry once per step: once as the
numerator of its own phase update and once per later kernel in which it
participates.  Nothing is revisited, so the runtime does not depend on
the noise level.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .core import DegeneratePhaseError, ObservationSet, RotationGrid, SignalSpectrum

_MIN_ACCUMULATION = 1e-300


@dataclass(frozen=True)
class FastMleConfig:
    """Settings for the closed-form estimator.

    ``r_mle`` is the quadrature grid size used to integrate the
    alignment posteriors.  It must be at least ``2 * L + 1`` so the
    discrete transform resolves every frequency the march consumes; the
    default is comfortably finer because ``exp(C)`` is not bandlimited.
    """

    r_mle: int = 500

    def __post_init__(self) -> None:
        if self.r_mle < 3:
            raise ValueError("r_mle must be at least 3")


@dataclass(frozen=True)
class KernelSpectrum:
    """Fourier coefficients ``m = 0..k`` of one observation's alignment
    posterior, up to a common positive scale.

    Only ``values[0]`` and ``values[k]`` feed the phase update; the rest
    are kept because they make the transform directly comparable against
    quadrature in tests.  ``values[0]`` integrates a positive function
    and must be real and strictly positive.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.complex128)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("values must be a nonempty vector")
        if arr[0].imag != 0.0 or arr[0].real <= 0.0:
            raise ValueError("zeroth kernel coefficient must be real and strictly positive")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)


def estimate_dc(obs: ObservationSet) -> float:
    """Mean of the zero-frequency coefficients (rotation leaves them fixed)."""
    return float(np.mean(obs.data[:, 0].real))


def estimate_magnitudes(obs: ObservationSet) -> np.ndarray:
    """Estimated magnitudes for frequencies ``1..L``.

    Uses the moment identity ``E|y[k]|**2 = |f[k]|**2 + sigma**2``:
    subtract the full noise power from the per-frequency second moment
    and clamp at zero before the square root.  Clamping absorbs the
    finite-sample case where noise drives the difference negative; a
    zero magnitude simply makes the corresponding phase irrelevant.
    """
    second_moment = np.mean(np.abs(obs.data[:, 1:]) ** 2, axis=0)
    return np.sqrt(np.maximum(0.0, second_moment - obs.sigma**2))


def _kernel_matrix(
    data: np.ndarray, coeffs: np.ndarray, k: int, angles: np.ndarray, sigma: float
) -> np.ndarray:
    """Log-weight curves for all observations at once, shape (n, len(angles)).

    Sums over frequencies ``1..L`` excluding ``k``; the zero-frequency
    term is constant in the angle and intentionally left out.
    """
    bandlimit = data.shape[1] - 1
    idx = np.r_[1:k, k + 1 : bandlimit + 1]
    weighted = np.conj(data[:, idx]) * coeffs[idx]
    phases = np.exp(-1j * np.outer(idx, angles))
    return (weighted @ phases).real / sigma**2


def kernel_log_values(
    obs_row: np.ndarray,
    current: SignalSpectrum,
    k: int,
    grid: RotationGrid,
    sigma: float,
) -> np.ndarray:
    """Log-weight curve ``C(theta_r)`` of one observation over a rotation grid."""
    row = np.asarray(obs_row, dtype=np.complex128)
    if row.ndim != 1 or row.size != current.bandlimit + 1:
        raise ValueError("observation row and current spectrum disagree on bandlimit")
    if not 1 <= k <= current.bandlimit:
        raise IndexError(f"frequency {k} outside [1, {current.bandlimit}]")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return _kernel_matrix(row[np.newaxis, :], current.coeffs, k, grid.angles, sigma)[0]


def kernel_transform(log_values: np.ndarray, k: int) -> KernelSpectrum:
    """Fourier coefficients ``m = 0..k`` of ``exp(log_values)`` over the grid.

    The per-observation maximum is subtracted before exponentiating, so
    the result carries an arbitrary positive scale; downstream use only
    ever takes ratios against the zeroth coefficient.  The grid must
    hold at least ``2k + 1`` points so coefficient ``k`` is resolved.
    """
    vals = np.asarray(log_values, dtype=np.float64)
    if k < 1:
        raise ValueError("k must be >= 1")
    if vals.ndim != 1 or vals.size < 2 * k + 1:
        raise ValueError(f"need at least {2 * k + 1} grid values to resolve frequency {k}")
    stabilized = np.exp(vals - vals.max())
    transform = np.fft.rfft(stabilized)[: k + 1] * (2.0 * np.pi / vals.size)
    return KernelSpectrum(transform)


def phase_update(
    obs: ObservationSet, current: SignalSpectrum, k: int, cfg: FastMleConfig
) -> complex:
    """Closed-form phase for frequency ``k`` given the lower spectrum.

    Accumulates the per-observation ratio terms in ascending observation
    order (parallel callers must preserve that reduction order) and
    normalizes the total.  Raises ``DegeneratePhaseError`` when the
    accumulation vanishes and the phase is undetermined.
    """
    if not 2 <= k <= current.bandlimit:
        raise IndexError(f"frequency {k} outside the marching range [2, {current.bandlimit}]")
    grid = RotationGrid(cfg.r_mle)
    log_weights = _kernel_matrix(obs.data, current.coeffs, k, grid.angles, obs.sigma)
    log_weights -= log_weights.max(axis=1, keepdims=True)
    posterior = np.exp(log_weights)
    k0 = posterior.sum(axis=1)
    if not np.all(k0 > 0.0):
        raise ValueError("alignment posterior lost positivity (non-finite kernel values)")
    kk = posterior @ np.exp(-1j * k * grid.angles)
    z = np.sum(obs.data[:, k] * np.conj(kk) / k0)
    magnitude = abs(z)
    if magnitude < _MIN_ACCUMULATION:
        raise DegeneratePhaseError(f"phase accumulation for frequency {k} is zero")
    return complex(z / magnitude)


def fast_mle(obs: ObservationSet, cfg: FastMleConfig | None = None) -> SignalSpectrum:
    """Full single-pass estimate of the signal spectrum.

    Magnitudes and the zero-frequency coefficient come first.  The
    frequency-1 phase is pinned to zero (the signal is identifiable only
    up to rotation, so some phase must anchor the rest).  Frequencies
    ``2..L`` are then estimated in order, each kernel built from the
    already-estimated lower spectrum with everything above set to zero.
    """
    cfg = cfg or FastMleConfig()
    bandlimit = obs.bandlimit
    if cfg.r_mle < 2 * bandlimit + 1:
        raise ValueError(
            f"r_mle={cfg.r_mle} cannot resolve bandlimit {bandlimit}; need >= {2 * bandlimit + 1}"
        )
    if obs.sigma <= 0:
        # Noiseless data breaks the kernel scaling; magnitudes plus a zero
        # anchor phase are still exact for sigma == 0 only when the march
        # is skipped, so the caller gets magnitudes and the anchor.
        raise ValueError("sigma must be positive; the estimator targets noisy data")

    magnitudes = estimate_magnitudes(obs)
    estimate = np.zeros(bandlimit + 1, dtype=np.complex128)
    estimate[0] = estimate_dc(obs)
    estimate[1] = magnitudes[0]
    if magnitudes[0] == 0.0:
        warnings.warn(
            "frequency-1 magnitude estimate is zero; no anchor exists, returning "
            "all phases as zero",
            stacklevel=2,
        )
        estimate[1:] = magnitudes
        return SignalSpectrum(estimate)

    for k in range(2, bandlimit + 1):
        current = SignalSpectrum(estimate)
        try:
            phase = phase_update(obs, current, k, cfg)
        except DegeneratePhaseError:
            warnings.warn(
                f"degenerate phase accumulation at frequency {k}; falling back to 1",
                stacklevel=2,
            )
            phase = 1.0 + 0.0j
        estimate = estimate.copy()
        estimate[k] = magnitudes[k - 1] * phase
    return SignalSpectrum(estimate)
