"""Rotation-aligned error between an estimated and a true spectrum."""

from __future__ import annotations

import numpy as np

from .core import SignalSpectrum


def align_and_mse(
    estimate: SignalSpectrum, truth: SignalSpectrum, n_align: int = 10000
) -> tuple[float, float]:
    """Aligned relative error and the aligning rotation.

    Estimators recover the signal only up to a global rotation, so the
    error is measured after the best alignment.  The search sweeps
    ``n_align`` equispaced angles for the rotation of the truth that is
    closest to the estimate in plain l2 distance; ``alpha_star`` is that
    angle, i.e. the estimated rotation carrying the truth onto the
    estimate.  The reported error then normalizes per frequency:

        mse = sum_k |est[k] * exp(i k alpha_star) - truth[k]|^2 / |truth[k]|^2.

    The alignment objective is unnormalized on purpose; only the
    reported error weights frequencies by the truth magnitudes.

    Raises ``ValueError`` if any truth coefficient is zero (the
    normalization is undefined there) or if bandlimits disagree.
    """
    if estimate.bandlimit != truth.bandlimit:
        raise ValueError("estimate and truth disagree on bandlimit")
    if n_align < 1:
        raise ValueError("n_align must be positive")
    truth_coeffs = truth.coeffs
    if np.any(np.abs(truth_coeffs) == 0.0):
        raise ValueError("truth has a zero coefficient; per-frequency normalization undefined")

    ks = np.arange(truth.bandlimit + 1)
    alphas = 2.0 * np.pi * np.arange(n_align) / n_align
    # Minimizing sum_k |est_k - truth_k e^{-ik a}|^2 over a is maximizing
    # the real part of the correlation below; the norms do not move.
    correlation = np.conj(truth_coeffs) * estimate.coeffs
    objective = (np.exp(1j * np.outer(alphas, ks)) @ correlation).real
    best = int(np.argmax(objective))
    alpha_star = float(alphas[best])

    aligned = estimate.coeffs * np.exp(1j * ks * alpha_star)
    mse = float(np.sum(np.abs(aligned - truth_coeffs) ** 2 / np.abs(truth_coeffs) ** 2))
    return mse, alpha_star
