"""Estimator-style front ends over the functional core.

Both classes follow the scikit-learn contract: hyperparameters live on
``__init__`` verbatim, ``fit`` validates input and sets trailing-
underscore attributes, ``get_params``/``set_params``/``clone`` work out
of the box.  ``X`` is a complex matrix with one observation per row
(one-sided Fourier coefficients).  There is no ``y``: the model is
unsupervised.  ``predict`` returns the most likely rotation angle per
observation under the fitted spectrum, which is the latent quantity the
model explains each row with.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from ._validation import validate_observation_matrix, validate_sigma
from .core import ObservationSet, RotationGrid, SignalSpectrum
from .em import EmConfig, _cross_logits, em_run
from .fastmle import FastMleConfig, fast_mle


def _predict_rotations(X, sigma: float, coefficients: np.ndarray, grid_size: int) -> np.ndarray:
    data = validate_observation_matrix(X)
    if data.shape[1] != coefficients.size:
        raise ValueError(
            f"X has {data.shape[1]} coefficients per row, the fitted spectrum has "
            f"{coefficients.size}"
        )
    grid = RotationGrid(grid_size)
    logits = _cross_logits(data, coefficients, grid.angles, sigma)
    return grid.angles[np.argmax(logits, axis=1)]


class FastMLE(BaseEstimator):
    """Single-pass closed-form spectrum estimator.

    Parameters
    ----------
    sigma : float
        Noise standard deviation of the observations.
    r_mle : int, default 500
        Quadrature grid size for the alignment posteriors.

    Attributes (after ``fit``)
    --------------------------
    coefficients_ : complex ndarray, shape (L + 1,)
    spectrum_ : SignalSpectrum
    """

    def __init__(self, sigma: float = 1.0, r_mle: int = 500):
        self.sigma = sigma
        self.r_mle = r_mle

    def fit(self, X, y=None):
        data = validate_observation_matrix(X)
        sigma = validate_sigma(self.sigma)
        obs = ObservationSet(data=data, sigma=sigma)
        self.spectrum_ = fast_mle(obs, FastMleConfig(r_mle=self.r_mle))
        self.coefficients_ = self.spectrum_.coeffs
        return self

    def predict(self, X) -> np.ndarray:
        if not hasattr(self, "coefficients_"):
            raise NotFittedError("call fit before predict")
        return _predict_rotations(X, validate_sigma(self.sigma), self.coefficients_, self.r_mle)


class GridEM(BaseEstimator):
    """Grid-discretized EM spectrum estimator.

    ``init="random"`` draws the start from the signal prior with
    ``seed``; passing an array warm-starts from that spectrum (for
    example ``FastMLE(...).fit(X).coefficients_``).

    Attributes (after ``fit``)
    --------------------------
    coefficients_ : complex ndarray, shape (L + 1,)
    spectrum_ : SignalSpectrum
    n_iter_ : int
    converged_ : bool
    """

    def __init__(
        self,
        sigma: float = 1.0,
        grid_size: int = 1000,
        max_iters: int = 500,
        tol: float = 1e-6,
        init="random",
        seed: int = 0,
    ):
        self.sigma = sigma
        self.grid_size = grid_size
        self.max_iters = max_iters
        self.tol = tol
        self.init = init
        self.seed = seed

    def fit(self, X, y=None):
        data = validate_observation_matrix(X)
        sigma = validate_sigma(self.sigma)
        obs = ObservationSet(data=data, sigma=sigma)
        if isinstance(self.init, str):
            init = self.init
        else:
            init = SignalSpectrum(np.asarray(self.init, dtype=np.complex128))
        cfg = EmConfig(
            grid_size=self.grid_size,
            max_iters=self.max_iters,
            tol=self.tol,
            init=init,
            seed=self.seed,
        )
        result = em_run(obs, cfg)
        self.spectrum_ = result.estimate
        self.coefficients_ = result.estimate.coeffs
        self.n_iter_ = result.iterations
        self.converged_ = result.converged
        return self

    def predict(self, X) -> np.ndarray:
        if not hasattr(self, "coefficients_"):
            raise NotFittedError("call fit before predict")
        return _predict_rotations(
            X, validate_sigma(self.sigma), self.coefficients_, self.grid_size
        )
