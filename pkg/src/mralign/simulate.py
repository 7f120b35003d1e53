"""Synthetic data generation for the rotation-alignment model.

Signals are drawn coefficient-wise from a standard normal prior.  An
observation is the signal rotated by a uniformly random angle plus
complex Gaussian noise with total variance ``sigma**2`` per coefficient.
Because the underlying signal is real, the zero-frequency coefficient of
every observation stays real: its noise is drawn as a real normal with
variance ``sigma**2``, while every higher frequency receives independent
real and imaginary noise parts with variance ``sigma**2 / 2`` each.

Everything here is deterministic given the seed (NumPy ``default_rng``,
PCG64).  Draw order is part of the contract: for ``random_signal`` the
zero-frequency value is drawn first, then an ``(L, 2)`` block of
real/imaginary parts; for ``generate_observations`` the rotation angles
are drawn first, then the zero-frequency noise, then the real block and
the imaginary block for the higher frequencies.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .core import ObservationSet, SignalSpectrum

_EXPORT_MAGIC = b"OBSSET01"


@dataclass(frozen=True)
class SimConfig:
    """Parameters for one synthetic observation set."""

    bandlimit: int
    n: int
    sigma: float
    seed: int

    def __post_init__(self) -> None:
        if self.bandlimit < 1:
            raise ValueError("bandlimit must be >= 1")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")


def random_signal(bandlimit: int, seed: int) -> SignalSpectrum:
    """Draw a spectrum with standard-normal coefficients.

    The zero-frequency coefficient is a real standard normal; for
    ``k = 1..L`` the real and imaginary parts are i.i.d. standard normal.
    """
    if bandlimit < 1:
        raise ValueError("bandlimit must be >= 1")
    rng = np.random.default_rng(seed)
    coeffs = np.empty(bandlimit + 1, dtype=np.complex128)
    coeffs[0] = rng.standard_normal()
    parts = rng.standard_normal((bandlimit, 2))
    coeffs[1:] = parts[:, 0] + 1j * parts[:, 1]
    return SignalSpectrum(coeffs)


def rotate_spectrum(spec: SignalSpectrum, theta: float) -> SignalSpectrum:
    """Rotate the signal by ``theta``: coefficient ``k`` picks up ``exp(-i k theta)``."""
    ks = np.arange(spec.bandlimit + 1)
    return SignalSpectrum(spec.coeffs * np.exp(-1j * ks * theta))


def generate_observations(spec: SignalSpectrum, cfg: SimConfig) -> ObservationSet:
    """Produce ``cfg.n`` noisy rotated copies of ``spec``.

    Each row is ``f[k] * exp(-i k theta_j)`` plus noise, with
    ``theta_j ~ Unif[0, 2pi)`` drawn independently per observation and
    continuous (never snapped to any grid).
    """
    if cfg.bandlimit != spec.bandlimit:
        raise ValueError(
            f"config bandlimit {cfg.bandlimit} != spectrum bandlimit {spec.bandlimit}"
        )
    rng = np.random.default_rng(cfg.seed)
    ks = np.arange(spec.bandlimit + 1)
    thetas = rng.uniform(0.0, 2.0 * np.pi, cfg.n)
    data = spec.coeffs[np.newaxis, :] * np.exp(-1j * np.outer(thetas, ks))
    if cfg.sigma > 0:
        data[:, 0] += cfg.sigma * rng.standard_normal(cfg.n)
        half = cfg.sigma / np.sqrt(2.0)
        re = rng.standard_normal((cfg.n, spec.bandlimit))
        im = rng.standard_normal((cfg.n, spec.bandlimit))
        data[:, 1:] += half * (re + 1j * im)
    return ObservationSet(data=data, sigma=cfg.sigma)


def save_observations(path, obs: ObservationSet) -> None:
    """Write an observation set to a flat binary file.

    Layout: 8-byte magic ``OBSSET01``; little-endian header of bandlimit
    (uint32), n (uint64), sigma (float64); then ``n`` rows of
    ``2 * (L + 1)`` float64 values, interleaved real/imaginary.  The
    round trip through ``load_observations`` is bit-exact.
    """
    header = struct.pack("<IQd", obs.bandlimit, obs.n, obs.sigma)
    with open(path, "wb") as fh:
        fh.write(_EXPORT_MAGIC)
        fh.write(header)
        fh.write(np.ascontiguousarray(obs.data).tobytes())


def load_observations(path) -> ObservationSet:
    """Read a file produced by ``save_observations``."""
    with open(path, "rb") as fh:
        magic = fh.read(len(_EXPORT_MAGIC))
        if magic != _EXPORT_MAGIC:
            raise ValueError(f"{path}: not an observation-set file (bad magic {magic!r})")
        bandlimit, n, sigma = struct.unpack("<IQd", fh.read(struct.calcsize("<IQd")))
        payload = fh.read()
    expected = n * (bandlimit + 1) * 16
    if len(payload) != expected:
        raise ValueError(f"{path}: truncated payload ({len(payload)} bytes, expected {expected})")
    data = np.frombuffer(payload, dtype=np.complex128).reshape(n, bandlimit + 1)
    return ObservationSet(data=data.copy(), sigma=sigma)
