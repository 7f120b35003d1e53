"""Multi-reference alignment over planar rotations.

Recover a real bandlimited signal on the circle from many noisy copies,
each rotated by an unknown angle.  The package provides a single-pass
closed-form estimator built for very low signal-to-noise ratios, a
grid-discretized EM baseline, rotation-aligned error metrics, and a
benchmark harness with a CSV-emitting command line (``bench``).
"""

from .core import (
    DegeneratePhaseError,
    ObservationSet,
    RotationGrid,
    SignalSpectrum,
    evaluate_signal,
    negate_frequency,
    spectrum_norm_sq,
)
from .em import EmConfig, EmResult, e_step, em_run, log_likelihood, m_step
from .estimators import FastMLE, GridEM
from .fastmle import (
    FastMleConfig,
    KernelSpectrum,
    estimate_dc,
    estimate_magnitudes,
    fast_mle,
    kernel_log_values,
    kernel_transform,
    phase_update,
)
from .metrics import align_and_mse
from .bench import (
    BenchConfig,
    BenchRecord,
    derive_seed,
    emit_csv,
    read_records,
    run_n_sweep,
    run_sigma_sweep,
)
from .simulate import (
    SimConfig,
    generate_observations,
    load_observations,
    random_signal,
    rotate_spectrum,
    save_observations,
)

__version__ = "0.1.0"

__all__ = [
    "BenchConfig",
    "BenchRecord",
    "DegeneratePhaseError",
    "EmConfig",
    "EmResult",
    "FastMLE",
    "FastMleConfig",
    "GridEM",
    "KernelSpectrum",
    "ObservationSet",
    "RotationGrid",
    "SignalSpectrum",
    "SimConfig",
    "align_and_mse",
    "derive_seed",
    "e_step",
    "em_run",
    "emit_csv",
    "estimate_dc",
    "estimate_magnitudes",
    "evaluate_signal",
    "fast_mle",
    "generate_observations",
    "kernel_log_values",
    "kernel_transform",
    "load_observations",
    "log_likelihood",
    "m_step",
    "negate_frequency",
    "phase_update",
    "random_signal",
    "read_records",
    "rotate_spectrum",
    "run_n_sweep",
    "run_sigma_sweep",
    "save_observations",
    "spectrum_norm_sq",
]
