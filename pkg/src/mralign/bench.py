"""Benchmark harness: parameter sweeps, timing, and CSV records.

Three pipelines are compared: the single-pass estimator (``fast_mle``),
EM from a random initialization (``em_random``), and EM warm-started
from the single-pass output (``em_warm``).  Sweeps vary the noise level
at fixed sample size or the sample size at fixed noise.

Per-trial seeds are derived by hashing the swept value and trial index
into the base seed, so extending a sweep never changes the data of
existing points.  Wall time is measured with a monotonic clock around
the estimator call only; building the synthetic data is excluded, and
one warm-up run per method is discarded before anything is timed.
"""

from __future__ import annotations

import csv
import hashlib
import logging
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .core import ObservationSet, SignalSpectrum
from .em import EmConfig, em_run
from .fastmle import FastMleConfig, fast_mle
from .metrics import align_and_mse
from .simulate import SimConfig, generate_observations, random_signal

logger = logging.getLogger(__name__)

METHODS = ("fast_mle", "em_random", "em_warm")
CSV_HEADER = ("method", "sigma", "n", "trial", "mse", "wall_time_seconds", "em_iters")
_WARMUP_ROWS = 64


@dataclass(frozen=True)
class BenchConfig:
    bandlimit: int = 5
    trials: int = 5
    seed_base: int = 0
    sigma_sweep: tuple[float, ...] = ()
    n_fixed: int = 100_000
    n_sweep: tuple[int, ...] = ()
    sigma_fixed: float = 12.0
    fastmle: FastMleConfig = FastMleConfig()
    em: EmConfig = EmConfig()
    methods: tuple[str, ...] = METHODS
    output_path: str | None = None
    workers: int = 1
    sequential_timing: bool = False

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.bandlimit < 1:
            raise ValueError("bandlimit must be >= 1")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods {sorted(unknown)}; choose from {METHODS}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class BenchRecord:
    method: str
    sigma: float
    n: int
    trial: int
    mse: float
    wall_time_seconds: float
    em_iters: int | None


def derive_seed(seed_base: int, swept_value, trial: int, role: str) -> int:
    """Stable 64-bit seed for one (sweep point, trial, role) combination."""
    digest = hashlib.sha256(repr((role, swept_value, trial)).encode()).digest()
    return (seed_base ^ int.from_bytes(digest[:8], "little")) & 0xFFFFFFFFFFFFFFFF


def _record_warnings(method: str, caught) -> None:
    for item in caught:
        logger.warning("%s: %s", method, item.message)


def _trial_records(cfg: BenchConfig, sigma: float, n: int, tag, trial: int) -> list[BenchRecord]:
    truth = random_signal(cfg.bandlimit, derive_seed(cfg.seed_base, tag, trial, "signal"))
    obs = generate_observations(
        truth,
        SimConfig(cfg.bandlimit, n, sigma, derive_seed(cfg.seed_base, tag, trial, "noise")),
    )
    records: list[BenchRecord] = []

    warm_source: SignalSpectrum | None = None
    if "fast_mle" in cfg.methods or "em_warm" in cfg.methods:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            start = time.perf_counter()
            warm_source = fast_mle(obs, cfg.fastmle)
            elapsed = time.perf_counter() - start
        _record_warnings("fast_mle", caught)
        if "fast_mle" in cfg.methods:
            mse, _ = align_and_mse(warm_source, truth)
            records.append(BenchRecord("fast_mle", sigma, n, trial, mse, elapsed, None))

    for method in ("em_random", "em_warm"):
        if method not in cfg.methods:
            continue
        if method == "em_random":
            em_cfg = replace(
                cfg.em,
                init="random",
                seed=derive_seed(cfg.seed_base, tag, trial, "init"),
                track_likelihood=False,
            )
        else:
            em_cfg = replace(cfg.em, init=warm_source, track_likelihood=False)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            start = time.perf_counter()
            result = em_run(obs, em_cfg)
            elapsed = time.perf_counter() - start
        _record_warnings(method, caught)
        mse, _ = align_and_mse(result.estimate, truth)
        records.append(BenchRecord(method, sigma, n, trial, mse, elapsed, result.iterations))
    return records


def _warmup(cfg: BenchConfig, sigma: float) -> None:
    truth = random_signal(cfg.bandlimit, 0)
    obs = generate_observations(truth, SimConfig(cfg.bandlimit, _WARMUP_ROWS, sigma, 1))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if "fast_mle" in cfg.methods or "em_warm" in cfg.methods:
            warm = fast_mle(obs, cfg.fastmle)
        if "em_random" in cfg.methods:
            em_run(
                obs, replace(cfg.em, init="random", seed=2, max_iters=2, track_likelihood=False)
            )
        if "em_warm" in cfg.methods:
            em_run(obs, replace(cfg.em, init=warm, max_iters=2, track_likelihood=False))


def _sweep_tasks(cfg: BenchConfig, mode: str) -> list[tuple[float, int, object, int]]:
    tasks = []
    if mode == "sigma":
        points = cfg.sigma_sweep
        if not points:
            raise ValueError("sigma_sweep is empty")
        if any(s <= 0 for s in points):
            raise ValueError("all sweep noise levels must be positive")
        for sigma in points:
            for trial in range(cfg.trials):
                tasks.append((float(sigma), cfg.n_fixed, float(sigma), trial))
    else:
        points = cfg.n_sweep
        if not points:
            raise ValueError("n_sweep is empty")
        if any(n < 1 for n in points):
            raise ValueError("all sweep sample sizes must be positive")
        if cfg.sigma_fixed <= 0:
            raise ValueError("sigma_fixed must be positive")
        for n in points:
            for trial in range(cfg.trials):
                tasks.append((cfg.sigma_fixed, int(n), int(n), trial))
    return tasks


def _run_task(args) -> list[BenchRecord]:
    cfg, sigma, n, tag, trial = args
    return _trial_records(cfg, sigma, n, tag, trial)


def _run_sweep(cfg: BenchConfig, mode: str) -> list[BenchRecord]:
    tasks = _sweep_tasks(cfg, mode)
    _warmup(cfg, sigma=tasks[0][0])
    packed = [(cfg, sigma, n, tag, trial) for sigma, n, tag, trial in tasks]
    if cfg.workers > 1 and not cfg.sequential_timing:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_run_task, packed))
    else:
        chunks = [_run_task(item) for item in packed]
    records = [record for chunk in chunks for record in chunk]
    records.sort(key=lambda r: (r.method, r.sigma, r.n, r.trial))
    return records


def run_sigma_sweep(cfg: BenchConfig) -> list[BenchRecord]:
    """One record per (method, noise level, trial) at fixed sample size."""
    return _run_sweep(cfg, "sigma")


def run_n_sweep(cfg: BenchConfig) -> list[BenchRecord]:
    """One record per (method, sample size, trial) at fixed noise level."""
    return _run_sweep(cfg, "n")


def _format_float(value: float) -> str:
    return format(value, ".17g")


def emit_csv(records, path) -> None:
    """Write records sorted by (method, sigma, n, trial); floats carry 17
    significant digits so parsing them back is exact."""
    ordered = sorted(records, key=lambda r: (r.method, r.sigma, r.n, r.trial))
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            for r in ordered:
                writer.writerow(
                    (
                        r.method,
                        _format_float(r.sigma),
                        r.n,
                        r.trial,
                        _format_float(r.mse),
                        _format_float(r.wall_time_seconds),
                        "" if r.em_iters is None else r.em_iters,
                    )
                )
    except OSError as exc:
        raise OSError(f"failed writing benchmark CSV to {path}: {exc}") from exc


def read_records(path) -> list[BenchRecord]:
    """Parse a CSV produced by ``emit_csv`` back into records."""
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = tuple(next(reader, ()))
            if header != CSV_HEADER:
                raise ValueError(f"{path}: unexpected header {header!r}")
            records = []
            for row in reader:
                method, sigma, n, trial, mse, wall, iters = row
                records.append(
                    BenchRecord(
                        method=method,
                        sigma=float(sigma),
                        n=int(n),
                        trial=int(trial),
                        mse=float(mse),
                        wall_time_seconds=float(wall),
                        em_iters=None if iters == "" else int(iters),
                    )
                )
            return records
    except OSError as exc:
        raise OSError(f"failed reading benchmark CSV from {path}: {exc}") from exc
