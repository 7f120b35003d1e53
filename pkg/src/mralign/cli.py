"""Command-line entry point for the benchmark harness.

Usage:
    bench sigma-sweep --config configs/sigma_desk.json [--out results.csv]
    bench n-sweep --config configs/n_desk.json [--trials 50] [--seed 7]

The config file is JSON; see the repository README for the schema.
Command-line flags override the corresponding config entries.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace

from .bench import BenchConfig, emit_csv, run_n_sweep, run_sigma_sweep
from .em import EmConfig
from .fastmle import FastMleConfig


def config_from_dict(raw: dict) -> BenchConfig:
    known = {
        "bandlimit",
        "trials",
        "seed_base",
        "sigma_sweep",
        "n_fixed",
        "n_sweep",
        "sigma_fixed",
        "fastmle",
        "em",
        "methods",
        "output_path",
        "workers",
        "sequential_timing",
    }
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(raw)
    if "fastmle" in kwargs:
        kwargs["fastmle"] = FastMleConfig(**kwargs["fastmle"])
    if "em" in kwargs:
        kwargs["em"] = EmConfig(**kwargs["em"])
    for key in ("sigma_sweep", "n_sweep", "methods"):
        if key in kwargs:
            kwargs[key] = tuple(kwargs[key])
    return BenchConfig(**kwargs)


def load_config(path: str) -> BenchConfig:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise SystemExit(f"cannot read config {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise SystemExit(f"config {path} is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        raise SystemExit(f"config {path} must hold a JSON object")
    try:
        return config_from_dict(raw)
    except (TypeError, ValueError) as exc:
        raise SystemExit(f"config {path}: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench", description="benchmark sweep runner")
    sub = parser.add_subparsers(dest="protocol", required=True)
    for name, help_text in (
        ("sigma-sweep", "sweep the noise level at fixed sample size"),
        ("n-sweep", "sweep the sample size at fixed noise level"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--out", help="CSV output path (overrides config output_path)")
        p.add_argument("--trials", type=int, help="override trial count")
        p.add_argument("--seed", type=int, help="override base seed")
        p.add_argument(
            "--sequential-timing",
            action="store_true",
            help="force sequential execution so timings never contend",
        )
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    cfg = load_config(args.config)
    overrides = {}
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.seed is not None:
        overrides["seed_base"] = args.seed
    if args.out is not None:
        overrides["output_path"] = args.out
    if args.sequential_timing:
        overrides["sequential_timing"] = True
    if overrides:
        try:
            cfg = replace(cfg, **overrides)
        except ValueError as exc:
            raise SystemExit(str(exc))
    if cfg.output_path is None:
        raise SystemExit("no output path: set output_path in the config or pass --out")

    runner = run_sigma_sweep if args.protocol == "sigma-sweep" else run_n_sweep
    try:
        records = runner(cfg)
    except ValueError as exc:
        raise SystemExit(str(exc))
    emit_csv(records, cfg.output_path)
    print(f"wrote {len(records)} records to {cfg.output_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
