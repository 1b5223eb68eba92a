"""Command-line front end.

Usage:
    swaplab run <config.json> [--tol X] [--seed N] [--out DIR]
    swaplab certify lemma1|lemma2 <config.json> [--tol X] [--seed N] [--out DIR]
    swaplab export-distribution <config.json> --time T [--world plus|minus|superposition]
                                [--tol X] [--seed N] [--out DIR]

Exit status: 0 when every certificate in the run passes, 2 on config errors,
3 on certification failure, 4 on numerical failure. Reports are deterministic:
identical configs produce byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, parse_config, to_scenario_config
from .linalg import ComplexVector, NumericalError
from .measurement import evolve, ready_state, system_basis_state
from .reporting import emit_distribution_csv, emit_report
from .scenario import (
    build_diagonal_model,
    qubit_setup,
    run_classical_level,
    run_multiworld,
    run_prince_pauper,
)
from .symmetry import SwapTolerances, certify_lemma1, certify_lemma2

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CERTIFICATION = 3
EXIT_NUMERICAL = 4


def _add_common_flags(parser):
    parser.add_argument("--tol", type=float, default=None, help="override the config tolerance")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument("--out", default=None, help="directory to write the output file into")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swaplab",
        description="pointer-measurement simulation and outcome-swap certification",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser("run", help="run the scenario named in the config")
    run_parser.add_argument("config_path")
    _add_common_flags(run_parser)

    certify_parser = commands.add_parser("certify", help="certify one swap family directly")
    certify_parser.add_argument("target", choices=["lemma1", "lemma2"])
    certify_parser.add_argument("config_path")
    _add_common_flags(certify_parser)

    export_parser = commands.add_parser(
        "export-distribution", help="CSV of the pointer/branch distribution at a given time"
    )
    export_parser.add_argument("config_path")
    export_parser.add_argument("--time", type=float, required=True)
    export_parser.add_argument(
        "--world", choices=["plus", "minus", "superposition"], default="superposition"
    )
    _add_common_flags(export_parser)
    return parser


def _load_config(args) -> RunConfig:
    text = Path(args.config_path).read_text(encoding="utf-8")
    config = parse_config(text)
    overrides = {}
    if args.tol is not None:
        overrides["tol"] = args.tol
    if args.seed is not None:
        overrides["seed"] = args.seed
    if getattr(args, "target", None) is not None:
        overrides["scenario"] = f"certify-{args.target}"
    if overrides:
        config = replace(config, **overrides)
    return config


def _dispatch_run(config: RunConfig):
    scenario_config = to_scenario_config(config)
    kind = config.scenario
    if kind == "prince-pauper":
        return run_prince_pauper(scenario_config)
    if kind == "multiworld":
        return run_multiworld(scenario_config)
    if kind == "classical-level":
        return run_classical_level(scenario_config)
    tolerances = SwapTolerances.uniform(scenario_config.tolerance)
    if kind == "certify-lemma1":
        return certify_lemma1(qubit_setup(scenario_config), tolerances=tolerances)
    model = build_diagonal_model(scenario_config)
    return certify_lemma2(
        model,
        scenario_config.eigenvalue_from,
        scenario_config.eigenvalue_to,
        tolerances=tolerances,
        sample_times=scenario_config.sample_times,
    )


def _export_distribution(config: RunConfig, time: float, world: str) -> str:
    if not 0 <= time <= config.T:
        raise ConfigError(f"--time must lie in [0, {config.T}], got {time}")
    setup = qubit_setup(to_scenario_config(config))
    if world == "plus":
        system = system_basis_state(setup.observable, 0)
    elif world == "minus":
        system = system_basis_state(setup.observable, 1)
    else:
        system = ComplexVector(np.array([1.0, 1.0]) / np.sqrt(2))
    state = evolve(setup, ready_state(setup, system), time)
    return emit_distribution_csv(state, setup)


def _write_output(out_dir: str, filename: str, text: str) -> None:
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / filename).write_text(text, encoding="utf-8")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _load_config(args)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if args.command == "export-distribution":
            text = _export_distribution(config, args.time, args.world)
            filename = "distribution.csv"
            passed = True
        else:
            report = _dispatch_run(config)
            text = emit_report(report, config)
            filename = "report.json"
            passed = report.passed
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, np.linalg.LinAlgError, ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    if args.out is not None:
        _write_output(args.out, filename, text)
    print(text, end="")
    return EXIT_OK if passed else EXIT_CERTIFICATION


if __name__ == "__main__":
    raise SystemExit(main())
