"""Command line interface: certify, sweep, threshold and dual."""

import argparse
import json
import logging
import os
import sys
from collections.abc import Sequence
from pathlib import Path

from entcert.core.errors import DualViolation, RecordFormatError
from entcert.core.kinds import MeasureKind, default_measure_for, parse_measure
from entcert.dual.audit import verify_dual
from entcert.dual.config import AlternationConfig, BoundConfig
from entcert.dual.constants import AUDIT_SAMPLES, FINAL_RESTARTS, INNER_RESTARTS
from entcert.dual.evaluation import dual_value
from entcert.dual.legendre import BoundResult, BoundStatus, LegendreSolver
from entcert.observables.record import MeasurementRecord
from entcert.scenarios.constants import (
    DEFAULT_TRIALS,
    POSITIVITY_CUTOFF,
    THRESHOLD_TOLERANCE,
)
from entcert.scenarios.presets import Scenario, scenario_from_preset
from entcert.scenarios.thresholds import noise_threshold, sweep
from entcert.scenarios.uncertainty import BoundUncertainty, propagate_uncertainty
from entcert.scenarios.witnesses import wc_threshold, ww_threshold

from .records import load_record

logger = logging.getLogger(__name__)

SEED_VARIABLE = "ENTCERT_SEED"
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2


def default_seed() -> int:
    """Seed from the environment, 0 if unset."""
    raw = os.environ.get(SEED_VARIABLE, "0")
    try:
        return int(raw)
    except ValueError:
        raise RecordFormatError(f"{SEED_VARIABLE}={raw!r} is not an integer.") from None


def resolve_measure(requested: str | None, record: MeasurementRecord) -> MeasureKind:
    """Command-line override, then the record's measure, then the party count."""
    if requested is not None:
        return parse_measure(requested)
    if record.measure is not None:
        return record.measure
    return default_measure_for(record.structure.n_parties)


def entanglement_verdict(
    result: BoundResult, measure: MeasureKind, n_parties: int
) -> str:
    """Human readable verdict on the certified bound."""
    if result.status is BoundStatus.INFEASIBLE_SUSPECTED:
        return "unknown (data inconsistent with any state)"
    if result.bound <= POSITIVITY_CUTOFF:
        return "unknown"
    if measure is MeasureKind.GGM and n_parties > 2:  # noqa: PLR2004 # multipartite
        return "yes (genuine)"
    return "yes"


def format_report(
    result: BoundResult,
    measure: MeasureKind,
    n_parties: int,
    uncertainty: BoundUncertainty | None = None,
    trials: int = 0,
) -> str:
    """Multi-line certification report."""
    slope = ", ".join(f"{r:.6f}" for r in result.slope)
    lines = [
        f"measure: {measure.value}",
        f"bound: {result.bound:.3f}",
        f"entangled: {entanglement_verdict(result, measure, n_parties)}",
        f"slope: [{slope}]",
        f"intercept: {result.intercept:.6f}",
        f"raw value: {result.raw_value:.6e}",
        f"status: {result.status.value}",
        f"positivity cutoff: {POSITIVITY_CUTOFF:g}",
    ]
    if uncertainty is not None:
        lines.append(
            f"uncertainty: {uncertainty.mean:.3f} +- {uncertainty.std:.3f} "
            f"({trials} trials)"
        )
    return "\n".join(lines)


def cmd_certify(args: argparse.Namespace) -> int:
    """Certify entanglement from a record file."""
    record = load_record(args.input)
    measure = resolve_measure(args.measure, record)
    config = BoundConfig(
        final_restarts=args.restarts or FINAL_RESTARTS, seed=args.seed, n_jobs=args.jobs
    )
    solver = LegendreSolver(record.observables, measure, config)
    result = solver.solve(record.values)

    uncertainty = None
    feasible = result.status is not BoundStatus.INFEASIBLE_SUSPECTED
    if record.sigmas is not None and feasible:
        uncertainty = propagate_uncertainty(
            record.observables,
            record.values,
            record.sigmas,
            measure,
            args.trials,
            seed=args.seed,
            config=config,
            n_jobs=args.jobs,
        )
    n_parties = record.structure.n_parties
    print(format_report(result, measure, n_parties, uncertainty, args.trials))

    if args.output is not None:
        payload = {
            "measure": measure.value,
            "bound": result.bound,
            "raw_value": result.raw_value,
            "slope": result.slope.tolist(),
            "intercept": result.intercept,
            "status": result.status.value,
            "iterations": result.iterations,
            "positivity_cutoff": POSITIVITY_CUTOFF,
        }
        if uncertainty is not None:
            payload |= {"mean": uncertainty.mean, "std": uncertainty.std}
        Path(args.output).write_text(json.dumps(payload, indent=2))

    if result.status is BoundStatus.INFEASIBLE_SUSPECTED:
        return EXIT_INFEASIBLE
    return EXIT_OK


def _scenario(args: argparse.Namespace) -> Scenario:
    return scenario_from_preset(args.preset, d=args.d, n=args.n, ops=args.ops)


def cmd_sweep(args: argparse.Namespace) -> int:
    """Sweep a preset over a noise grid and write the CSV."""
    scenario = _scenario(args)
    config = BoundConfig(seed=args.seed)
    result = sweep(
        scenario, args.p_min, args.p_max, args.step, config=config, n_jobs=args.jobs
    )
    result.save(args.output)
    print(
        f"preset={scenario.label} rows={len(result.rows)} "
        f"threshold={result.threshold:.4f}"
    )
    return EXIT_OK


def witness_threshold(scenario: Scenario) -> float | None:
    """Closed-form fidelity-witness tolerance of the preset, if any."""
    if scenario.name == "cluster_linear":
        return wc_threshold(scenario.n)  # type: ignore[arg-type]
    if scenario.name == "w3":
        return ww_threshold()
    return None


def cmd_threshold(args: argparse.Namespace) -> int:
    """Print the noise threshold of a preset."""
    scenario = _scenario(args)
    threshold = noise_threshold(scenario, args.tol, config=BoundConfig(seed=args.seed))
    witness = witness_threshold(scenario)
    witness_text = "n/a" if witness is None else f"{witness:.4f}"
    print(
        f"preset={scenario.label} threshold={threshold:.4f} "
        f"witness_threshold={witness_text}"
    )
    return EXIT_OK


def cmd_dual(args: argparse.Namespace) -> int:
    """Evaluate the dual function of a single observable and audit it."""
    record = load_record(args.input)
    if len(record) != 1:
        raise RecordFormatError(
            f"The dual command takes exactly one observable, got {len(record)}."
        )
    obs = record.observables[0]
    measure = resolve_measure(args.measure, record)
    config = AlternationConfig(
        restarts=args.restarts or INNER_RESTARTS, seed=args.seed, n_jobs=args.jobs
    )
    evaluation = dual_value(obs, measure, config=config)
    expectations = ", ".join(f"{m:.6f}" for m in evaluation.witness_expectations)
    print(f"measure: {measure.value}")
    print(f"dual value: {evaluation.value:.6f}")
    print(f"maximizer expectations: [{expectations}]")
    print(f"maximizer entanglement: {evaluation.entanglement:.6f}")
    print(f"converged: {'yes' if evaluation.converged else 'no'}")
    try:
        audit = verify_dual(
            obs, measure, evaluation, args.samples, seed=args.seed, n_jobs=args.jobs
        )
    except DualViolation as err:
        print(f"audit: FAILED ({err})")
        return EXIT_USAGE
    print(audit.summary())
    return EXIT_OK


class UsageErrorParser(argparse.ArgumentParser):
    """Parser that reports usage errors with exit code 1."""

    def error(self, message: str):  # type: ignore[override]
        """Print usage and exit with the usage error code."""
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"error: {message}\n")


def _add_preset_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", required=True, choices=["bell", "cluster", "w3"])
    parser.add_argument("--d", type=int, default=3, help="local dimension (bell)")
    parser.add_argument("--n", type=int, default=4, help="number of qubits (cluster)")
    parser.add_argument("--ops", type=int, default=3, choices=[3, 4], help="bell set")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the four subcommands."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = UsageErrorParser(
        prog="entcert",
        description="Certify entanglement from measured expectation values.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    certify = commands.add_parser("certify", parents=[common], help="bound a record")
    certify.add_argument("-i", "--input", required=True, type=Path)
    certify.add_argument("--measure", choices=[m.value for m in MeasureKind])
    certify.add_argument("--restarts", type=int, default=None)
    certify.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    certify.add_argument("-o", "--output", type=Path, default=None)
    certify.set_defaults(handler=cmd_certify)

    sweep_parser = commands.add_parser("sweep", parents=[common], help="noise sweep")
    _add_preset_arguments(sweep_parser)
    sweep_parser.add_argument("--p-min", type=float, required=True)
    sweep_parser.add_argument("--p-max", type=float, required=True)
    sweep_parser.add_argument("--step", type=float, required=True)
    sweep_parser.add_argument("-o", "--output", type=Path, required=True)
    sweep_parser.set_defaults(handler=cmd_sweep)

    threshold = commands.add_parser(
        "threshold", parents=[common], help="noise threshold of a preset"
    )
    _add_preset_arguments(threshold)
    threshold.add_argument("--tol", type=float, default=THRESHOLD_TOLERANCE)
    threshold.set_defaults(handler=cmd_threshold)

    dual = commands.add_parser("dual", parents=[common], help="dual of one observable")
    dual.add_argument("-i", "--input", required=True, type=Path)
    dual.add_argument("--measure", choices=[m.value for m in MeasureKind])
    dual.add_argument("--restarts", type=int, default=None)
    dual.add_argument("--samples", type=int, default=AUDIT_SAMPLES)
    dual.set_defaults(handler=cmd_dual)
    return parser


def configure_logging(verbosity: int) -> None:
    """WARNING by default, INFO with -v, DEBUG with -vv."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the ``entcert`` command."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        if args.seed is None:
            args.seed = default_seed()
        return int(args.handler(args))
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
