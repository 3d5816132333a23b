"""
Command-line interface.

Subcommands print machine-readable output only (JSON for single results,
CSV for sweeps); progress and logs go to stderr.

Exit codes: 0 success, 2 usage or input error, 3 internal invariant violation.
"""

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from consensusmine import __version__
from consensusmine.distributions import DistributionKind, DistributionSpec
from consensusmine.errors import ConfigurationError, ConsensusError, InvariantViolation
from consensusmine.experiments import (
    ExperimentConfig,
    SweepKind,
    SweepSpec,
    default_sample_grid,
    detail_path,
    get_preset,
    PRESETS,
    run_experiment,
    sweep_values,
    write_csv,
    write_detail_csv,
)
from consensusmine.experiments.config import DEFAULT_FRACTION_SAMPLES
from consensusmine.experiments.presets import FIGURE3_FRACTIONS, FIGURE4_SAMPLE_COUNTS
from consensusmine.models import STREAM_SAMPLES, load_scenario, query_stream, save_scenario, stream_generator
from consensusmine.pipeline import ConsensusPipeline
from consensusmine.query import STRATEGY_NAMES, build_strategy
from consensusmine.storage import ExperimentStore
from consensusmine.synthesis import VoterGenSpec, generate_scenario
from consensusmine.theory import (
    BoundInputs,
    audit_random_shattering,
    bound_terms,
    epsilon_for_samples,
    experiment_baseline,
    sample_complexity,
)

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INVARIANT = 3

STRATEGY_SWEEPS = {
    "full": SweepKind.SAMPLES,
    "fractional": SweepKind.FRACTIONS,
    "binary": SweepKind.BINARY,
}


def _count(text: str) -> int:
    """Parse a sample count, accepting forms like 1e5."""
    try:
        value = float(text)
        count = int(value)
    except (ValueError, OverflowError):
        raise argparse.ArgumentTypeError(f"not a sample count: {text!r}")
    if value != count:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return count


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _emit_json(data: Dict[str, Any], out: Optional[str]) -> None:
    _emit(json.dumps(data, indent=2) + "\n", out)


def _distribution(args: argparse.Namespace, base: DistributionSpec) -> DistributionSpec:
    """Apply --dist/--mu/--sigma/--lambda on top of base."""
    changes: Dict[str, Any] = {}
    if args.dist is not None:
        changes["kind"] = DistributionKind(args.dist)
    if args.mu is not None:
        changes["mu"] = args.mu
    if args.sigma is not None:
        changes["sigma"] = args.sigma
    if args.lam is not None:
        changes["lam"] = args.lam
    return replace(base, **changes) if changes else base


def _load_samples(path: str) -> List[float]:
    """Samples file: a JSON list of floats or {"samples": [...]}."""
    source = Path(path)
    if not source.exists():
        raise FileNotFoundError(f"Samples file not found: {path}")
    try:
        data = json.loads(source.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Malformed samples JSON in {path}: {e}")
    if isinstance(data, dict):
        data = data.get("samples")
    if not isinstance(data, list):
        raise ConfigurationError(f"{path} must hold a JSON list of sample positions")
    try:
        return [float(x) for x in data]
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"Non-numeric sample in {path}: {e}")


# ============================================================================
# Subcommands
# ============================================================================


def cmd_erm(args: argparse.Namespace) -> int:
    """Find the ERM interval of a scenario and evaluate it exactly."""
    scenario = load_scenario(args.scenario)
    scenario = replace(scenario, distribution=_distribution(args, scenario.distribution))
    seed = scenario.seed if args.seed is None else args.seed

    pipeline = ConsensusPipeline(scenario, score_scale=args.score_scale or "normalized")
    if args.samples:
        samples = _load_samples(args.samples)
    elif args.sample_count is not None:
        samples = pipeline.draw_samples(args.sample_count, stream_generator(seed, 0, STREAM_SAMPLES))
    else:
        raise ConfigurationError("erm needs --samples PATH or --sample-count m")

    fraction = args.fraction[0] if args.fraction else None
    strategy = build_strategy(args.strategy or "full", fraction=fraction, subset_per_trial=args.subset_per_trial)
    report = pipeline.find_consensus(samples, strategy, rng=query_stream(seed, 0, 0), epsilon=args.epsilon)
    _emit_json(report.to_dict(), args.out)
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    """Generate a synthetic scenario."""
    gen_spec = VoterGenSpec(
        n=args.n if args.n is not None else 100,
        w_min=args.wmin if args.wmin is not None else 0.4,
        w_max=args.wmax if args.wmax is not None else 0.6,
    )
    scenario = generate_scenario(gen_spec, _distribution(args, DistributionSpec()), args.seed or 0)
    if args.out:
        save_scenario(scenario, args.out)
        logger.info(f"Wrote {scenario} to {args.out}")
    else:
        _emit_json(scenario.to_dict(), None)
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    """Print the sample-complexity bound and the experiment baseline."""
    inputs = BoundInputs(
        n=args.n if args.n is not None else 100,
        epsilon=args.epsilon if args.epsilon is not None else 0.01,
        delta=args.delta if args.delta is not None else 0.01,
        d_pd=args.d_pd,
    )
    data: Dict[str, Any] = {
        "inputs": inputs.to_dict(),
        "m_theorem": sample_complexity(inputs),
        "m_baseline": experiment_baseline(inputs.n, inputs.epsilon, inputs.delta),
        "terms": bound_terms(inputs),
    }
    if args.m:
        data["epsilon_for_m"] = {
            str(m): epsilon_for_samples(inputs.n, m, inputs.delta, inputs.d_pd) for m in args.m
        }
    _emit_json(data, args.out)
    return EXIT_OK


def cmd_shatter(args: argparse.Namespace) -> int:
    """Audit pseudo-shattering over random scenarios."""
    audit = audit_random_shattering(
        np.random.default_rng(args.seed or 0),
        points=args.points,
        trials=args.random_trials,
        n=args.n if args.n is not None else 100,
        w_min=args.wmin if args.wmin is not None else 0.4,
        w_max=args.wmax if args.wmax is not None else 0.6,
        random_thresholds=args.random_thresholds,
    )
    data = audit.to_dict()
    data["thresholds"] = "random" if args.random_thresholds else "canonical"
    _emit_json(data, args.out)
    return EXIT_OK


def build_experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    """
    Resolve preset, flag overrides and sweep values into one config.

    Raises:
        ConfigurationError: For missing or conflicting sweep flags
    """
    if args.preset is None and args.strategy is None:
        raise ConfigurationError("experiment needs --preset or --strategy")

    overrides = {
        "n": args.n,
        "trials": args.trials,
        "epsilon": args.epsilon,
        "delta": args.delta,
        "w_min": args.wmin,
        "w_max": args.wmax,
        "seed": args.seed,
        "score_scale": args.score_scale,
        "subset_per_trial": args.subset_per_trial or None,
    }
    if args.preset:
        base = get_preset(args.preset, **overrides)
    else:
        base = ExperimentConfig().with_overrides(**overrides)
    base = base.with_overrides(distribution=_distribution(args, base.distribution))

    kind = STRATEGY_SWEEPS[args.strategy] if args.strategy else base.sweep.kind
    preset_sweep = base.sweep if args.preset else None

    if kind is SweepKind.FRACTIONS:
        if args.m and len(args.m) > 1:
            raise ConfigurationError("A fraction sweep takes a single --m")
        values = sweep_values(args.fraction) if args.fraction else (
            preset_sweep.values if preset_sweep and preset_sweep.kind is kind else FIGURE3_FRACTIONS
        )
        m = args.m[0] if args.m else (
            preset_sweep.m if preset_sweep and preset_sweep.kind is kind else DEFAULT_FRACTION_SAMPLES
        )
        sweep = SweepSpec(kind=kind, values=values, m=m)
    else:
        if args.fraction:
            raise ConfigurationError("--fraction applies to fractional sweeps only")
        if args.m:
            values = sweep_values(args.m)
        elif preset_sweep and preset_sweep.kind is not SweepKind.FRACTIONS:
            values = preset_sweep.values
        elif kind is SweepKind.SAMPLES:
            values = default_sample_grid(base.n, base.epsilon, base.delta)
        else:
            values = FIGURE4_SAMPLE_COUNTS
        sweep = SweepSpec(kind=kind, values=values)

    return base.with_overrides(sweep=sweep)


def cmd_experiment(args: argparse.Namespace) -> int:
    """Run a seeded sweep and write its summary CSV."""
    if args.detail and not args.out:
        raise ConfigurationError("--detail requires --out")

    config = build_experiment_config(args)
    store = ExperimentStore(db_path=args.db) if args.db else None
    try:
        result = run_experiment(config, workers=args.workers, progress=not args.quiet, store=store)
    finally:
        if store is not None:
            store.close()

    if args.out:
        write_csv(result.rows, args.out)
        logger.info(f"Wrote {len(result.rows)} rows to {args.out}")
        if args.detail:
            write_detail_csv(result, detail_path(args.out))
    else:
        write_csv(result.rows, sys.stdout)
    return EXIT_OK


# ============================================================================
# Parser
# ============================================================================


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with all subcommands."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Seed (unsigned 64-bit)")
    common.add_argument("--out", default=None, help="Output path (default: stdout)")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--quiet", action="store_true", help="Only log warnings and errors")
    verbosity.add_argument("--verbose", action="store_true", help="Log debug messages")

    population = argparse.ArgumentParser(add_help=False)
    population.add_argument("--n", type=int, default=None, help="Number of voters (default: 100)")
    population.add_argument("--wmin", type=float, default=None, help="Minimum voter width (default: 0.4)")
    population.add_argument("--wmax", type=float, default=None, help="Maximum voter width (default: 0.6)")

    distribution = argparse.ArgumentParser(add_help=False)
    distribution.add_argument("--dist", choices=[k.value for k in DistributionKind], default=None)
    distribution.add_argument("--mu", type=float, default=None, help="Truncated normal mean")
    distribution.add_argument("--sigma", type=float, default=None, help="Truncated normal std")
    distribution.add_argument("--lambda", dest="lam", type=float, default=None, help="Truncated exponential rate")

    scoring = argparse.ArgumentParser(add_help=False)
    scoring.add_argument("--strategy", choices=STRATEGY_NAMES, default=None)
    scoring.add_argument("--fraction", type=float, action="append", default=None,
                         help="Voter fraction for fractional labeling (repeatable in experiments)")
    scoring.add_argument("--subset-per-trial", action="store_true",
                         help="Fractional labeling draws one voter subset for all points")
    scoring.add_argument("--score-scale", choices=["raw", "normalized"], default=None)
    scoring.add_argument("--epsilon", type=float, default=None)

    parser = argparse.ArgumentParser(
        prog="consensusmine",
        description="Consensus intervals for voters with interval approval preferences.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  consensusmine synth --n 100 --seed 7 --out scenario.json
  consensusmine erm scenario.json --sample-count 10000
  consensusmine bound --n 100 --epsilon 0.01 --delta 0.01
  consensusmine shatter --points 3 --random-trials 1000
  consensusmine experiment --preset figure4 --m 100000 --out figure4.csv
""",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    erm = sub.add_parser("erm", parents=[common, distribution, scoring], help="ERM interval of a scenario")
    erm.add_argument("scenario", help="Scenario JSON file")
    erm.add_argument("--samples", default=None, help="JSON list of sample positions")
    erm.add_argument("--sample-count", type=_count, default=None, help="Draw m samples from the scenario")
    erm.set_defaults(func=cmd_erm)

    synth = sub.add_parser("synth", parents=[common, population, distribution], help="Generate a scenario")
    synth.set_defaults(func=cmd_synth)

    bound = sub.add_parser("bound", parents=[common], help="Sample-complexity bound")
    bound.add_argument("--n", type=int, default=None, help="Number of voters (default: 100)")
    bound.add_argument("--epsilon", type=float, default=None, help="Accuracy (default: 0.01)")
    bound.add_argument("--delta", type=float, default=None, help="Failure probability (default: 0.01)")
    bound.add_argument("--d-pd", type=int, default=2, help="Pseudo-dimension (default: 2)")
    bound.add_argument("--m", type=_count, action="append", default=None,
                       help="Report the epsilon reachable with m samples (repeatable)")
    bound.set_defaults(func=cmd_bound)

    shatter = sub.add_parser("shatter", parents=[common, population], help="Pseudo-shattering audit")
    shatter.add_argument("--points", type=int, default=3, help="Points per instance, 1 to 3 (default: 3)")
    shatter.add_argument("--random-trials", type=int, default=1000, help="Random instances (default: 1000)")
    shatter.add_argument("--random-thresholds", action="store_true",
                         help="Draw thresholds uniformly instead of using l(x)/2")
    shatter.set_defaults(func=cmd_shatter)

    experiment = sub.add_parser(
        "experiment", parents=[common, population, distribution, scoring], help="Run a seeded sweep"
    )
    experiment.add_argument("--preset", choices=sorted(PRESETS), default=None)
    experiment.add_argument("--trials", type=int, default=None, help="Number of trials (default: 100)")
    experiment.add_argument("--delta", type=float, default=None)
    experiment.add_argument("--m", type=_count, action="append", default=None,
                            help="Sample count (repeatable for sample sweeps)")
    experiment.add_argument("--detail", action="store_true", help="Also write <out>.detail.csv")
    experiment.add_argument("--workers", type=int, default=1, help="Worker processes (default: 1)")
    experiment.add_argument("--db", default=None, help="DuckDB file to persist results into")
    experiment.set_defaults(func=cmd_experiment)

    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    if getattr(args, "quiet", False):
        logging.getLogger().setLevel(logging.WARNING)
    elif getattr(args, "verbose", False):
        logging.getLogger().setLevel(logging.DEBUG)
    else:
        logging.getLogger().setLevel(logging.INFO)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    _configure_logging(args)
    try:
        return args.func(args)
    except InvariantViolation as e:
        logger.error(f"Internal invariant violated: {e}")
        return EXIT_INVARIANT
    except (ConsensusError, FileNotFoundError) as e:
        logger.error(str(e))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
