"""Seeded trial runner for the sample-count, voter-fraction and binary-search experiments."""

import csv
import logging
import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Union

from tqdm import tqdm

from consensusmine.errors import ConfigurationError
from consensusmine.experiments.config import ExperimentConfig, SweepKind
from consensusmine.models import (
    ConsensusInterval,
    STREAM_SAMPLES,
    query_stream,
    stream_generator,
)
from consensusmine.pipeline import ConsensusPipeline
from consensusmine.query import (
    BinarySearchLabeling,
    FractionalLabeling,
    FullLabeling,
    LabelingStrategy,
)
from consensusmine.synthesis import generate_scenario
from consensusmine.theory import BoundInputs, sample_complexity

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = [
    "sweep_param",
    "value",
    "trials",
    "success_fraction",
    "mean_phi_gap",
    "mean_queries_per_voter",
    "mean_total_queries",
]

DETAIL_COLUMNS = [
    "trial_id",
    "sweep_index",
    "sweep_param",
    "value",
    "strategy",
    "m",
    "interval_lo",
    "interval_hi",
    "sample_index_lo",
    "sample_index_hi",
    "empirical_score",
    "phi_hat",
    "phi_opt",
    "phi_gap",
    "success",
    "total_queries",
    "mean_queries_per_voter",
    "max_queries_per_voter",
    "bound_ratio",
]


def scaled_gap(phi_hat: float, phi_opt: float, n: int, score_scale: str) -> float:
    """Phi* - Phi(I_hat) on the requested score scale."""
    gap = phi_opt - phi_hat
    return gap / n if score_scale == "normalized" else gap


@dataclass(frozen=True)
class TrialResult:
    """
    One trial evaluated at one sweep value.

    phi_hat and phi_opt are raw objective values; success was decided on
    the experiment's score scale.
    """

    trial_id: int
    sweep_index: int
    sweep_value: float
    strategy: str
    m: int
    interval: ConsensusInterval
    phi_hat: float
    phi_opt: float
    phi_gap: float
    success: bool
    queries: Dict[str, Any]

    def to_dict(self, sweep_param: str = "m", bound_ratio: Optional[float] = None) -> Dict[str, Any]:
        """Convert to a detail CSV row."""
        return {
            "trial_id": self.trial_id,
            "sweep_index": self.sweep_index,
            "sweep_param": sweep_param,
            "value": self.sweep_value,
            "strategy": self.strategy,
            "m": self.m,
            "interval_lo": self.interval.lo,
            "interval_hi": self.interval.hi,
            "sample_index_lo": self.interval.sample_index_lo,
            "sample_index_hi": self.interval.sample_index_hi,
            "empirical_score": self.interval.empirical_score,
            "phi_hat": self.phi_hat,
            "phi_opt": self.phi_opt,
            "phi_gap": self.phi_gap,
            "success": int(self.success),
            "total_queries": self.queries["total"],
            "mean_queries_per_voter": self.queries["mean_per_voter"],
            "max_queries_per_voter": self.queries["max_per_voter"],
            "bound_ratio": "" if bound_ratio is None else bound_ratio,
        }


@dataclass(frozen=True)
class SweepRow:
    """Aggregate over all trials at one sweep value."""

    sweep_index: int
    sweep_param: str
    value: float
    trials: int
    success_fraction: float
    mean_phi_gap: float
    mean_queries_per_voter: float
    mean_total_queries: float

    def to_dict(self) -> Dict[str, Any]:
        return {column: getattr(self, column) for column in SUMMARY_COLUMNS}


@dataclass(frozen=True)
class ExperimentResult:
    """Config, per-trial results sorted by (sweep_index, trial_id), and summary rows."""

    config: ExperimentConfig
    trials: List[TrialResult]
    rows: List[SweepRow]

    def row_for(self, value: float) -> SweepRow:
        """Summary row of one swept value."""
        for row in self.rows:
            if row.value == value:
                return row
        raise KeyError(f"No sweep row for value {value}")


# ============================================================================
# Trials
# ============================================================================


def _strategy_for(config: ExperimentConfig, sweep_index: int) -> LabelingStrategy:
    kind = config.sweep.kind
    if kind is SweepKind.SAMPLES:
        return FullLabeling()
    if kind is SweepKind.FRACTIONS:
        return FractionalLabeling(
            config.sweep.values[sweep_index], subset_per_trial=config.subset_per_trial
        )
    return BinarySearchLabeling()


def run_trial(config: ExperimentConfig, trial_id: int) -> List[TrialResult]:
    """
    Run one trial at every swept value.

    Voters come from the (seed, trial_id) voter stream and samples from the
    sample stream, so each swept value sees the same voters and a prefix of
    the same sample draw. Strategy randomness uses a stream per sweep index.

    Args:
        config: Experiment configuration
        trial_id: Trial index in [0, trials)

    Returns:
        One TrialResult per sweep value, in sweep order
    """
    scenario = generate_scenario(config.voter_spec, config.distribution, config.seed, trial_id)
    pipeline = ConsensusPipeline(scenario, score_scale="raw")
    samples = pipeline.draw_samples(
        config.sweep.max_samples(), stream_generator(config.seed, trial_id, STREAM_SAMPLES)
    )

    results = []
    for sweep_index, value in enumerate(config.sweep.values):
        m = config.sweep.sample_count(sweep_index)
        report = pipeline.find_consensus(
            samples[:m],
            _strategy_for(config, sweep_index),
            rng=query_stream(config.seed, trial_id, sweep_index),
        )
        gap = scaled_gap(report.phi_hat, report.phi_opt, config.n, config.score_scale)
        results.append(
            TrialResult(
                trial_id=trial_id,
                sweep_index=sweep_index,
                sweep_value=value,
                strategy=report.strategy,
                m=report.m,
                interval=report.interval,
                phi_hat=report.phi_hat,
                phi_opt=report.phi_opt,
                phi_gap=gap,
                success=gap <= config.epsilon,
                queries=report.ledger.summary(),
            )
        )
    return results


def _collect(config: ExperimentConfig, workers: int, progress: bool) -> List[TrialResult]:
    results: List[TrialResult] = []
    with tqdm(total=config.trials, desc=config.preset or "trials", disable=not progress) as bar:
        if workers <= 1:
            for trial_id in range(config.trials):
                results.extend(run_trial(config, trial_id))
                bar.update(1)
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = {
                    executor.submit(run_trial, config, trial_id): trial_id
                    for trial_id in range(config.trials)
                }
                for future in as_completed(futures):
                    results.extend(future.result())
                    bar.update(1)
    return sorted(results, key=lambda r: (r.sweep_index, r.trial_id))


# ============================================================================
# Aggregation
# ============================================================================


def aggregate(config: ExperimentConfig, results: Sequence[TrialResult]) -> List[SweepRow]:
    """
    Summarize results per sweep value.

    Means use math.fsum over results in (sweep_index, trial_id) order.
    """
    rows = []
    for sweep_index, value in enumerate(config.sweep.values):
        group = sorted(
            (r for r in results if r.sweep_index == sweep_index), key=lambda r: r.trial_id
        )
        if not group:
            raise ConfigurationError(f"No results for sweep value {value}")
        count = len(group)
        rows.append(
            SweepRow(
                sweep_index=sweep_index,
                sweep_param=config.sweep.sweep_param,
                value=value,
                trials=count,
                success_fraction=sum(1 for r in group if r.success) / count,
                mean_phi_gap=math.fsum(r.phi_gap for r in group) / count,
                mean_queries_per_voter=math.fsum(r.queries["mean_per_voter"] for r in group) / count,
                mean_total_queries=math.fsum(r.queries["total"] for r in group) / count,
            )
        )
    return rows


def success_fraction_at(
    results: Sequence[TrialResult],
    epsilon: float,
    score_scale: str,
    n: int,
) -> Dict[int, float]:
    """
    Re-evaluate success fractions from stored objective values.

    Args:
        results: Trial results of one experiment
        epsilon: Success threshold on score_scale
        score_scale: "raw" or "normalized"
        n: Voters per trial

    Returns:
        Mapping sweep_index -> success fraction
    """
    successes: Dict[int, int] = {}
    totals: Dict[int, int] = {}
    for r in results:
        gap = scaled_gap(r.phi_hat, r.phi_opt, n, score_scale)
        totals[r.sweep_index] = totals.get(r.sweep_index, 0) + 1
        successes[r.sweep_index] = successes.get(r.sweep_index, 0) + int(gap <= epsilon)
    return {index: successes[index] / totals[index] for index in sorted(totals)}


# ============================================================================
# Experiments
# ============================================================================


def run_experiment(
    config: ExperimentConfig,
    workers: int = 1,
    progress: bool = True,
    store: Optional[Any] = None,
) -> ExperimentResult:
    """
    Run every trial of an experiment and aggregate the results.

    Args:
        config: Experiment configuration
        workers: Process count (1 runs in-process); output does not depend on it
        progress: Show a tqdm bar on stderr
        store: Optional ExperimentStore to persist the run into

    Returns:
        ExperimentResult
    """
    if workers < 1:
        raise ConfigurationError(f"workers must be >= 1, got {workers}")

    logger.info(
        f"Running {config.trials} trials over {len(config.sweep.values)} "
        f"{config.sweep.sweep_param} values ({config.strategy} labeling, workers={workers})"
    )
    try:
        trials = _collect(config, workers, progress)
    except Exception as e:
        logger.error(f"Experiment {config.preset or config.config_hash[:12]} failed: {e}")
        raise

    result = ExperimentResult(config=config, trials=trials, rows=aggregate(config, trials))
    for row in result.rows:
        logger.info(
            f"{row.sweep_param}={row.value}: success {row.success_fraction:.2f}, "
            f"{row.mean_queries_per_voter:.1f} queries/voter"
        )

    if store is not None:
        experiment_id = store.record_experiment(config)
        store.record_trials(experiment_id, config, trials)
        store.record_summary(experiment_id, result.rows)
    return result


def _run_sweep(config: ExperimentConfig, kind: SweepKind, **kwargs: Any) -> List[SweepRow]:
    if config.sweep.kind is not kind:
        raise ConfigurationError(f"Expected a {kind.value} sweep, got {config.sweep.kind.value}")
    return run_experiment(config, **kwargs).rows


def run_samples_sweep(config: ExperimentConfig, **kwargs: Any) -> List[SweepRow]:
    """Success fraction per sample count with full labels."""
    return _run_sweep(config, SweepKind.SAMPLES, **kwargs)


def run_fraction_sweep(config: ExperimentConfig, **kwargs: Any) -> List[SweepRow]:
    """Success fraction per voter fraction at a fixed sample count."""
    return _run_sweep(config, SweepKind.FRACTIONS, **kwargs)


def run_binary_search_sweep(config: ExperimentConfig, **kwargs: Any) -> List[SweepRow]:
    """Queries per voter and success fraction per sample count with binary-search labels."""
    return _run_sweep(config, SweepKind.BINARY, **kwargs)


# ============================================================================
# Output
# ============================================================================


def write_csv(rows: Sequence[SweepRow], target: Union[str, Path, TextIO]) -> None:
    """Write summary rows with the SUMMARY_COLUMNS header to a path or an open text stream."""
    if hasattr(target, "write"):
        _write_rows(target, rows)
        return
    with open(target, "w", newline="") as f:
        _write_rows(f, rows)


def _write_rows(stream: TextIO, rows: Sequence[SweepRow]) -> None:
    writer = csv.DictWriter(stream, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.to_dict())


def write_detail_csv(result: ExperimentResult, path: Union[str, Path]) -> None:
    """
    Write one row per (trial, sweep value).

    For sample-count sweeps bound_ratio is m divided by the sample
    complexity at the experiment's n, epsilon and delta.
    """
    config = result.config
    bound = None
    if config.sweep.kind is SweepKind.SAMPLES:
        bound = sample_complexity(BoundInputs(n=config.n, epsilon=config.epsilon, delta=config.delta))

    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=DETAIL_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for trial in result.trials:
            ratio = trial.m / bound if bound else None
            writer.writerow(trial.to_dict(config.sweep.sweep_param, ratio))


def detail_path(out: Union[str, Path]) -> Path:
    """<out>.detail.csv next to the summary file."""
    out = Path(out)
    return out.with_name(out.name + ".detail.csv")
