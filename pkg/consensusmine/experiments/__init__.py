"""Experiment configuration, presets and the seeded trial harness."""

from .config import ExperimentConfig, SweepSpec, SweepKind, default_sample_grid, sweep_values
from .presets import PRESETS, get_preset, figure2, figure3, figure4
from .harness import (
    TrialResult,
    SweepRow,
    ExperimentResult,
    run_trial,
    run_experiment,
    run_samples_sweep,
    run_fraction_sweep,
    run_binary_search_sweep,
    aggregate,
    success_fraction_at,
    write_csv,
    write_detail_csv,
    detail_path,
    SUMMARY_COLUMNS,
    DETAIL_COLUMNS,
)

__all__ = [
    "ExperimentConfig",
    "SweepSpec",
    "SweepKind",
    "default_sample_grid",
    "sweep_values",
    "PRESETS",
    "get_preset",
    "figure2",
    "figure3",
    "figure4",
    "TrialResult",
    "SweepRow",
    "ExperimentResult",
    "run_trial",
    "run_experiment",
    "run_samples_sweep",
    "run_fraction_sweep",
    "run_binary_search_sweep",
    "aggregate",
    "success_fraction_at",
    "write_csv",
    "write_detail_csv",
    "detail_path",
    "SUMMARY_COLUMNS",
    "DETAIL_COLUMNS",
]
