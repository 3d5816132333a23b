"""Named experiment configurations for the three reproduction experiments."""

from typing import Any, Callable, Dict

from consensusmine.errors import ConfigurationError
from consensusmine.experiments.config import (
    DEFAULT_FRACTION_SAMPLES,
    ExperimentConfig,
    SweepKind,
    SweepSpec,
    default_sample_grid,
)
from consensusmine.synthesis import VoterGenSpec, WIDTH_PRESETS

FIGURE3_FRACTIONS = (1.0, 0.5, 0.25, 0.1, 0.05)
FIGURE4_SAMPLE_COUNTS = (100, 1000, 10000, 100000)


def _base(preset: str, sweep: SweepSpec, **overrides: Any) -> ExperimentConfig:
    w_min, w_max = WIDTH_PRESETS["figure4"]
    config = ExperimentConfig(
        n=100,
        trials=100,
        epsilon=0.01,
        delta=0.01,
        voter_spec=VoterGenSpec(n=100, w_min=w_min, w_max=w_max),
        sweep=sweep,
        preset=preset,
    )
    return config.with_overrides(**overrides)


def figure2(**overrides: Any) -> ExperimentConfig:
    """
    Success fraction as the number of fully labeled samples shrinks.

    The sweep defaults to the log grid from the experiment baseline down to
    10, computed for the final n, epsilon and delta.
    """
    sweep = overrides.pop("sweep", None)
    config = _base("figure2", SweepSpec(kind=SweepKind.SAMPLES, values=(10,)), **overrides)
    if sweep is None:
        sweep = SweepSpec(
            kind=SweepKind.SAMPLES,
            values=default_sample_grid(config.n, config.epsilon, config.delta),
        )
    return config.with_overrides(sweep=sweep)


def figure3(**overrides: Any) -> ExperimentConfig:
    """Success fraction as fewer voters label each of 10000 samples."""
    sweep = overrides.pop("sweep", None) or SweepSpec(
        kind=SweepKind.FRACTIONS, values=FIGURE3_FRACTIONS, m=DEFAULT_FRACTION_SAMPLES
    )
    return _base("figure3", sweep, **overrides)


def figure4(**overrides: Any) -> ExperimentConfig:
    """Queries per voter for binary-search labeling as m grows."""
    sweep = overrides.pop("sweep", None) or SweepSpec(kind=SweepKind.BINARY, values=FIGURE4_SAMPLE_COUNTS)
    return _base("figure4", sweep, **overrides)


PRESETS: Dict[str, Callable[..., ExperimentConfig]] = {
    "figure2": figure2,
    "figure3": figure3,
    "figure4": figure4,
}


def get_preset(name: str, **overrides: Any) -> ExperimentConfig:
    """
    Build a preset configuration with overrides applied.

    Raises:
        ConfigurationError: For unknown preset names
    """
    try:
        factory = PRESETS[name]
    except KeyError:
        raise ConfigurationError(f"Unknown preset: {name!r} (expected one of {sorted(PRESETS)})")
    return factory(**overrides)
