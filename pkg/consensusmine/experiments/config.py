"""Experiment configuration: what to sweep and how to score it."""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from consensusmine.distributions import DistributionSpec
from consensusmine.errors import ConfigurationError, ConsensusError
from consensusmine.models.stable_id import generate_config_hash
from consensusmine.synthesis import VoterGenSpec
from consensusmine.theory import experiment_baseline

# Fixed sample count of a fraction sweep.
DEFAULT_FRACTION_SAMPLES = 10000

SAMPLE_GRID_POINTS = 20
SAMPLE_GRID_FLOOR = 10


class SweepKind(str, Enum):
    """Which quantity an experiment varies."""

    SAMPLES = "samples"
    FRACTIONS = "fractions"
    BINARY = "binary"

    @property
    def sweep_param(self) -> str:
        """Column value written to sweep_param in result CSVs."""
        return "fraction" if self is SweepKind.FRACTIONS else "m"

    @property
    def strategy(self) -> str:
        return {"samples": "full", "fractions": "fractional", "binary": "binary"}[self.value]


def default_sample_grid(
    n: int,
    epsilon: float,
    delta: float,
    points: int = SAMPLE_GRID_POINTS,
    floor: int = SAMPLE_GRID_FLOOR,
) -> Tuple[int, ...]:
    """
    Log-spaced sample counts from the experiment baseline down to floor.

    Values are rounded to integers and deduplicated, largest first.
    """
    top = experiment_baseline(n, epsilon, delta)
    if top <= floor:
        return (top,)
    grid = np.rint(np.geomspace(top, floor, points)).astype(np.int64)
    return tuple(sorted({int(v) for v in grid}, reverse=True))


@dataclass(frozen=True)
class SweepSpec:
    """
    The swept values of an experiment.

    Attributes:
        kind: samples (m values, full labels), fractions (voter shares at a
            fixed m) or binary (m values, binary-search labels)
        values: Swept values in output order
        m: Sample count used by a fraction sweep (other kinds store the default)
    """

    kind: SweepKind
    values: Tuple[float, ...]
    m: int = DEFAULT_FRACTION_SAMPLES

    def __post_init__(self):
        """Validate swept values against the sweep kind."""
        try:
            object.__setattr__(self, "kind", SweepKind(self.kind))
        except ValueError:
            raise ConfigurationError(f"Unknown sweep kind: {self.kind!r}")
        if not self.values:
            raise ConfigurationError("A sweep needs at least one value")

        try:
            if self.kind is SweepKind.FRACTIONS:
                values = tuple(float(v) for v in self.values)
                m = int(self.m)
            else:
                values = tuple(int(v) for v in self.values)
                raw_values = tuple(float(v) for v in self.values)
                m = DEFAULT_FRACTION_SAMPLES
        except (TypeError, ValueError, OverflowError) as e:
            raise ConfigurationError(f"Non-numeric sweep value in {list(self.values)}: {e}")

        # Only fraction sweeps read m; other kinds always carry the default.
        object.__setattr__(self, "m", m)
        if self.kind is SweepKind.FRACTIONS:
            bad = [v for v in values if not 0.0 < v <= 1.0]
            if bad:
                raise ConfigurationError(f"Fractions must lie in (0, 1], got {bad}")
            if self.m < 1:
                raise ConfigurationError(f"A fraction sweep needs m >= 1, got {self.m}")
        else:
            if any(float(v) != raw for v, raw in zip(values, raw_values)):
                raise ConfigurationError(f"Sample counts must be integers, got {list(self.values)}")
            if any(v < 1 for v in values):
                raise ConfigurationError(f"Sample counts must be >= 1, got {list(values)}")
        object.__setattr__(self, "values", values)

    @property
    def sweep_param(self) -> str:
        return self.kind.sweep_param

    def sample_count(self, index: int) -> int:
        """Number of samples drawn at sweep position index."""
        return self.m if self.kind is SweepKind.FRACTIONS else int(self.values[index])

    def max_samples(self) -> int:
        return self.m if self.kind is SweepKind.FRACTIONS else int(max(self.values))

    def to_dict(self) -> Dict[str, Any]:
        data = {"kind": self.kind.value, "values": list(self.values)}
        if self.kind is SweepKind.FRACTIONS:
            data["m"] = self.m
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SweepSpec":
        try:
            return cls(
                kind=data["kind"],
                values=tuple(data["values"]),
                m=int(data.get("m", DEFAULT_FRACTION_SAMPLES)),
            )
        except ConsensusError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigurationError(f"Malformed sweep: {e}")


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Everything that determines an experiment's output.

    Worker count is not part of the configuration.

    Attributes:
        n: Voters per trial
        trials: Number of seeded trials
        epsilon: Success threshold on the score scale
        delta: Failure probability fed to the sample-count baseline
        voter_spec: Voter width range (its n always equals n)
        distribution: Issue distribution
        sweep: Swept values
        seed: Experiment seed
        score_scale: "normalized" (objective / n) or "raw"
        subset_per_trial: Fractional labeling draws one subset per trial
        preset: Name of the preset this config came from, if any
    """

    n: int = 100
    trials: int = 100
    epsilon: float = 0.01
    delta: float = 0.01
    voter_spec: VoterGenSpec = field(default_factory=VoterGenSpec)
    distribution: DistributionSpec = field(default_factory=DistributionSpec)
    sweep: SweepSpec = field(
        default_factory=lambda: SweepSpec(kind=SweepKind.BINARY, values=(100,))
    )
    seed: int = 0
    score_scale: str = "normalized"
    subset_per_trial: bool = False
    preset: Optional[str] = None

    def __post_init__(self):
        """Validate the configuration."""
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1, got {self.trials}")
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise ConfigurationError(f"epsilon must be > 0, got {self.epsilon}")
        if not 0 < self.delta < 1:
            raise ConfigurationError(f"delta must be in (0, 1), got {self.delta}")
        if self.score_scale not in ("raw", "normalized"):
            raise ConfigurationError(f"score_scale must be raw or normalized, got {self.score_scale!r}")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.voter_spec.n != self.n:
            object.__setattr__(self, "voter_spec", replace(self.voter_spec, n=self.n))

    @property
    def strategy(self) -> str:
        return self.sweep.kind.strategy

    def with_overrides(self, **changes: Any) -> "ExperimentConfig":
        """
        Copy with fields replaced; None values are ignored.

        w_min / w_max are accepted as shortcuts into voter_spec.
        """
        changes = {key: value for key, value in changes.items() if value is not None}
        w_min = changes.pop("w_min", self.voter_spec.w_min)
        w_max = changes.pop("w_max", self.voter_spec.w_max)
        n = changes.get("n", self.n)
        changes["voter_spec"] = VoterGenSpec(n=n, w_min=w_min, w_max=w_max)
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary representation."""
        return {
            "n": self.n,
            "trials": self.trials,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "voter_spec": self.voter_spec.to_dict(),
            "distribution": self.distribution.to_dict(),
            "sweep": self.sweep.to_dict(),
            "seed": self.seed,
            "score_scale": self.score_scale,
            "subset_per_trial": self.subset_per_trial,
            "preset": self.preset,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        """Create an ExperimentConfig from its dictionary form."""
        try:
            return cls(
                n=int(data["n"]),
                trials=int(data["trials"]),
                epsilon=float(data["epsilon"]),
                delta=float(data["delta"]),
                voter_spec=VoterGenSpec.from_dict(data["voter_spec"]),
                distribution=DistributionSpec.from_dict(data.get("distribution")),
                sweep=SweepSpec.from_dict(data["sweep"]),
                seed=int(data.get("seed", 0)),
                score_scale=data.get("score_scale", "normalized"),
                subset_per_trial=bool(data.get("subset_per_trial", False)),
                preset=data.get("preset"),
            )
        except ConsensusError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigurationError(f"Malformed experiment config: {e}")

    @property
    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON form; identifies the experiment."""
        return generate_config_hash(self.to_dict())

    def __repr__(self) -> str:
        return (
            f"ExperimentConfig(preset={self.preset}, n={self.n}, trials={self.trials}, "
            f"sweep={self.sweep.kind.value}:{len(self.sweep.values)} values)"
        )


def sweep_values(values: Sequence[float]) -> Tuple[float, ...]:
    """Deduplicate swept values while keeping their first-seen order."""
    seen = []
    for value in values:
        if value not in seen:
            seen.append(value)
    return tuple(seen)
