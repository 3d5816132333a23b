"""Scenario and LabeledSample models."""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Any, List, Sequence, Tuple, Union

from consensusmine.distributions.spec import DistributionSpec
from consensusmine.errors import ConfigurationError, DomainError
from consensusmine.models.voter_interval import VoterInterval, combined_label


@dataclass(frozen=True)
class LabeledSample:
    """
    A sampled issue with its combined label.

    Attributes:
        x: Issue position in [0, 1]
        label: 2k - n for the k voters approving x
        n: Number of voters the label was computed against
    """

    x: float
    label: int
    n: int

    def __post_init__(self):
        """Validate range and parity of the label."""
        if abs(self.label) > self.n or (self.label + self.n) % 2 != 0:
            raise DomainError(f"Label {self.label} is not attainable with n={self.n} voters")

    @property
    def approvals(self) -> int:
        """k, the number of approving voters."""
        return (self.label + self.n) // 2


def label_samples(voters: Sequence[VoterInterval], xs: Sequence[float]) -> List[LabeledSample]:
    """Label each issue in xs against voters (order preserved)."""
    n = len(voters)
    return [LabeledSample(x=float(x), label=combined_label(voters, float(x)), n=n) for x in xs]


@dataclass(frozen=True)
class Scenario:
    """
    A synthetic world: voters, the issue distribution and the RNG seed.

    Attributes:
        voters: The n >= 1 voter intervals, in order
        distribution: Issue distribution P(x)
        seed: Unsigned 64-bit seed for sampling
    """

    voters: Tuple[VoterInterval, ...]
    distribution: DistributionSpec = field(default_factory=DistributionSpec)
    seed: int = 0

    def __post_init__(self):
        """Freeze the voter list and validate it."""
        object.__setattr__(self, "voters", tuple(self.voters))
        if len(self.voters) < 1:
            raise ConfigurationError("A scenario needs at least one voter")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    @property
    def n(self) -> int:
        """Number of voters."""
        return len(self.voters)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the JSON form."""
        return {
            "n": self.n,
            "voters": [v.to_dict() for v in self.voters],
            "distribution": self.distribution.to_dict(),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Scenario":
        """
        Create a Scenario from its JSON form.

        Raises:
            ConfigurationError: If required keys are missing or n disagrees
        """
        try:
            raw_voters = list(data["voters"])
            declared_n = int(data["n"]) if "n" in data else None
            seed = int(data.get("seed", 0))
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigurationError(f"Malformed scenario: {e}")
        voters = [VoterInterval.from_dict(v) for v in raw_voters]
        if declared_n is not None and declared_n != len(voters):
            raise ConfigurationError(
                f"Scenario declares n={declared_n} but lists {len(voters)} voters"
            )
        return cls(
            voters=tuple(voters),
            distribution=DistributionSpec.from_dict(data.get("distribution")),
            seed=seed,
        )

    def __repr__(self) -> str:
        return f"Scenario(n={self.n}, distribution={self.distribution.label()}, seed={self.seed})"


def load_scenario(path: Union[str, Path]) -> Scenario:
    """
    Read a Scenario from a JSON file.

    Raises:
        FileNotFoundError: If the file doesn't exist
        ConfigurationError: If the JSON is malformed
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Scenario file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Malformed scenario JSON in {path}: {e}")
    return Scenario.from_dict(data)


def save_scenario(scenario: Scenario, path: Union[str, Path]) -> None:
    """Write a Scenario as JSON (floats keep full round-trip precision)."""
    Path(path).write_text(json.dumps(scenario.to_dict(), indent=2), encoding="utf-8")
