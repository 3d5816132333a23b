"""Synthetic voter populations with random-width approval intervals."""

import logging
from dataclasses import dataclass
from typing import Dict, Any, List, Tuple

import numpy as np

from consensusmine.distributions.spec import DistributionSpec
from consensusmine.errors import ConfigurationError, ConsensusError
from consensusmine.models.scenario import Scenario
from consensusmine.models.stable_id import STREAM_VOTERS, stream_generator
from consensusmine.models.voter_interval import VoterInterval

logger = logging.getLogger(__name__)

# Only the [0.4, 0.6) range is documented; other ranges come from --wmin/--wmax.
WIDTH_PRESETS: Dict[str, Tuple[float, float]] = {
    "figure4": (0.4, 0.6),
}


@dataclass(frozen=True)
class VoterGenSpec:
    """
    Parameters of a synthetic voter population.

    Attributes:
        n: Number of voters (>= 1)
        w_min: Minimum approval width in [0, 1]
        w_max: Maximum approval width in [w_min, 1]
    """

    n: int = 100
    w_min: float = 0.4
    w_max: float = 0.6

    def __post_init__(self):
        """Validate population parameters."""
        if self.n < 1:
            raise ConfigurationError(f"n must be >= 1, got {self.n}")
        if not (0.0 <= self.w_min <= self.w_max <= 1.0):
            raise ConfigurationError(
                f"Widths must satisfy 0 <= w_min <= w_max <= 1, got [{self.w_min}, {self.w_max}]"
            )

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the JSON form."""
        return {"n": self.n, "w_min": self.w_min, "w_max": self.w_max}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VoterGenSpec":
        """Create a VoterGenSpec from its JSON form."""
        try:
            return cls(n=int(data["n"]), w_min=float(data["w_min"]), w_max=float(data["w_max"]))
        except ConsensusError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigurationError(f"Malformed voter spec: {e}")


def place_interval(width: float, center: float) -> Tuple[float, float]:
    """
    Interval of the given width around center, pushed back inside [0, 1].

    Overflow past either end is moved to the other side, so the width is
    preserved and center is not always the true midpoint.

    Example:
        >>> place_interval(0.4, 0.1)
        (0.0, 0.4)
    """
    half = width / 2.0
    if center - half < 0.0:
        return 0.0, width
    if center + half > 1.0:
        return 1.0 - width, 1.0
    return center - half, center + half


def generate_voters(spec: VoterGenSpec, rng: np.random.Generator) -> List[VoterInterval]:
    """
    Draw spec.n voters: per voter a width w ~ U[w_min, w_max], then a center p ~ U[0, 1].

    Args:
        spec: Population parameters
        rng: Generator owned by the caller

    Returns:
        List of n VoterIntervals inside [0, 1]
    """
    # Row-major (n, 2) draws keep the per-voter order w, p.
    draws = rng.random((spec.n, 2))
    widths = spec.w_min + (spec.w_max - spec.w_min) * draws[:, 0]
    centers = draws[:, 1]

    voters = []
    for w, p in zip(widths, centers):
        lo, hi = place_interval(float(w), float(p))
        voters.append(VoterInterval(lo=lo, hi=hi))

    logger.debug(f"Generated {spec.n} voters with widths in [{spec.w_min}, {spec.w_max}]")
    return voters


def generate_scenario(
    spec: VoterGenSpec,
    distribution: DistributionSpec,
    seed: int,
    trial_id: int = 0,
) -> Scenario:
    """
    Build a Scenario whose voters come from the voter sub-stream of (seed, trial_id).

    Args:
        spec: Population parameters
        distribution: Issue distribution recorded in the scenario
        seed: Experiment seed
        trial_id: Trial index

    Returns:
        Scenario carrying the same seed
    """
    voters = generate_voters(spec, stream_generator(seed, trial_id, STREAM_VOTERS))
    return Scenario(voters=tuple(voters), distribution=distribution, seed=seed)
