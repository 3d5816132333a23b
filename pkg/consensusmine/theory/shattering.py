"""
Pseudo-shattering checks for the class {x -> l(x) * 1[x in R] : R an interval}.

On a line an interval can only pick out a contiguous run of the chosen
points (or none of them), so at most d(d+1)/2 + 1 inclusion patterns exist
for d points. Enumerating them is exhaustive, which makes every call an
exact check rather than a random search.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from consensusmine.errors import ConfigurationError, DomainError
from consensusmine.models.voter_interval import VoterInterval, combined_label
from consensusmine.synthesis.voter_generator import VoterGenSpec, generate_voters

logger = logging.getLogger(__name__)

MAX_POINTS = 3

Pattern = Tuple[int, ...]


@dataclass(frozen=True)
class ShatterResult:
    """Outcome of one pseudo-shattering check."""

    shattered: bool
    patterns: FrozenSet[Pattern]

    @property
    def pattern_count(self) -> int:
        return len(self.patterns)


@dataclass
class ShatterAudit:
    """Tally over random (scenario, points, thresholds) instances."""

    trials: int = 0
    shattered: int = 0
    max_patterns: int = 0
    points: int = MAX_POINTS
    skipped: int = field(default=0)

    def to_dict(self):
        return {
            "points": self.points,
            "trials": self.trials,
            "shattered": self.shattered,
            "max_patterns": self.max_patterns,
            "skipped": self.skipped,
        }


def _check_points(points: Sequence[float], thresholds: Sequence[float]) -> None:
    if len(points) != len(thresholds):
        raise DomainError(f"{len(points)} points but {len(thresholds)} thresholds")
    if not 1 <= len(points) <= MAX_POINTS:
        raise DomainError(f"Shatter checks take 1 to {MAX_POINTS} points, got {len(points)}")
    if any(b <= a for a, b in zip(points, points[1:])):
        raise DomainError(f"Points must be strictly increasing, got {list(points)}")


def interval_patterns(d: int) -> Iterator[Pattern]:
    """Inclusion patterns an interval can cut out of d sorted points."""
    yield (0,) * d
    for start in range(d):
        for stop in range(start, d):
            yield tuple(1 if start <= j <= stop else 0 for j in range(d))


def canonical_thresholds(labels: Sequence[float]) -> List[float]:
    """r_j = l(x_j) / 2, under which the pattern bit is inclusion XOR (l < 0)."""
    return [label / 2.0 for label in labels]


def check_pseudo_shatter(
    voters: Sequence[VoterInterval],
    points: Sequence[float],
    thresholds: Sequence[float],
) -> ShatterResult:
    """
    Decide whether the points are pseudo-shattered with the given witnesses.

    Every achievable inclusion pattern is mapped through
    b_j = 1[l(x_j) * include_j > r_j]; the points are shattered when all
    2^d bit-vectors appear.

    Args:
        voters: Scenario voters defining l
        points: 1 to 3 strictly increasing points in [0, 1]
        thresholds: Witness r_j per point

    Returns:
        ShatterResult with the achieved bit-vectors

    Raises:
        DomainError: For mismatched lengths, bad sizes or unsorted/duplicate points
    """
    _check_points(points, thresholds)
    labels = [combined_label(voters, x) for x in points]
    achieved = set()
    for include in interval_patterns(len(points)):
        achieved.add(
            tuple(int(label * inside > r) for label, inside, r in zip(labels, include, thresholds))
        )
    return ShatterResult(shattered=len(achieved) == 2 ** len(points), patterns=frozenset(achieved))


def find_shattering_witness(
    voters: Sequence[VoterInterval],
    candidate_points: Sequence[float],
    size: int = 2,
) -> Optional[Tuple[List[float], List[float]]]:
    """
    Search candidate point sets for one shattered under canonical thresholds.

    Args:
        voters: Scenario voters
        candidate_points: Points to choose from (deduplicated and sorted)
        size: Number of points in the witness

    Returns:
        (points, thresholds) of the first shattered set, or None
    """
    if not 1 <= size <= MAX_POINTS:
        raise DomainError(f"Witness size must be 1 to {MAX_POINTS}, got {size}")
    candidates = sorted(set(float(x) for x in candidate_points))
    for combo in itertools.combinations(candidates, size):
        thresholds = canonical_thresholds([combined_label(voters, x) for x in combo])
        if check_pseudo_shatter(voters, combo, thresholds).shattered:
            return list(combo), thresholds
    return None


def audit_random_shattering(
    rng: np.random.Generator,
    points: int = MAX_POINTS,
    trials: int = 1000,
    n: int = 100,
    w_min: float = 0.4,
    w_max: float = 0.6,
    random_thresholds: bool = False,
) -> ShatterAudit:
    """
    Count shattered instances over random scenarios.

    Each trial draws a fresh voter set and `points` sorted distinct issues.
    Thresholds are canonical by default, or uniform in [-n, n] with
    random_thresholds.

    Args:
        rng: Generator driving scenarios, points and thresholds
        points: Points per instance (1 to 3)
        trials: Number of instances
        n: Voters per scenario
        w_min: Minimum voter width
        w_max: Maximum voter width
        random_thresholds: Draw thresholds instead of using l(x)/2

    Returns:
        ShatterAudit tally
    """
    if not 1 <= points <= MAX_POINTS:
        raise DomainError(f"Audits take 1 to {MAX_POINTS} points, got {points}")
    if trials < 1:
        raise ConfigurationError(f"trials must be >= 1, got {trials}")

    gen_spec = VoterGenSpec(n=n, w_min=w_min, w_max=w_max)
    audit = ShatterAudit(points=points)
    for _ in range(trials):
        voters = generate_voters(gen_spec, rng)
        xs = np.sort(rng.random(points))
        if np.any(np.diff(xs) <= 0):
            audit.skipped += 1
            continue
        if random_thresholds:
            thresholds = list(rng.uniform(-n, n, size=points))
        else:
            thresholds = canonical_thresholds([combined_label(voters, x) for x in xs])
        result = check_pseudo_shatter(voters, xs.tolist(), thresholds)
        audit.trials += 1
        audit.shattered += int(result.shattered)
        audit.max_patterns = max(audit.max_patterns, result.pattern_count)

    logger.info(
        f"Shatter audit: {audit.shattered}/{audit.trials} instances of {points} points shattered "
        f"(max {audit.max_patterns} patterns)"
    )
    return audit
