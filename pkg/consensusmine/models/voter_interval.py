"""VoterInterval model and the label-function arithmetic built on it."""

from dataclasses import dataclass
from typing import Dict, Any, List, Sequence, Tuple

import numpy as np

from consensusmine.errors import ConfigurationError, DomainError

# Labels are stored as int64; the voter count is capped well inside that range.
MAX_VOTERS = 2**31 - 1


@dataclass(frozen=True)
class VoterInterval:
    """
    A single voter's closed approval interval on the opinion space [0, 1].

    Attributes:
        lo: Left endpoint (inclusive)
        hi: Right endpoint (inclusive)
    """

    lo: float
    hi: float

    def __post_init__(self):
        """Validate 0 <= lo <= hi <= 1."""
        if not (0.0 <= self.lo <= self.hi <= 1.0):
            raise DomainError(
                f"Voter interval must satisfy 0 <= lo <= hi <= 1, got [{self.lo}, {self.hi}]"
            )

    @property
    def width(self) -> float:
        """Length of the approval interval."""
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        """Closed-interval membership."""
        return self.lo <= x <= self.hi

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary representation."""
        return {"lo": self.lo, "hi": self.hi}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VoterInterval":
        """
        Create a VoterInterval from its dictionary form.

        Raises:
            ConfigurationError: If an endpoint is missing or not a number
            DomainError: If the endpoints are out of order or outside [0, 1]
        """
        try:
            lo, hi = float(data["lo"]), float(data["hi"])
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigurationError(f"Malformed voter {data!r}: {e}")
        return cls(lo=lo, hi=hi)

    def __repr__(self) -> str:
        return f"VoterInterval([{self.lo:.6g}, {self.hi:.6g}])"


def _check_point(x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"Issue position must lie in [0, 1], got {x}")


def individual_label(voter: VoterInterval, x: float) -> int:
    """
    Label of issue x for one voter: +1 if approved, -1 otherwise.

    Args:
        voter: The voter's approval interval
        x: Issue position in [0, 1]

    Returns:
        +1 or -1
    """
    _check_point(x)
    return 1 if voter.contains(x) else -1


def combined_label(voters: Sequence[VoterInterval], x: float) -> int:
    """
    Net agreement at x: 2k - n where k voters approve x.

    Args:
        voters: The n voter intervals (n >= 1)
        x: Issue position in [0, 1]

    Returns:
        Integer in {-n, -n+2, ..., n}
    """
    _check_point(x)
    n = len(voters)
    if n < 1:
        raise DomainError("At least one voter is required")
    k = sum(1 for voter in voters if voter.contains(x))
    return 2 * k - n


def approval_fraction(voters: Sequence[VoterInterval], x: float) -> float:
    """Fraction of voters approving x, so combined_label = n(2f - 1)."""
    _check_point(x)
    if not voters:
        raise DomainError("At least one voter is required")
    return sum(1 for voter in voters if voter.contains(x)) / len(voters)


def voter_bounds(voters: Sequence[VoterInterval]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Split voters into parallel endpoint arrays for vectorized code.

    Args:
        voters: Voter intervals

    Returns:
        (lo, hi) float64 arrays of length n
    """
    n = len(voters)
    if n < 1:
        raise DomainError("At least one voter is required")
    if n > MAX_VOTERS:
        raise DomainError(f"At most {MAX_VOTERS} voters are supported, got {n}")
    lo = np.fromiter((v.lo for v in voters), dtype=np.float64, count=n)
    hi = np.fromiter((v.hi for v in voters), dtype=np.float64, count=n)
    return lo, hi


def voters_from_bounds(lo: np.ndarray, hi: np.ndarray) -> List[VoterInterval]:
    """Inverse of voter_bounds."""
    return [VoterInterval(lo=float(a), hi=float(b)) for a, b in zip(lo, hi)]
