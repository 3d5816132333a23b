"""ConsensusInterval model: a hypothesis interval with its scores."""

from dataclasses import dataclass
from typing import Optional, Dict, Any

from consensusmine.errors import DomainError


@dataclass(frozen=True)
class ConsensusInterval:
    """
    A hypothesis interval [lo, hi] on the opinion space.

    When produced by ERM, lo and hi are sample positions and the sample
    indices are 0-based positions in the sorted sample array. Oracle
    optima carry index -1.

    Attributes:
        lo: Left endpoint
        hi: Right endpoint
        empirical_score: Sum of labels of samples inside [lo, hi]
        sample_index_lo: Sorted index of the left endpoint (j*)
        sample_index_hi: Sorted index of the right endpoint (k*)
        true_objective: Exact objective value when known
    """

    lo: float
    hi: float
    empirical_score: float = 0.0
    sample_index_lo: int = -1
    sample_index_hi: int = -1
    true_objective: Optional[float] = None

    def __post_init__(self):
        """Validate endpoint ordering."""
        if self.lo > self.hi:
            raise DomainError(f"Interval needs lo <= hi, got [{self.lo}, {self.hi}]")

    @property
    def is_degenerate(self) -> bool:
        """True for a single-point interval [x, x]."""
        return self.lo == self.hi

    @property
    def sample_count(self) -> int:
        """Number of sorted samples spanned (0 for oracle optima)."""
        if self.sample_index_lo < 0:
            return 0
        return self.sample_index_hi - self.sample_index_lo + 1

    def empirical_objective(self, m: int) -> float:
        """Normalized empirical objective: empirical_score / m."""
        if m < 1:
            raise DomainError("m must be >= 1")
        return self.empirical_score / m

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary representation."""
        return {
            "interval": [self.lo, self.hi],
            "empirical_score": self.empirical_score,
            "sample_index_lo": self.sample_index_lo,
            "sample_index_hi": self.sample_index_hi,
            "true_objective": self.true_objective,
        }

    def __repr__(self) -> str:
        return (
            f"ConsensusInterval([{self.lo:.6g}, {self.hi:.6g}], "
            f"score={self.empirical_score:g})"
        )
