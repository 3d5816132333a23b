"""Segment decomposition of the step function l(x) on [0, 1]."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from consensusmine.errors import DomainError
from consensusmine.models.voter_interval import VoterInterval, voter_bounds


@dataclass(frozen=True, eq=False)
class SegmentDecomposition:
    """
    Partition of [0, 1] on which the combined label is constant.

    Attributes:
        breakpoints: Strictly increasing, starting at 0 and ending at 1
        segment_labels: Label on the interior of each consecutive pair
        n: Number of voters
    """

    breakpoints: np.ndarray
    segment_labels: np.ndarray
    n: int

    def __post_init__(self):
        """Validate the partition."""
        bp = np.array(self.breakpoints, dtype=np.float64)
        labels = np.array(self.segment_labels, dtype=np.int64)
        if bp.size < 2 or bp[0] != 0.0 or bp[-1] != 1.0 or np.any(np.diff(bp) <= 0):
            raise DomainError("Breakpoints must be strictly increasing from 0 to 1")
        if labels.size != bp.size - 1:
            raise DomainError("Need exactly one label per segment")
        if np.any(np.abs(labels) > self.n) or np.any((labels + self.n) % 2 != 0):
            raise DomainError(f"Segment labels must have the parity of n={self.n} and |l| <= n")
        bp.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "segment_labels", labels)

    @property
    def segment_count(self) -> int:
        return int(self.segment_labels.size)

    @property
    def lefts(self) -> np.ndarray:
        return self.breakpoints[:-1]

    @property
    def rights(self) -> np.ndarray:
        return self.breakpoints[1:]

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.breakpoints[:-1] + self.breakpoints[1:])


def decompose(voters: Sequence[VoterInterval]) -> SegmentDecomposition:
    """
    Split [0, 1] at every distinct voter endpoint.

    Args:
        voters: The n >= 1 voter intervals

    Returns:
        SegmentDecomposition whose labels equal l at each segment midpoint
    """
    lo, hi = voter_bounds(voters)
    n = lo.size
    breakpoints = np.unique(np.concatenate([[0.0, 1.0], np.clip(lo, 0.0, 1.0), np.clip(hi, 0.0, 1.0)]))

    mids = 0.5 * (breakpoints[:-1] + breakpoints[1:])
    # Open segments never meet an endpoint, so each one is uniformly inside or outside a voter.
    opens = np.searchsorted(np.sort(lo), mids, side="right")
    closes = np.searchsorted(np.sort(hi), mids, side="left")
    k = opens - closes

    return SegmentDecomposition(breakpoints=breakpoints, segment_labels=2 * k - n, n=n)
