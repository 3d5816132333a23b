"""Combined-label scoring of sample issues: naive and sweep-line paths."""

import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from consensusmine.errors import DomainError, EmptySampleError
from consensusmine.models.voter_interval import VoterInterval, voter_bounds

logger = logging.getLogger(__name__)

# Sweep-line event kinds; at equal coordinates opens sort before samples
# and samples before closes, which realizes closed voter intervals.
_OPEN, _SAMPLE, _CLOSE = 0, 1, 2

# Cap on the boolean membership matrix built per naive chunk.
_NAIVE_CHUNK_CELLS = 1 << 22


@dataclass(frozen=True, eq=False)
class ScoredSampleArray:
    """
    Sorted sample issues with their combined labels.

    Attributes:
        xs: Sorted (non-decreasing) sample positions, float64
        labels: Parallel int64 labels, labels[i] = l(xs[i])
        n: Number of voters the labels refer to
    """

    xs: np.ndarray
    labels: np.ndarray
    n: int

    def __post_init__(self):
        """Validate shape and ordering."""
        xs = np.array(self.xs, dtype=np.float64)
        labels = np.array(self.labels, dtype=np.int64)
        if xs.ndim != 1 or xs.shape != labels.shape:
            raise DomainError("xs and labels must be parallel 1-D arrays")
        if xs.size == 0:
            raise EmptySampleError()
        if np.any(np.diff(xs) < 0):
            raise DomainError("xs must be sorted non-decreasing")
        xs.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_unsorted(cls, xs: Sequence[float], labels: Sequence[int], n: int) -> "ScoredSampleArray":
        """Stable-sort (xs, labels) pairs by position."""
        xs_arr = np.asarray(xs, dtype=np.float64)
        order = np.argsort(xs_arr, kind="stable")
        return cls(xs=xs_arr[order], labels=np.asarray(labels, dtype=np.int64)[order], n=n)

    @property
    def m(self) -> int:
        """Number of samples."""
        return int(self.xs.size)

    def equals(self, other: "ScoredSampleArray") -> bool:
        """Exact equality of positions, labels and voter count."""
        return (
            self.n == other.n
            and np.array_equal(self.xs, other.xs)
            and np.array_equal(self.labels, other.labels)
        )

    def __repr__(self) -> str:
        return f"ScoredSampleArray(m={self.m}, n={self.n})"


def prepare_samples(samples: Union[Sequence[float], np.ndarray]) -> np.ndarray:
    """
    Validate sample positions and return them sorted.

    Raises:
        EmptySampleError: If there are no samples
        DomainError: If any sample is NaN or outside [0, 1]
    """
    xs = np.asarray(samples, dtype=np.float64).ravel()
    if xs.size == 0:
        raise EmptySampleError()
    if np.any(np.isnan(xs)) or np.any((xs < 0.0) | (xs > 1.0)):
        raise DomainError("Sample issues must lie in [0, 1]")
    return np.sort(xs, kind="stable")


def score_naive(voters: Sequence[VoterInterval], samples: Sequence[float]) -> ScoredSampleArray:
    """
    Label every sample by testing it against every voter, O(nm).

    Args:
        voters: The n >= 1 voter intervals
        samples: m >= 1 issue positions in [0, 1]

    Returns:
        ScoredSampleArray in sorted order
    """
    lo, hi = voter_bounds(voters)
    xs = prepare_samples(samples)
    n = lo.size

    counts = np.empty(xs.size, dtype=np.int64)
    step = max(1, _NAIVE_CHUNK_CELLS // n)
    for start in range(0, xs.size, step):
        chunk = xs[start:start + step]
        inside = (lo[:, None] <= chunk[None, :]) & (chunk[None, :] <= hi[:, None])
        counts[start:start + step] = inside.sum(axis=0)

    logger.debug(f"Scored {xs.size} samples against {n} voters (naive)")
    return ScoredSampleArray(xs=xs, labels=2 * counts - n, n=n)


def score_sweepline(voters: Sequence[VoterInterval], samples: Sequence[float]) -> ScoredSampleArray:
    """
    Label samples with one ordered pass over endpoints and samples.

    The 2n endpoints and m samples are sorted together by (coordinate, kind)
    and an active-interval counter is carried along the sweep, giving
    O((n+m) log(n+m)) overall.

    Args:
        voters: The n >= 1 voter intervals
        samples: m >= 1 issue positions in [0, 1]

    Returns:
        ScoredSampleArray identical to score_naive's
    """
    lo, hi = voter_bounds(voters)
    xs = prepare_samples(samples)
    n, m = lo.size, xs.size

    coords = np.concatenate([lo, xs, hi])
    kinds = np.concatenate([
        np.full(n, _OPEN, dtype=np.int8),
        np.full(m, _SAMPLE, dtype=np.int8),
        np.full(n, _CLOSE, dtype=np.int8),
    ])
    deltas = np.concatenate([
        np.ones(n, dtype=np.int64),
        np.zeros(m, dtype=np.int64),
        -np.ones(n, dtype=np.int64),
    ])

    order = np.lexsort((kinds, coords))
    active = np.cumsum(deltas[order])
    is_sample = kinds[order] == _SAMPLE

    swept_xs = coords[order][is_sample]
    counts = active[is_sample]

    logger.debug(f"Scored {m} samples against {n} voters (sweepline)")
    return ScoredSampleArray(xs=swept_xs, labels=2 * counts - n, n=n)
