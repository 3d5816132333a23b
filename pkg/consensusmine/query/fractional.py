"""Fractional labeling: each sample is put to a random subset of voters."""

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np

from consensusmine.errors import ConfigurationError
from consensusmine.models.voter_interval import VoterInterval, voter_bounds
from consensusmine.query.base_strategy import LabelingStrategy
from consensusmine.query.ledger import QueryLedger
from consensusmine.scoring.labeling import ScoredSampleArray, prepare_samples

logger = logging.getLogger(__name__)

_ROWS_PER_CHUNK = 1 << 14


def subset_size(fraction: float, n: int) -> int:
    """k = max(1, round(fraction * n)), rounding halves up."""
    return max(1, min(n, int(math.floor(fraction * n + 0.5))))


class FractionalLabeling(LabelingStrategy):
    """
    Estimate each label from k = round(fraction * n) voters.

    The estimated label is the subset's own net agreement 2a - k, left
    unscaled: with k constant the ERM argmax is the same as for the
    n/k-scaled estimate, and the returned ScoredSampleArray reports n = k.
    """

    name = "fractional"

    def __init__(self, fraction: float, subset_per_trial: bool = False):
        """
        Initialize the strategy.

        Args:
            fraction: Share of voters asked, in (0, 1]
            subset_per_trial: Draw one subset for all points instead of one per point
        """
        if not 0.0 < fraction <= 1.0:
            raise ConfigurationError(f"fraction must be in (0, 1], got {fraction}")
        self.fraction = fraction
        self.subset_per_trial = subset_per_trial

    def describe(self) -> str:
        return f"fractional({self.fraction:g})"

    def label(
        self,
        voters: Sequence[VoterInterval],
        sorted_samples: Sequence[float],
        rng: Optional[np.random.Generator] = None,
    ) -> Tuple[ScoredSampleArray, QueryLedger]:
        if rng is None:
            raise ConfigurationError("Fractional labeling needs a random generator")
        lo, hi = voter_bounds(voters)
        xs = prepare_samples(sorted_samples)
        n, m = lo.size, xs.size
        k = subset_size(self.fraction, n)

        approvals = np.empty(m, dtype=np.int64)
        per_voter = np.zeros(n, dtype=np.int64)

        if self.subset_per_trial:
            subset = np.sort(rng.permutation(n)[:k])
            inside = (lo[subset][None, :] <= xs[:, None]) & (xs[:, None] <= hi[subset][None, :])
            approvals[:] = inside.sum(axis=1)
            per_voter[subset] = m
        else:
            for start in range(0, m, _ROWS_PER_CHUNK):
                rows = xs[start:start + _ROWS_PER_CHUNK]
                if k == n:
                    subset = np.broadcast_to(np.arange(n), (rows.size, n))
                else:
                    keys = rng.random((rows.size, n))
                    subset = np.argpartition(keys, k - 1, axis=1)[:, :k]
                inside = (lo[subset] <= rows[:, None]) & (rows[:, None] <= hi[subset])
                approvals[start:start + rows.size] = inside.sum(axis=1)
                per_voter += np.bincount(subset.ravel(), minlength=n)

        logger.debug(f"Fractional labeling: {m} samples, subsets of {k}/{n} voters")
        scored = ScoredSampleArray(xs=xs, labels=2 * approvals - k, n=k)
        return scored, QueryLedger(per_voter_queries=per_voter)


def label_fractional(
    voters: Sequence[VoterInterval],
    sorted_samples: Sequence[float],
    fraction: float,
    rng: np.random.Generator,
    subset_per_trial: bool = False,
) -> Tuple[ScoredSampleArray, QueryLedger]:
    """Label each point from a fresh random voter subset of size round(fraction * n)."""
    return FractionalLabeling(fraction, subset_per_trial=subset_per_trial).label(
        voters, sorted_samples, rng
    )
