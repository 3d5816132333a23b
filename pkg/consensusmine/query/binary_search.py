"""Active labeling: locate each voter's approved run by binary search."""

import logging
import math
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from consensusmine.models.voter_interval import VoterInterval, voter_bounds
from consensusmine.query.base_strategy import LabelingStrategy
from consensusmine.query.ledger import ApprovalOracle, QueryLedger
from consensusmine.scoring.labeling import ScoredSampleArray, prepare_samples

logger = logging.getLogger(__name__)


def dyadic_probe_order(m: int) -> Iterator[int]:
    """
    0-based sample indices probed while looking for an approved point.

    Fractions 1/2, 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, 1/16, ... (odd numerators,
    breadth first) map to index ceil(f * m) in 1-based terms, clamped to
    [1, m]. Repeated indices are skipped. Once the dyadic grid is finer
    than the samples every index has appeared; any index still missing is
    yielded at the end in ascending order.
    """
    seen = set()
    depth = 1
    while len(seen) < m and (1 << (depth - 1)) <= 2 * m:
        denominator = 1 << depth
        for numerator in range(1, denominator, 2):
            index = min(max(math.ceil(numerator * m / denominator), 1), m) - 1
            if index not in seen:
                seen.add(index)
                yield index
        depth += 1
    for index in range(m):
        if index not in seen:
            yield index


class BinarySearchLabeling(LabelingStrategy):
    """
    Per-voter search for the contiguous run of approved sample indices.

    Phase 1 probes the dyadic order until an approved index p is found (a
    voter approving nothing is asked about every sample). Phase 2 binary
    searches the left edge in [0, p], phase 3 the right edge in [p, m-1].
    Labels inferred from the edges are exact when each voter approves a
    single interval.
    """

    name = "binary"

    def __init__(self, track_pairs: bool = False):
        """
        Initialize the strategy.

        Args:
            track_pairs: Record every billed pair and fail on double billing
        """
        self.track_pairs = track_pairs
        self.last_oracle: Optional[ApprovalOracle] = None

    def _find_run(self, oracle: ApprovalOracle, voter: int, m: int) -> Optional[Tuple[int, int]]:
        approved = None
        for index in dyadic_probe_order(m):
            if oracle.ask(voter, index):
                approved = index
                break
        if approved is None:
            return None

        left, right = 0, approved
        while left < right:
            mid = (left + right) // 2
            if oracle.ask(voter, mid):
                right = mid
            else:
                left = mid + 1
        left_edge = left

        left, right = approved, m - 1
        while left < right:
            mid = (left + right + 1) // 2
            if oracle.ask(voter, mid):
                left = mid
            else:
                right = mid - 1
        return left_edge, left

    def label(
        self,
        voters: Sequence[VoterInterval],
        sorted_samples: Sequence[float],
        rng: Optional[np.random.Generator] = None,
    ) -> Tuple[ScoredSampleArray, QueryLedger]:
        lo, hi = voter_bounds(voters)
        xs = prepare_samples(sorted_samples)
        n, m = lo.size, xs.size
        oracle = ApprovalOracle(lo, hi, xs, track_pairs=self.track_pairs)

        # Difference array of approval counts over sample indices.
        coverage = np.zeros(m + 1, dtype=np.int64)
        empty_voters = 0
        for voter in range(n):
            run = self._find_run(oracle, voter, m)
            if run is None:
                empty_voters += 1
                continue
            coverage[run[0]] += 1
            coverage[run[1] + 1] -= 1

        counts = np.cumsum(coverage[:-1])
        ledger = oracle.ledger()
        self.last_oracle = oracle
        if empty_voters:
            logger.debug(f"{empty_voters} voters approved no sample and were probed exhaustively")
        logger.debug(f"Binary-search labeling: {ledger.mean_per_voter:.1f} queries per voter over {m} samples")
        return ScoredSampleArray(xs=xs, labels=2 * counts - n, n=n), ledger


def label_binary_search(
    voters: Sequence[VoterInterval],
    sorted_samples: Sequence[float],
    track_pairs: bool = False,
) -> Tuple[ScoredSampleArray, QueryLedger]:
    """Label samples exactly by binary-searching every voter's approved run."""
    return BinarySearchLabeling(track_pairs=track_pairs).label(voters, sorted_samples)
