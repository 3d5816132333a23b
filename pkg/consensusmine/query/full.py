"""Full labeling: every voter is asked about every sample."""

from typing import Optional, Sequence, Tuple

import numpy as np

from consensusmine.models.voter_interval import VoterInterval
from consensusmine.query.base_strategy import LabelingStrategy
from consensusmine.query.ledger import QueryLedger
from consensusmine.scoring.labeling import ScoredSampleArray, score_sweepline


class FullLabeling(LabelingStrategy):
    """Exact labels at a cost of n * m queries."""

    name = "full"

    def label(
        self,
        voters: Sequence[VoterInterval],
        sorted_samples: Sequence[float],
        rng: Optional[np.random.Generator] = None,
    ) -> Tuple[ScoredSampleArray, QueryLedger]:
        scored = score_sweepline(voters, sorted_samples)
        return scored, QueryLedger.uniform(len(voters), scored.m)


def label_full(
    voters: Sequence[VoterInterval],
    sorted_samples: Sequence[float],
) -> Tuple[ScoredSampleArray, QueryLedger]:
    """Query every (voter, point) pair; labels are exact."""
    return FullLabeling().label(voters, sorted_samples)
