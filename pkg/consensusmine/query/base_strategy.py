"""Base class for labeling strategies."""

from abc import ABC, abstractmethod
from typing import Optional, Sequence, Tuple

import numpy as np

from consensusmine.models.voter_interval import VoterInterval
from consensusmine.query.ledger import QueryLedger
from consensusmine.scoring.labeling import ScoredSampleArray


class LabelingStrategy(ABC):
    """
    Abstract base class for strategies that turn voter queries into labels.

    Implementations must be:
    1. Accountable: every (voter, point) question is billed in the ledger once
    2. Deterministic: same inputs and rng state -> same labels and ledger
    3. Order-preserving: labels refer to the sorted sample array
    """

    name: str = "base"

    @abstractmethod
    def label(
        self,
        voters: Sequence[VoterInterval],
        sorted_samples: Sequence[float],
        rng: Optional[np.random.Generator] = None,
    ) -> Tuple[ScoredSampleArray, QueryLedger]:
        """
        Label the samples by querying voters.

        Args:
            voters: The n voter intervals (hidden preferences being queried)
            sorted_samples: m >= 1 sample issues
            rng: Generator for randomized strategies

        Returns:
            (scored samples, query ledger)
        """
        pass

    def describe(self) -> str:
        """Strategy name as used in result tables."""
        return self.name
