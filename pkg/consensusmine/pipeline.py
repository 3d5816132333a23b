"""Consensus pipeline - main API for finding consensus intervals."""

import logging
from dataclasses import dataclass
from typing import Dict, Any, Optional, Sequence, Tuple, Union

import numpy as np

from consensusmine.distributions import build_distribution
from consensusmine.errors import ConfigurationError, EmptySampleError, InvariantViolation
from consensusmine.models import ConsensusInterval, Scenario
from consensusmine.oracle import SegmentDecomposition, decompose, true_objective, true_optimum
from consensusmine.query import LabelingStrategy, QueryLedger, build_strategy
from consensusmine.scoring import ScoredSampleArray, erm_interval

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

SCORE_SCALES = ("raw", "normalized")

# Slack allowed for Phi(I_hat) above Phi* before it counts as an oracle bug.
PHI_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ConsensusReport:
    """
    Result of one ERM run evaluated against the exact oracle.

    Objective values (phi_hat, phi_opt, gap) are on the pipeline's score
    scale; empirical_score inside the interval is the raw label sum.
    """

    interval: ConsensusInterval
    ledger: QueryLedger
    strategy: str
    m: int
    phi_hat: float
    phi_opt: float
    score_scale: str
    epsilon: Optional[float] = None

    @property
    def gap(self) -> float:
        return self.phi_opt - self.phi_hat

    @property
    def success(self) -> Optional[bool]:
        """gap <= epsilon, or None when no epsilon was given."""
        if self.epsilon is None:
            return None
        return self.gap <= self.epsilon

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the JSON printed by the erm command."""
        data = {
            "interval": [self.interval.lo, self.interval.hi],
            "empirical_score": self.interval.empirical_score,
            "true_phi": self.phi_hat,
            "true_opt_phi": self.phi_opt,
            "score_scale": self.score_scale,
            "strategy": self.strategy,
            "m": self.m,
            "sample_index_lo": self.interval.sample_index_lo,
            "sample_index_hi": self.interval.sample_index_hi,
            "queries": self.ledger.summary(),
        }
        if self.epsilon is not None:
            data["epsilon"] = self.epsilon
            data["success"] = self.success
        return data


class ConsensusPipeline:
    """
    Consensus-finding pipeline for one scenario.

    It provides:

    1. Sample drawing from the scenario's issue distribution
    2. Labeling through a pluggable query strategy
    3. ERM interval selection
    4. Exact evaluation against the true optimum
    """

    def __init__(self, scenario: Scenario, score_scale: str = "normalized"):
        """
        Initialize the pipeline.

        Args:
            scenario: Voters plus issue distribution
            score_scale: "normalized" (objective / n) or "raw"
        """
        if score_scale not in SCORE_SCALES:
            raise ConfigurationError(f"score_scale must be one of {SCORE_SCALES}, got {score_scale!r}")
        self.scenario = scenario
        self.score_scale = score_scale
        self.distribution = build_distribution(scenario.distribution)
        self.decomposition: SegmentDecomposition = decompose(scenario.voters)
        self._optimum: Optional[ConsensusInterval] = None

        logger.debug(
            f"ConsensusPipeline initialized (n={scenario.n}, "
            f"distribution={scenario.distribution.label()}, "
            f"segments={self.decomposition.segment_count})"
        )

    # ============================================================================
    # Sampling and labeling
    # ============================================================================

    def draw_samples(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """
        Draw i.i.d. issues from the scenario's distribution.

        Args:
            count: Number of samples (>= 1)
            rng: Generator owned by the caller

        Returns:
            Unsorted float64 array of length count

        Raises:
            EmptySampleError: If count < 1
        """
        if count < 1:
            raise EmptySampleError()
        return self.distribution.sample(rng, count)

    def label(
        self,
        samples: Sequence[float],
        strategy: Union[str, LabelingStrategy] = "full",
        rng: Optional[np.random.Generator] = None,
    ) -> Tuple[ScoredSampleArray, QueryLedger]:
        """
        Label samples through a query strategy.

        Args:
            samples: Issue positions (any order)
            strategy: Strategy instance or name ("full", "binary")
            rng: Generator for randomized strategies

        Returns:
            (scored samples, query ledger)
        """
        if isinstance(strategy, str):
            strategy = build_strategy(strategy)
        return strategy.label(self.scenario.voters, samples, rng)

    # ============================================================================
    # Consensus
    # ============================================================================

    def find_consensus(
        self,
        samples: Sequence[float],
        strategy: Union[str, LabelingStrategy] = "full",
        rng: Optional[np.random.Generator] = None,
        epsilon: Optional[float] = None,
    ) -> ConsensusReport:
        """
        Run ERM on labeled samples and evaluate the chosen interval exactly.

        Args:
            samples: Issue positions (any order)
            strategy: Strategy instance or name
            rng: Generator for randomized strategies
            epsilon: Success threshold on the score scale

        Returns:
            ConsensusReport

        Raises:
            InvariantViolation: If Phi(I_hat) exceeds Phi* beyond tolerance
        """
        if isinstance(strategy, str):
            strategy = build_strategy(strategy)

        try:
            scored, ledger = self.label(samples, strategy, rng)
            interval = erm_interval(scored)
            raw_hat = true_objective(
                self.decomposition, self.scenario.distribution, interval.lo, interval.hi
            )
            raw_opt = self.optimum().true_objective
            if raw_hat > raw_opt + PHI_TOLERANCE:
                raise InvariantViolation(
                    f"Phi of ERM interval {raw_hat!r} exceeds the optimum {raw_opt!r}"
                )
        except InvariantViolation as e:
            logger.error(f"Oracle check failed for {strategy.describe()}: {e}")
            raise

        return ConsensusReport(
            interval=interval,
            ledger=ledger,
            strategy=strategy.describe(),
            m=scored.m,
            phi_hat=self._scale(raw_hat),
            phi_opt=self._scale(raw_opt),
            score_scale=self.score_scale,
            epsilon=epsilon,
        )

    # ============================================================================
    # Oracle
    # ============================================================================

    def evaluate(self, lo: float, hi: float) -> float:
        """Exact objective of [lo, hi] on the score scale."""
        return self._scale(true_objective(self.decomposition, self.scenario.distribution, lo, hi))

    def optimum(self) -> ConsensusInterval:
        """The true optimum I* (raw objective in true_objective), computed once."""
        if self._optimum is None:
            self._optimum = true_optimum(self.decomposition, self.scenario.distribution)
        return self._optimum

    def _scale(self, raw: float) -> float:
        return raw / self.scenario.n if self.score_scale == "normalized" else raw

    # ============================================================================
    # Statistics
    # ============================================================================

    def stats(self) -> Dict[str, Any]:
        """
        Get scenario statistics.

        Returns:
            Dictionary with voter count, distribution, segment count and optimum
        """
        optimum = self.optimum()
        return {
            "n": self.scenario.n,
            "distribution": self.scenario.distribution.to_dict(),
            "segments": self.decomposition.segment_count,
            "score_scale": self.score_scale,
            "optimum": [optimum.lo, optimum.hi],
            "optimum_phi": self._scale(optimum.true_objective),
        }
