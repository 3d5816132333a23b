"""Empirical risk minimization over intervals (maximum subarray)."""

import logging
from typing import Sequence

import numpy as np

from consensusmine.errors import DomainError, EmptySampleError
from consensusmine.models.consensus_interval import ConsensusInterval
from consensusmine.models.voter_interval import VoterInterval, voter_bounds
from consensusmine.scoring.labeling import ScoredSampleArray, prepare_samples

logger = logging.getLogger(__name__)


def _check_scored(scored: ScoredSampleArray) -> None:
    if scored is None or scored.m < 1:
        raise EmptySampleError()


def erm_interval(scored: ScoredSampleArray) -> ConsensusInterval:
    """
    Find the sample-endpoint interval with the largest label sum.

    Kadane's scan written over prefix sums: the best run ending at k starts
    just after the first occurrence of the minimum prefix before k, which is
    exactly where Kadane (reset when the running sum drops strictly below 0,
    update only on a strictly greater sum) places it. Ties resolve to the
    smallest start, then the smallest end. When every label is negative the
    result is the single point with the largest label, lowest index first.

    Args:
        scored: Sorted samples with labels (m >= 1)

    Returns:
        ConsensusInterval [xs[j*], xs[k*]] with its label sum
    """
    _check_scored(scored)
    labels = scored.labels

    # prefix[i] = sum(labels[:i]); run j..k has sum prefix[k+1] - prefix[j]
    prefix = np.concatenate([[0], np.cumsum(labels, dtype=np.int64)])
    running_min = np.minimum.accumulate(prefix[:-1])

    # First index where each new strict minimum is reached.
    is_new_min = np.empty(running_min.size, dtype=bool)
    is_new_min[0] = True
    is_new_min[1:] = prefix[1:-1] < running_min[:-1]
    starts = np.maximum.accumulate(np.where(is_new_min, np.arange(running_min.size), 0))

    best_ending_at = prefix[1:] - running_min
    k_star = int(np.argmax(best_ending_at))
    j_star = int(starts[k_star])
    score = int(best_ending_at[k_star])

    logger.debug(f"ERM over {scored.m} samples: indices [{j_star}, {k_star}], score {score}")
    return ConsensusInterval(
        lo=float(scored.xs[j_star]),
        hi=float(scored.xs[k_star]),
        empirical_score=score,
        sample_index_lo=j_star,
        sample_index_hi=k_star,
    )


def erm_bruteforce(scored: ScoredSampleArray) -> ConsensusInterval:
    """
    Exhaustive ERM over all m(m+1)/2 index pairs.

    Reference oracle for erm_interval; quadratic, meant for m up to a few
    thousand. Uses the same tie-break (lowest j, then lowest k).

    Args:
        scored: Sorted samples with labels (m >= 1)

    Returns:
        ConsensusInterval maximizing the label sum
    """
    _check_scored(scored)
    labels = [int(h) for h in scored.labels]
    m = len(labels)

    best_score, best_j, best_k = None, 0, 0
    for j in range(m):
        total = 0
        for k in range(j, m):
            total += labels[k]
            if best_score is None or total > best_score:
                best_score, best_j, best_k = total, j, k

    return ConsensusInterval(
        lo=float(scored.xs[best_j]),
        hi=float(scored.xs[best_k]),
        empirical_score=best_score,
        sample_index_lo=best_j,
        sample_index_hi=best_k,
    )


def empirical_objective(
    voters: Sequence[VoterInterval],
    samples: Sequence[float],
    lo: float,
    hi: float,
) -> float:
    """
    Sample average of l(x) * 1{x in [lo, hi]}.

    Args:
        voters: Voter intervals
        samples: Sample issues (m >= 1)
        lo: Left endpoint of the hypothesis interval
        hi: Right endpoint of the hypothesis interval

    Returns:
        The empirical objective value
    """
    if lo > hi:
        raise DomainError(f"Interval needs lo <= hi, got [{lo}, {hi}]")
    v_lo, v_hi = voter_bounds(voters)
    xs = prepare_samples(samples)
    inside = xs[(xs >= lo) & (xs <= hi)]
    if inside.size == 0:
        return 0.0
    k = ((v_lo[:, None] <= inside[None, :]) & (inside[None, :] <= v_hi[:, None])).sum(axis=0)
    return float(np.sum(2 * k - v_lo.size)) / xs.size
