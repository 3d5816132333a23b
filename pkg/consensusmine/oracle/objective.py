"""Exact evaluation of the true objective and its maximizer."""

import logging
import math
from typing import Sequence

import numpy as np

from consensusmine.distributions import DistributionSpec, build_distribution, sample
from consensusmine.errors import DomainError
from consensusmine.models.consensus_interval import ConsensusInterval
from consensusmine.models.voter_interval import VoterInterval
from consensusmine.oracle.segments import SegmentDecomposition
from consensusmine.scoring.labeling import score_sweepline

logger = logging.getLogger(__name__)


def _check_interval(lo: float, hi: float) -> None:
    if not (0.0 <= lo <= hi <= 1.0):
        raise DomainError(f"Interval must satisfy 0 <= lo <= hi <= 1, got [{lo}, {hi}]")


def segment_weights(decomp: SegmentDecomposition, spec: DistributionSpec) -> np.ndarray:
    """Per-segment contribution label(s) * P(s)."""
    masses = build_distribution(spec).segment_masses(decomp.breakpoints)
    return decomp.segment_labels * masses


def true_objective(decomp: SegmentDecomposition, spec: DistributionSpec, lo: float, hi: float) -> float:
    """
    Exact value of E[l(x) 1{x in [lo, hi]}] under spec.

    Args:
        decomp: Segment decomposition of the voters
        spec: Issue distribution
        lo: Left endpoint in [0, 1]
        hi: Right endpoint in [lo, 1]

    Returns:
        The objective, accurate to the distribution's CDF precision
    """
    _check_interval(lo, hi)
    if lo == hi:
        return 0.0

    left = np.maximum(decomp.lefts, lo)
    right = np.minimum(decomp.rights, hi)
    overlap = right > left
    if not np.any(overlap):
        return 0.0

    dist = build_distribution(spec)
    masses = np.maximum(dist.cdf(right[overlap]) - dist.cdf(left[overlap]), 0.0)
    return math.fsum(decomp.segment_labels[overlap] * masses)


def normalized_objective(decomp: SegmentDecomposition, spec: DistributionSpec, lo: float, hi: float) -> float:
    """true_objective divided by the number of voters, in [-1, 1]."""
    return true_objective(decomp, spec, lo, hi) / decomp.n


def agreement_score(decomp: SegmentDecomposition, spec: DistributionSpec, lo: float, hi: float) -> float:
    """
    Mean per-voter agreement (1/n) sum_c E[L_c(x) L_I(x)].

    Here L_I is +1 inside the hypothesis and -1 outside. This equals
    (2 Phi(I) - Phi([0, 1])) / n, so it shares Phi's maximizer.
    """
    phi = true_objective(decomp, spec, lo, hi)
    total = true_objective(decomp, spec, 0.0, 1.0)
    return (2.0 * phi - total) / decomp.n


def _max_weight_run(weights: np.ndarray):
    """Kadane over segment weights; ties keep the first run found."""
    best, best_j, best_k = -math.inf, 0, 0
    current, start = 0.0, 0
    for i, w in enumerate(weights):
        current += w
        if current > best:
            best, best_j, best_k = current, start, i
        if current < 0:
            current, start = 0.0, i + 1
    return best, best_j, best_k


def _largest_zero_run(weights: np.ndarray, masses: np.ndarray):
    """Maximal run of zero-weight segments with the largest total mass."""
    best = None
    i = 0
    while i < weights.size:
        if weights[i] != 0.0:
            i += 1
            continue
        j = i
        while j + 1 < weights.size and weights[j + 1] == 0.0:
            j += 1
        mass = math.fsum(masses[i:j + 1])
        if best is None or mass > best[0]:
            best = (mass, i, j)
        i = j + 1
    return best


def true_optimum(decomp: SegmentDecomposition, spec: DistributionSpec) -> ConsensusInterval:
    """
    The interval I* maximizing the true objective.

    A maximum-weight contiguous run of segments is found and trimmed of
    zero-weight segments at both ends; I* is its closure. If the best run
    weighs exactly 0, the zero-weight run with the most mass is returned.
    If every weight is negative, Phi* = 0 is attained only by zero-mass
    intervals and the degenerate interval at the midpoint of the first
    highest-label segment is returned.

    Args:
        decomp: Segment decomposition of the voters
        spec: Issue distribution

    Returns:
        ConsensusInterval with true_objective set (sample indices are -1)
    """
    masses = build_distribution(spec).segment_masses(decomp.breakpoints)
    weights = decomp.segment_labels * masses
    best, j, k = _max_weight_run(weights)

    if best > 0:
        while weights[j] == 0.0 and j < k:
            j += 1
        while weights[k] == 0.0 and k > j:
            k -= 1
        lo, hi = float(decomp.breakpoints[j]), float(decomp.breakpoints[k + 1])
        phi = true_objective(decomp, spec, lo, hi)
    elif best == 0:
        _, j, k = _largest_zero_run(weights, masses)
        lo, hi = float(decomp.breakpoints[j]), float(decomp.breakpoints[k + 1])
        phi = 0.0
    else:
        top = int(np.argmax(decomp.segment_labels))
        lo = hi = float(decomp.midpoints[top])
        phi = 0.0

    logger.debug(f"True optimum [{lo:.6g}, {hi:.6g}] with objective {phi:.6g}")
    return ConsensusInterval(lo=lo, hi=hi, empirical_score=0.0, true_objective=phi)


def monte_carlo_objective(
    voters: Sequence[VoterInterval],
    spec: DistributionSpec,
    lo: float,
    hi: float,
    rng: np.random.Generator,
    m: int,
) -> float:
    """
    Monte-Carlo estimate (1/m) sum l(x_i) 1{x_i in [lo, hi]} from m fresh draws.

    Its standard error is at most n / sqrt(m).
    """
    _check_interval(lo, hi)
    scored = score_sweepline(voters, sample(spec, rng, m))
    inside = (scored.xs >= lo) & (scored.xs <= hi)
    return float(scored.labels[inside].sum()) / m


def erm_guarantee_holds(phi_hat: float, phi_opt: float, epsilon: float) -> bool:
    """Whether Phi(I_hat) >= Phi* - 2 epsilon, the uniform-convergence corollary."""
    return phi_hat >= phi_opt - 2.0 * epsilon
