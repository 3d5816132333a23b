"""Exact objective oracle for known scenarios."""

from .segments import SegmentDecomposition, decompose
from .objective import (
    segment_weights,
    true_objective,
    normalized_objective,
    agreement_score,
    true_optimum,
    monte_carlo_objective,
    erm_guarantee_holds,
)

__all__ = [
    "SegmentDecomposition",
    "decompose",
    "segment_weights",
    "true_objective",
    "normalized_objective",
    "agreement_score",
    "true_optimum",
    "monte_carlo_objective",
    "erm_guarantee_holds",
]
