"""Sample scoring and ERM interval selection."""

from .labeling import ScoredSampleArray, prepare_samples, score_naive, score_sweepline
from .erm import erm_interval, erm_bruteforce, empirical_objective

__all__ = [
    "ScoredSampleArray",
    "prepare_samples",
    "score_naive",
    "score_sweepline",
    "erm_interval",
    "erm_bruteforce",
    "empirical_objective",
]
