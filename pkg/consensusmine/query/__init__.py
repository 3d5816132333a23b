"""Labeling strategies with query accounting."""

from typing import Optional

from consensusmine.errors import ConfigurationError

from .ledger import QueryLedger, ApprovalOracle
from .base_strategy import LabelingStrategy
from .full import FullLabeling, label_full
from .fractional import FractionalLabeling, label_fractional, subset_size
from .binary_search import BinarySearchLabeling, label_binary_search, dyadic_probe_order

STRATEGY_NAMES = ("full", "fractional", "binary")


def build_strategy(
    name: str,
    fraction: Optional[float] = None,
    subset_per_trial: bool = False,
    track_pairs: bool = False,
) -> LabelingStrategy:
    """
    Instantiate a labeling strategy by name.

    Args:
        name: "full", "fractional" or "binary"
        fraction: Voter share for the fractional strategy
        subset_per_trial: Fractional strategy draws one subset for all points
        track_pairs: Binary search records billed pairs

    Returns:
        LabelingStrategy instance

    Raises:
        ConfigurationError: For unknown names or a missing fraction
    """
    if name == "full":
        return FullLabeling()
    if name == "fractional":
        if fraction is None:
            raise ConfigurationError("The fractional strategy needs --fraction")
        return FractionalLabeling(fraction, subset_per_trial=subset_per_trial)
    if name == "binary":
        return BinarySearchLabeling(track_pairs=track_pairs)
    raise ConfigurationError(f"Unknown strategy: {name!r} (expected one of {STRATEGY_NAMES})")


__all__ = [
    "QueryLedger",
    "ApprovalOracle",
    "LabelingStrategy",
    "FullLabeling",
    "FractionalLabeling",
    "BinarySearchLabeling",
    "label_full",
    "label_fractional",
    "label_binary_search",
    "subset_size",
    "dyadic_probe_order",
    "build_strategy",
    "STRATEGY_NAMES",
]
