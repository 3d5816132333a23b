"""Sample-complexity bounds and pseudo-dimension checks."""

from .bounds import (
    BoundInputs,
    sample_complexity,
    experiment_baseline,
    bound_terms,
    epsilon_for_samples,
)
from .shattering import (
    ShatterResult,
    ShatterAudit,
    interval_patterns,
    canonical_thresholds,
    check_pseudo_shatter,
    find_shattering_witness,
    audit_random_shattering,
)

__all__ = [
    "BoundInputs",
    "sample_complexity",
    "experiment_baseline",
    "bound_terms",
    "epsilon_for_samples",
    "ShatterResult",
    "ShatterAudit",
    "interval_patterns",
    "canonical_thresholds",
    "check_pseudo_shatter",
    "find_shattering_witness",
    "audit_random_shattering",
]
