"""Issue distributions on [0, 1]: sampling, CDF and interval mass."""

from functools import lru_cache
from typing import Union

import numpy as np

from .spec import DistributionSpec, DistributionKind
from .base_distribution import IssueDistribution
from .truncated import UniformDistribution, TruncatedNormal, TruncatedExponential


@lru_cache(maxsize=64)
def build_distribution(spec: DistributionSpec) -> IssueDistribution:
    """
    Instantiate the distribution described by a spec.

    Args:
        spec: Distribution parameters

    Returns:
        IssueDistribution implementation (cached per spec)
    """
    if spec.kind is DistributionKind.TRUNCNORM:
        return TruncatedNormal(mu=spec.mu, sigma=spec.sigma)
    if spec.kind is DistributionKind.TRUNCEXP:
        return TruncatedExponential(lam=spec.lam)
    return UniformDistribution()


def sample(spec: DistributionSpec, rng: np.random.Generator, count: int) -> np.ndarray:
    """Draw count i.i.d. issues from spec using rng."""
    return build_distribution(spec).sample(rng, count)


def cdf(spec: DistributionSpec, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """CDF of spec at x in [0, 1]."""
    return build_distribution(spec).cdf(x)


def interval_mass(spec: DistributionSpec, lo: float, hi: float) -> float:
    """P(lo <= X <= hi) under spec."""
    return build_distribution(spec).interval_mass(lo, hi)


__all__ = [
    "DistributionSpec",
    "DistributionKind",
    "IssueDistribution",
    "UniformDistribution",
    "TruncatedNormal",
    "TruncatedExponential",
    "build_distribution",
    "sample",
    "cdf",
    "interval_mass",
]
