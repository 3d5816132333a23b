"""Uniform, truncated normal and truncated exponential distributions on [0, 1]."""

import logging
import math

import numpy as np
from scipy.special import ndtr, ndtri

from consensusmine.distributions.base_distribution import IssueDistribution
from consensusmine.errors import ConfigurationError

logger = logging.getLogger(__name__)

_SQRT_2PI = math.sqrt(2.0 * math.pi)

PPF_TOLERANCE = 1e-12
MAX_NEWTON_STEPS = 50


class UniformDistribution(IssueDistribution):
    """U(0, 1)."""

    def _cdf(self, x: np.ndarray) -> np.ndarray:
        return x

    def _ppf(self, u: np.ndarray) -> np.ndarray:
        return u

    def __repr__(self) -> str:
        return "UniformDistribution()"


class TruncatedNormal(IssueDistribution):
    """
    Normal(mu, sigma) conditioned on [0, 1].

    The standard normal CDF is scipy's ndtr (erfc-based, ~1e-16 accuracy).
    The inverse maps u into the untruncated CDF range and applies ndtri,
    followed by Newton refinement against the truncated CDF until no
    position moves by more than tolerance (at most max_newton_steps rounds).
    """

    def __init__(
        self,
        mu: float = 0.5,
        sigma: float = 0.1,
        tolerance: float = PPF_TOLERANCE,
        max_newton_steps: int = MAX_NEWTON_STEPS,
    ):
        if not sigma > 0:
            raise ConfigurationError(f"sigma must be > 0, got {sigma}")
        self.mu = mu
        self.sigma = sigma
        self.tolerance = tolerance
        self.max_newton_steps = max_newton_steps
        self._lower = float(ndtr((0.0 - mu) / sigma))
        self._upper = float(ndtr((1.0 - mu) / sigma))
        self._mass = self._upper - self._lower
        if not self._mass > 0:
            raise ConfigurationError(
                f"Normal({mu}, {sigma}) places no representable mass on [0, 1]"
            )

    def _cdf(self, x: np.ndarray) -> np.ndarray:
        return (ndtr((x - self.mu) / self.sigma) - self._lower) / self._mass

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        z = (x - self.mu) / self.sigma
        return np.exp(-0.5 * z * z) / (_SQRT_2PI * self.sigma * self._mass)

    def _ppf(self, u: np.ndarray) -> np.ndarray:
        p = np.clip(self._lower + u * self._mass, self._lower, self._upper)
        x = np.clip(self.mu + self.sigma * ndtri(p), 0.0, 1.0)
        for _ in range(self.max_newton_steps):
            density = self._pdf(x)
            step = np.where(density > 1e-300, (self._cdf(x) - u) / np.maximum(density, 1e-300), 0.0)
            refined = np.clip(x - step, 0.0, 1.0)
            moved = float(np.max(np.abs(refined - x), initial=0.0))
            x = refined
            if moved <= self.tolerance:
                break
        else:
            logger.debug(f"{self!r}: ppf stopped after {self.max_newton_steps} Newton steps")
        return x

    def __repr__(self) -> str:
        return f"TruncatedNormal(mu={self.mu}, sigma={self.sigma})"


class TruncatedExponential(IssueDistribution):
    """Exponential(lam) conditioned on [0, 1]."""

    def __init__(self, lam: float = 4.0):
        if not lam > 0:
            raise ConfigurationError(f"lambda must be > 0, got {lam}")
        self.lam = lam
        self._norm = math.expm1(-lam)  # -(1 - e^{-lam})

    def _cdf(self, x: np.ndarray) -> np.ndarray:
        return np.expm1(-self.lam * x) / self._norm

    def _ppf(self, u: np.ndarray) -> np.ndarray:
        return -np.log1p(u * self._norm) / self.lam

    def mean(self) -> float:
        """Closed-form mean 1/lam - e^{-lam} / (1 - e^{-lam})."""
        return 1.0 / self.lam + math.exp(-self.lam) / self._norm

    def __repr__(self) -> str:
        return f"TruncatedExponential(lam={self.lam})"
