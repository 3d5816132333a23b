"""Base class for issue distributions on [0, 1]."""

from abc import ABC, abstractmethod
from typing import Union

import numpy as np

from consensusmine.errors import DomainError

ArrayLike = Union[float, np.ndarray]


class IssueDistribution(ABC):
    """
    Abstract base class for issue distributions supported on [0, 1].

    Implementations must be:
    1. Exact: cdf(0) = 0, cdf(1) = 1, monotone in between
    2. Invertible: ppf(cdf(x)) recovers x to numerical precision
    3. Rejection-free: sampling is inverse-CDF on uniform draws
    """

    @abstractmethod
    def _cdf(self, x: np.ndarray) -> np.ndarray:
        """CDF on an already-validated array."""

    @abstractmethod
    def _ppf(self, u: np.ndarray) -> np.ndarray:
        """Inverse CDF on an array of probabilities in [0, 1]."""

    def cdf(self, x: ArrayLike) -> ArrayLike:
        """
        Cumulative distribution function.

        Args:
            x: Position(s) in [0, 1]

        Returns:
            P(X <= x), same shape as x

        Raises:
            DomainError: If any x lies outside [0, 1]
        """
        arr = np.asarray(x, dtype=np.float64)
        if np.any((arr < 0.0) | (arr > 1.0)) or np.any(np.isnan(arr)):
            raise DomainError(f"cdf is defined on [0, 1], got {x}")
        out = np.clip(self._cdf(arr), 0.0, 1.0)
        # Pin the support endpoints exactly.
        out = np.where(arr == 0.0, 0.0, np.where(arr == 1.0, 1.0, out))
        return float(out) if out.ndim == 0 else out

    def ppf(self, u: ArrayLike) -> ArrayLike:
        """
        Inverse CDF.

        Args:
            u: Probability (or array) in [0, 1]

        Returns:
            Position(s) in [0, 1]
        """
        arr = np.asarray(u, dtype=np.float64)
        if np.any((arr < 0.0) | (arr > 1.0)) or np.any(np.isnan(arr)):
            raise DomainError(f"ppf is defined on [0, 1], got {u}")
        out = np.clip(self._ppf(arr), 0.0, 1.0)
        return float(out) if out.ndim == 0 else out

    def interval_mass(self, lo: float, hi: float) -> float:
        """
        Probability mass of [lo, hi].

        Raises:
            DomainError: If lo > hi or either endpoint is outside [0, 1]
        """
        if lo > hi:
            raise DomainError(f"interval_mass needs lo <= hi, got [{lo}, {hi}]")
        if lo == hi:
            return 0.0
        return max(0.0, self.cdf(hi) - self.cdf(lo))

    def segment_masses(self, breakpoints: np.ndarray) -> np.ndarray:
        """Masses of consecutive [b_i, b_{i+1}] for sorted breakpoints."""
        return np.maximum(np.diff(self.cdf(np.asarray(breakpoints, dtype=np.float64))), 0.0)

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """
        Draw i.i.d. issues by inverse-CDF transform of uniform draws.

        Args:
            rng: Generator owned by the caller (one sub-stream per trial)
            count: Number of draws (>= 0)

        Returns:
            float64 array of length count, all in [0, 1]
        """
        if count < 0:
            raise DomainError(f"count must be >= 0, got {count}")
        if count == 0:
            return np.empty(0, dtype=np.float64)
        return np.asarray(self.ppf(rng.random(count)), dtype=np.float64)
