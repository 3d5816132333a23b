"""DistributionSpec: parameters of an issue distribution on [0, 1]."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Any, Optional

from consensusmine.errors import ConfigurationError


class DistributionKind(str, Enum):
    """Supported issue distributions."""

    UNIFORM = "uniform"
    TRUNCNORM = "truncnorm"
    TRUNCEXP = "truncexp"


DEFAULT_MU = 0.5
DEFAULT_SIGMA = 0.1
DEFAULT_LAMBDA = 4.0


@dataclass(frozen=True)
class DistributionSpec:
    """
    Issue distribution P(x), always supported on exactly [0, 1].

    Attributes:
        kind: Distribution family
        mu: Mean of the untruncated normal (truncnorm only)
        sigma: Standard deviation of the untruncated normal (truncnorm only)
        lam: Rate of the untruncated exponential (truncexp only)
    """

    kind: DistributionKind = DistributionKind.UNIFORM
    mu: float = DEFAULT_MU
    sigma: float = DEFAULT_SIGMA
    lam: float = DEFAULT_LAMBDA

    def __post_init__(self):
        """Coerce the kind and validate family parameters."""
        try:
            object.__setattr__(self, "kind", DistributionKind(self.kind))
        except ValueError:
            raise ConfigurationError(f"Unknown distribution kind: {self.kind!r}")

        if self.kind is DistributionKind.TRUNCNORM and not self.sigma > 0:
            raise ConfigurationError(f"sigma must be > 0, got {self.sigma}")
        if self.kind is DistributionKind.TRUNCEXP and not self.lam > 0:
            raise ConfigurationError(f"lambda must be > 0, got {self.lam}")

    @classmethod
    def uniform(cls) -> "DistributionSpec":
        return cls(kind=DistributionKind.UNIFORM)

    @classmethod
    def truncnorm(cls, mu: float = DEFAULT_MU, sigma: float = DEFAULT_SIGMA) -> "DistributionSpec":
        return cls(kind=DistributionKind.TRUNCNORM, mu=mu, sigma=sigma)

    @classmethod
    def truncexp(cls, lam: float = DEFAULT_LAMBDA) -> "DistributionSpec":
        return cls(kind=DistributionKind.TRUNCEXP, lam=lam)

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert to the JSON form.

        Only the parameters of the active family are emitted.
        """
        data: Dict[str, Any] = {"kind": self.kind.value}
        if self.kind is DistributionKind.TRUNCNORM:
            data["mu"] = self.mu
            data["sigma"] = self.sigma
        elif self.kind is DistributionKind.TRUNCEXP:
            data["lambda"] = self.lam
        return data

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> "DistributionSpec":
        """
        Create a DistributionSpec from its JSON form.

        Args:
            data: Dict with "kind" and optional "mu", "sigma", "lambda"

        Returns:
            DistributionSpec instance

        Raises:
            ConfigurationError: If the kind or a parameter is invalid
        """
        if not data:
            return cls()
        if not isinstance(data, dict) or "kind" not in data:
            raise ConfigurationError(f"Distribution spec needs a 'kind', got {data!r}")
        try:
            mu = float(data.get("mu", DEFAULT_MU))
            sigma = float(data.get("sigma", DEFAULT_SIGMA))
            lam = float(data.get("lambda", DEFAULT_LAMBDA))
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"Non-numeric distribution parameter in {data!r}: {e}")
        return cls(kind=data["kind"], mu=mu, sigma=sigma, lam=lam)

    def label(self) -> str:
        """Short human-readable name, e.g. 'truncnorm(0.5, 0.1)'."""
        if self.kind is DistributionKind.TRUNCNORM:
            return f"truncnorm({self.mu:g}, {self.sigma:g})"
        if self.kind is DistributionKind.TRUNCEXP:
            return f"truncexp({self.lam:g})"
        return "uniform"
