"""Exception types raised across consensusmine."""


class ConsensusError(Exception):
    """Base class for all consensusmine errors."""


class ConfigurationError(ConsensusError, ValueError):
    """Invalid distribution, generator, bound or experiment parameters."""


class DomainError(ConsensusError, ValueError):
    """An argument lies outside the opinion space or violates ordering."""


class EmptySampleError(ConsensusError, ValueError):
    """Raised when an operation needs at least one sample issue."""

    def __init__(self, message: str = "no samples"):
        super().__init__(message)


class InvariantViolation(ConsensusError, RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""
