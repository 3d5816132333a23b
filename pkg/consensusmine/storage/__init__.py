"""Persistent experiment storage."""

from .experiment_store import ExperimentStore

__all__ = ["ExperimentStore"]
