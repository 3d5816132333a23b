"""Stable ID generation and deterministic RNG stream derivation."""

import hashlib
import json
from typing import Dict, Any

import numpy as np

from consensusmine.errors import ConfigurationError

# Sub-stream identifiers under one (seed, trial_id) pair.
STREAM_VOTERS = 0
STREAM_SAMPLES = 1
STREAM_QUERIES = 2


def canonical_json(data: Dict[str, Any]) -> str:
    """
    Serialize a dict deterministically (sorted keys, no whitespace).

    Args:
        data: JSON-compatible dictionary

    Returns:
        Canonical JSON string
    """
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def generate_config_hash(config: Dict[str, Any]) -> str:
    """
    Generate a deterministic ID for an experiment configuration.

    The same configuration always hashes to the same ID, so re-running an
    experiment addresses the same rows in the store.

    Args:
        config: Configuration dictionary (ExperimentConfig.to_dict())

    Returns:
        SHA256 hash as hex string
    """
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()


def generate_result_id(config_hash: str, trial_id: int, sweep_index: int) -> str:
    """
    Generate a deterministic ID for one trial at one sweep value.

    Example:
        >>> generate_result_id("ab12...", 3, 0)
        'f00d...'
    """
    components = f"{config_hash}|{trial_id}|{sweep_index}"
    return hashlib.sha256(components.encode("utf-8")).hexdigest()


def seed_sequence(seed: int, trial_id: int, stream: int) -> np.random.SeedSequence:
    """
    Derive the seed sequence of one sub-stream.

    Streams are keyed by (seed, trial_id, stream) through SeedSequence spawn
    keys, so a trial's draws do not depend on which worker runs it or on how
    many other trials exist.

    Args:
        seed: Experiment seed (unsigned 64-bit)
        trial_id: Trial index
        stream: STREAM_VOTERS, STREAM_SAMPLES, or STREAM_QUERIES + sweep_index

    Returns:
        numpy SeedSequence
    """
    if seed < 0 or seed >= 2**64:
        raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.SeedSequence(entropy=seed, spawn_key=(trial_id, stream))


def stream_generator(seed: int, trial_id: int, stream: int) -> np.random.Generator:
    """PCG64 generator for one sub-stream (see seed_sequence)."""
    return np.random.Generator(np.random.PCG64(seed_sequence(seed, trial_id, stream)))


def query_stream(seed: int, trial_id: int, sweep_index: int) -> np.random.Generator:
    """Generator for strategy randomness at one sweep value."""
    return stream_generator(seed, trial_id, STREAM_QUERIES + sweep_index)
