"""Data models for voters, scenarios and consensus intervals."""

from .voter_interval import (
    VoterInterval,
    individual_label,
    combined_label,
    approval_fraction,
    voter_bounds,
    voters_from_bounds,
)
from .scenario import Scenario, LabeledSample, label_samples, load_scenario, save_scenario
from .consensus_interval import ConsensusInterval
from .stable_id import (
    canonical_json,
    generate_config_hash,
    generate_result_id,
    seed_sequence,
    stream_generator,
    query_stream,
    STREAM_VOTERS,
    STREAM_SAMPLES,
    STREAM_QUERIES,
)

__all__ = [
    "VoterInterval",
    "individual_label",
    "combined_label",
    "approval_fraction",
    "voter_bounds",
    "voters_from_bounds",
    "Scenario",
    "LabeledSample",
    "label_samples",
    "load_scenario",
    "save_scenario",
    "ConsensusInterval",
    "canonical_json",
    "generate_config_hash",
    "generate_result_id",
    "seed_sequence",
    "stream_generator",
    "query_stream",
    "STREAM_VOTERS",
    "STREAM_SAMPLES",
    "STREAM_QUERIES",
]
