"""Synthetic voter generation."""

from .voter_generator import (
    VoterGenSpec,
    WIDTH_PRESETS,
    place_interval,
    generate_voters,
    generate_scenario,
)

__all__ = [
    "VoterGenSpec",
    "WIDTH_PRESETS",
    "place_interval",
    "generate_voters",
    "generate_scenario",
]
