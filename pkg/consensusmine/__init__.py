"""
consensusmine - consensus intervals for voters with interval approval preferences.

Quick start:
    >>> from consensusmine import ConsensusPipeline
    >>> from consensusmine.models import Scenario, VoterInterval
    >>> scenario = Scenario(voters=(VoterInterval(0.0, 0.5), VoterInterval(0.25, 0.75)))
    >>> pipeline = ConsensusPipeline(scenario)
    >>> report = pipeline.find_consensus([0.9, 0.3, 0.4])
    >>> report.interval.lo, report.interval.hi
    (0.3, 0.4)
"""

__version__ = "0.1.0"

from consensusmine.pipeline import ConsensusPipeline, ConsensusReport

__all__ = ["ConsensusPipeline", "ConsensusReport", "__version__"]
