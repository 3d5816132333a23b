"""Test synthetic voter generation."""

import numpy as np
import pytest
from scipy import stats

from consensusmine.distributions import DistributionSpec
from consensusmine.errors import ConfigurationError
from consensusmine.synthesis import (
    WIDTH_PRESETS,
    VoterGenSpec,
    generate_scenario,
    generate_voters,
    place_interval,
)


@pytest.mark.parametrize(
    "width,center,expected",
    [
        (0.4, 0.5, (0.3, 0.7)),
        (0.4, 0.1, (0.0, 0.4)),
        (0.4, 0.95, (0.6, 1.0)),
        (1.0, 0.5, (0.0, 1.0)),
        (0.0, 0.3, (0.3, 0.3)),
    ],
)
def test_place_interval(width, center, expected):
    lo, hi = place_interval(width, center)
    assert lo == pytest.approx(expected[0], abs=1e-15)
    assert hi == pytest.approx(expected[1], abs=1e-15)


def test_generated_widths_stay_in_range():
    spec = VoterGenSpec(n=500, w_min=0.4, w_max=0.6)
    voters = generate_voters(spec, np.random.default_rng(3))
    assert len(voters) == 500
    for v in voters:
        assert 0.0 <= v.lo <= v.hi <= 1.0
        assert 0.4 - 1e-12 <= v.width <= 0.6 + 1e-12, f"Width {v.width} out of range"


def test_clamped_voters_keep_their_width():
    spec = VoterGenSpec(n=2000, w_min=0.5, w_max=0.5)
    voters = generate_voters(spec, np.random.default_rng(4))
    pinned = [v for v in voters if v.lo == 0.0 or v.hi == 1.0]
    assert pinned, "Centers near the edges must produce clamped voters"
    for v in voters:
        assert v.width == pytest.approx(0.5, abs=1e-12)


def test_fixed_width_centers_are_uniform_with_edge_atoms():
    spec = VoterGenSpec(n=100_000, w_min=0.4, w_max=0.4)
    voters = generate_voters(spec, np.random.default_rng(8))
    centers = np.array([(v.lo + v.hi) / 2.0 for v in voters])

    low_atom = np.isclose(centers, 0.2, rtol=0.0, atol=1e-12)
    high_atom = np.isclose(centers, 0.8, rtol=0.0, atol=1e-12)
    for name, atom in [("0.2", low_atom), ("0.8", high_atom)]:
        share = atom.mean()
        assert abs(share - 0.2) < 0.005, f"Atom at {name} holds {share} of the centers"

    interior = centers[~(low_atom | high_atom)]
    assert np.all((interior > 0.2) & (interior < 0.8))
    counts, _ = np.histogram(interior, bins=20, range=(0.2, 0.8))
    result = stats.chisquare(counts)
    assert result.pvalue > 0.001, f"Interior centers are not uniform: {result}"


def test_scenario_generation_is_deterministic():
    spec = VoterGenSpec(n=50)
    a = generate_scenario(spec, DistributionSpec.uniform(), seed=12, trial_id=3)
    b = generate_scenario(spec, DistributionSpec.uniform(), seed=12, trial_id=3)
    c = generate_scenario(spec, DistributionSpec.uniform(), seed=12, trial_id=4)
    assert a == b
    assert a.voters != c.voters
    assert a.seed == 12
    assert a.n == 50


def test_spec_validation():
    with pytest.raises(ConfigurationError):
        VoterGenSpec(n=0)
    with pytest.raises(ConfigurationError):
        VoterGenSpec(w_min=0.7, w_max=0.6)
    with pytest.raises(ConfigurationError):
        VoterGenSpec(w_max=1.5)
    with pytest.raises(ConfigurationError):
        VoterGenSpec.from_dict({"n": 10})
    with pytest.raises(ConfigurationError):
        VoterGenSpec.from_dict({"n": "ten", "w_min": 0.4, "w_max": 0.6})
    with pytest.raises(ConfigurationError):
        VoterGenSpec.from_dict({"n": 10, "w_min": "narrow", "w_max": 0.6})


def test_spec_dict_form():
    spec = VoterGenSpec(n=10, w_min=0.1, w_max=0.2)
    assert VoterGenSpec.from_dict(spec.to_dict()) == spec
    assert WIDTH_PRESETS["figure4"] == (0.4, 0.6)
