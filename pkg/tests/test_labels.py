"""Test voter labels, scenarios and stable IDs."""

import json

import numpy as np
import pytest

from consensusmine.distributions import DistributionSpec
from consensusmine.errors import ConfigurationError, DomainError
from consensusmine.models import (
    ConsensusInterval,
    LabeledSample,
    Scenario,
    VoterInterval,
    approval_fraction,
    combined_label,
    generate_config_hash,
    generate_result_id,
    individual_label,
    label_samples,
    load_scenario,
    save_scenario,
    seed_sequence,
    stream_generator,
)


def test_individual_label_closed_interval():
    voter = VoterInterval(0.2, 0.8)
    assert individual_label(voter, 0.5) == 1
    assert individual_label(voter, 0.9) == -1
    assert individual_label(voter, 0.2) == 1, "Left endpoint must be approved"
    assert individual_label(voter, 0.8) == 1, "Right endpoint must be approved"


def test_combined_label_counts():
    voters = [VoterInterval(0.0, 0.6), VoterInterval(0.4, 1.0), VoterInterval(0.7, 0.9)]
    assert combined_label(voters, 0.5) == 1, "Two of three approve: 2*2 - 3"
    assert combined_label([VoterInterval(0.0, 1.0)] * 4, 0.3) == 4
    assert combined_label([VoterInterval(0.5, 0.6)] * 3, 0.1) == -3


def test_combined_label_is_sum_of_individual_labels(random_voters):
    rng = np.random.default_rng(11)
    for _ in range(200):
        voters = random_voters(rng, int(rng.integers(1, 12)))
        x = float(rng.random())
        total = sum(individual_label(v, x) for v in voters)
        label = combined_label(voters, x)
        assert label == total, f"combined_label {label} != sum {total} at x={x}"
        assert abs(label) <= len(voters)
        assert (label + len(voters)) % 2 == 0


def test_approval_fraction():
    voters = [VoterInterval(0.0, 0.5), VoterInterval(0.25, 0.75)]
    assert approval_fraction(voters, 0.1) == 0.5
    assert approval_fraction(voters, 0.3) == 1.0
    n = len(voters)
    assert combined_label(voters, 0.1) == n * (2 * approval_fraction(voters, 0.1) - 1)


@pytest.mark.parametrize("x", [-0.01, 1.01, float("nan")])
def test_points_outside_unit_interval_rejected(x):
    with pytest.raises(DomainError):
        combined_label([VoterInterval(0.0, 1.0)], x)


def test_voter_interval_validation():
    with pytest.raises(DomainError):
        VoterInterval(0.6, 0.4)
    with pytest.raises(DomainError):
        VoterInterval(-0.1, 0.4)
    point = VoterInterval(0.3, 0.3)
    assert point.width == 0.0
    assert individual_label(point, 0.3) == 1


def test_labeled_sample_parity():
    sample = LabeledSample(x=0.5, label=1, n=3)
    assert sample.approvals == 2
    with pytest.raises((DomainError, ValueError)):
        LabeledSample(x=0.5, label=2, n=3)


def test_label_samples_preserves_order():
    voters = [VoterInterval(0.2, 0.8)]
    labeled = label_samples(voters, [0.9, 0.5, 0.1])
    assert [s.label for s in labeled] == [-1, 1, -1]
    assert [s.x for s in labeled] == [0.9, 0.5, 0.1]


def test_scenario_json_round_trip(tmp_path):
    scenario = Scenario(
        voters=(VoterInterval(0.1, 0.30000000000000004), VoterInterval(0.25, 0.75)),
        distribution=DistributionSpec.truncnorm(0.5, 0.1),
        seed=42,
    )
    path = tmp_path / "scenario.json"
    save_scenario(scenario, path)

    data = json.loads(path.read_text())
    assert data["n"] == 2
    assert data["voters"][0] == {"lo": 0.1, "hi": 0.30000000000000004}
    assert data["distribution"] == {"kind": "truncnorm", "mu": 0.5, "sigma": 0.1}

    loaded = load_scenario(path)
    assert loaded == scenario, f"Round trip changed the scenario: {loaded}"


def test_scenario_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_scenario(tmp_path / "missing.json")

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigurationError):
        load_scenario(bad)

    with pytest.raises(ConfigurationError):
        Scenario.from_dict({"n": 3, "voters": [{"lo": 0.1, "hi": 0.2}]})

    with pytest.raises(ConfigurationError):
        Scenario(voters=())


def test_non_numeric_scenario_fields_are_configuration_errors():
    with pytest.raises(ConfigurationError):
        VoterInterval.from_dict({"lo": "abc", "hi": 0.5})
    with pytest.raises(ConfigurationError):
        VoterInterval.from_dict({"lo": 0.1})
    with pytest.raises(ConfigurationError):
        Scenario.from_dict({"voters": [{"lo": 0.1, "hi": 0.5}], "seed": "x"})
    with pytest.raises(ConfigurationError):
        Scenario.from_dict({"voters": [{"lo": 0.1, "hi": 0.5}], "distribution": {"kind": "truncexp", "lambda": "fast"}})
    with pytest.raises(DomainError):
        Scenario.from_dict({"voters": [{"lo": 0.6, "hi": 0.5}]})


def test_consensus_interval():
    interval = ConsensusInterval(lo=0.3, hi=0.4, empirical_score=7, sample_index_lo=2, sample_index_hi=3)
    assert interval.sample_count == 2
    assert interval.empirical_objective(10) == 0.7
    assert not interval.is_degenerate
    assert interval.to_dict()["interval"] == [0.3, 0.4]
    with pytest.raises(DomainError):
        ConsensusInterval(lo=0.5, hi=0.4)


def test_config_hash_is_order_independent():
    a = generate_config_hash({"n": 100, "seed": 1, "sweep": {"kind": "binary"}})
    b = generate_config_hash({"sweep": {"kind": "binary"}, "seed": 1, "n": 100})
    c = generate_config_hash({"n": 100, "seed": 2, "sweep": {"kind": "binary"}})
    assert a == b
    assert a != c
    assert len(a) == 64


def test_result_ids_are_deterministic():
    assert generate_result_id("abc", 3, 0) == generate_result_id("abc", 3, 0)
    assert generate_result_id("abc", 3, 0) != generate_result_id("abc", 0, 3)


def test_streams_are_reproducible_and_distinct():
    first = stream_generator(7, 3, 1).random(5)
    again = stream_generator(7, 3, 1).random(5)
    other_trial = stream_generator(7, 4, 1).random(5)
    other_stream = stream_generator(7, 3, 0).random(5)
    assert np.array_equal(first, again)
    assert not np.array_equal(first, other_trial)
    assert not np.array_equal(first, other_stream)

    with pytest.raises(ConfigurationError):
        seed_sequence(-1, 0, 0)
