"""Test the seeded experiment harness, its configuration and presets."""

import csv
import io

import pytest

from consensusmine.distributions import DistributionSpec
from consensusmine.errors import ConfigurationError
from consensusmine.experiments import (
    DETAIL_COLUMNS,
    SUMMARY_COLUMNS,
    ExperimentConfig,
    SweepKind,
    SweepSpec,
    aggregate,
    default_sample_grid,
    detail_path,
    get_preset,
    run_binary_search_sweep,
    run_experiment,
    run_fraction_sweep,
    run_samples_sweep,
    run_trial,
    success_fraction_at,
    sweep_values,
    write_csv,
    write_detail_csv,
)
from consensusmine.experiments.presets import FIGURE3_FRACTIONS, FIGURE4_SAMPLE_COUNTS


def small_config(kind=SweepKind.SAMPLES, values=(200, 50), **overrides):
    sweep = SweepSpec(kind=kind, values=values, m=overrides.pop("m", 200))
    defaults = dict(n=10, trials=4, epsilon=0.05, delta=0.05, sweep=sweep, seed=5)
    defaults.update(overrides)
    return ExperimentConfig(**defaults)


def _csv_text(rows):
    buffer = io.StringIO()
    write_csv(rows, buffer)
    return buffer.getvalue()


# ============================================================================
# Configuration
# ============================================================================

def test_config_validation():
    with pytest.raises(ConfigurationError):
        small_config(trials=0)
    with pytest.raises(ConfigurationError):
        small_config(epsilon=0.0)
    with pytest.raises(ConfigurationError):
        small_config(score_scale="percent")
    with pytest.raises(ConfigurationError):
        SweepSpec(kind=SweepKind.FRACTIONS, values=(0.0,))
    with pytest.raises(ConfigurationError):
        SweepSpec(kind=SweepKind.SAMPLES, values=(2.5,))
    with pytest.raises(ConfigurationError):
        SweepSpec(kind=SweepKind.BINARY, values=(0,))
    with pytest.raises(ConfigurationError):
        SweepSpec(kind="grid", values=(1,))


def test_voter_spec_follows_n():
    config = small_config(n=17)
    assert config.voter_spec.n == 17
    assert config.with_overrides(n=30, w_min=0.1).voter_spec.n == 30
    assert config.with_overrides(n=30, w_min=0.1).voter_spec.w_min == 0.1
    assert config.with_overrides(trials=None).trials == 4


def test_config_hash_and_round_trip():
    config = small_config()
    again = ExperimentConfig.from_dict(config.to_dict())
    assert again == config
    assert again.config_hash == config.config_hash
    assert small_config(seed=6).config_hash != config.config_hash


@pytest.mark.parametrize("kind", [SweepKind.SAMPLES, SweepKind.BINARY])
def test_sample_sweeps_ignore_m(kind):
    config = small_config(kind=kind, m=123)
    assert config.sweep.m == SweepSpec(kind=kind, values=(200, 50)).m
    again = ExperimentConfig.from_dict(config.to_dict())
    assert again == config, f"Round trip changed {config.sweep} into {again.sweep}"
    assert again.config_hash == config.config_hash

    fractions = small_config(kind=SweepKind.FRACTIONS, values=(1.0, 0.5), m=123)
    assert ExperimentConfig.from_dict(fractions.to_dict()).sweep.m == 123


def test_non_numeric_config_fields_are_configuration_errors():
    data = small_config().to_dict()
    for key, value in [("trials", "many"), ("epsilon", "tight"), ("seed", "x")]:
        with pytest.raises(ConfigurationError):
            ExperimentConfig.from_dict({**data, key: value})
    with pytest.raises(ConfigurationError):
        ExperimentConfig.from_dict({**data, "sweep": {"kind": "samples", "values": ["lots"]}})
    with pytest.raises(ConfigurationError):
        ExperimentConfig.from_dict({**data, "sweep": {"kind": "fractions", "values": [0.5], "m": "big"}})
    with pytest.raises(ConfigurationError):
        SweepSpec(kind=SweepKind.SAMPLES, values=(float("nan"),))


def test_sweep_helpers():
    assert sweep_values([100, 10, 100, 1]) == (100, 10, 1)
    fractions = SweepSpec(kind=SweepKind.FRACTIONS, values=(1.0, 0.5), m=300)
    assert fractions.sample_count(1) == 300
    assert fractions.sweep_param == "fraction"
    assert SweepSpec(kind=SweepKind.SAMPLES, values=(5, 50)).max_samples() == 50


def test_default_sample_grid():
    grid = default_sample_grid(100, 0.01, 0.01)
    assert grid[0] == 138156
    assert grid[-1] == 10
    assert len(grid) <= 20
    assert list(grid) == sorted(grid, reverse=True)
    assert default_sample_grid(10, 0.1, 0.05)[0] == 761


def test_presets():
    fig2 = get_preset("figure2")
    assert fig2.sweep.kind is SweepKind.SAMPLES
    assert fig2.sweep.values[0] == 138156
    assert fig2.voter_spec.w_min == 0.4 and fig2.voter_spec.w_max == 0.6

    fig2_small = get_preset("figure2", n=10, epsilon=0.1, delta=0.05)
    assert fig2_small.sweep.values[0] == 761

    fig3 = get_preset("figure3")
    assert fig3.sweep.values == FIGURE3_FRACTIONS
    assert fig3.sweep.m == 10000
    assert fig3.strategy == "fractional"

    fig4 = get_preset("figure4", trials=3)
    assert fig4.sweep.values == FIGURE4_SAMPLE_COUNTS
    assert fig4.trials == 3
    assert fig4.preset == "figure4"

    with pytest.raises(ConfigurationError):
        get_preset("figure9")


# ============================================================================
# Trials
# ============================================================================

def test_trial_is_deterministic():
    config = small_config()
    first = run_trial(config, 2)
    second = run_trial(config, 2)
    assert first == second
    assert [r.sweep_index for r in first] == [0, 1]
    assert [r.m for r in first] == [200, 50]


def test_trial_results_are_consistent():
    config = small_config()
    for result in run_trial(config, 0):
        assert result.phi_hat <= result.phi_opt + 1e-9
        assert result.phi_gap == pytest.approx((result.phi_opt - result.phi_hat) / config.n)
        assert result.success == (result.phi_gap <= config.epsilon)
        assert result.queries["total"] == config.n * result.m


def test_single_sample_trial():
    config = small_config(values=(1,))
    (result,) = run_trial(config, 0)
    assert result.interval.is_degenerate
    assert (result.interval.sample_index_lo, result.interval.sample_index_hi) == (0, 0)


def test_fraction_one_matches_full_labels():
    full = run_trial(small_config(values=(200,)), 1)[0]
    frac = run_trial(small_config(kind=SweepKind.FRACTIONS, values=(1.0,), m=200), 1)[0]
    assert frac.interval == full.interval
    assert frac.phi_hat == full.phi_hat
    assert frac.queries["total"] == full.queries["total"]


def test_binary_search_matches_full_labels():
    full = run_trial(small_config(values=(200,)), 3)[0]
    binary = run_trial(small_config(kind=SweepKind.BINARY, values=(200,)), 3)[0]
    assert binary.interval == full.interval
    assert binary.queries["total"] <= full.queries["total"]


# ============================================================================
# Experiments
# ============================================================================

def test_experiment_output_does_not_depend_on_workers():
    config = small_config()
    serial = run_experiment(config, workers=1, progress=False)
    parallel = run_experiment(config, workers=2, progress=False)
    assert serial.trials == parallel.trials
    assert _csv_text(serial.rows) == _csv_text(parallel.rows)


def test_results_are_sorted_and_aggregated():
    config = small_config()
    result = run_experiment(config, progress=False)
    keys = [(r.sweep_index, r.trial_id) for r in result.trials]
    assert keys == sorted(keys)
    assert len(result.rows) == 2
    row = result.row_for(200)
    assert row.trials == 4
    assert row.sweep_param == "m"
    assert row.mean_total_queries == 10 * 200
    assert aggregate(config, result.trials) == result.rows
    with pytest.raises(KeyError):
        result.row_for(7)


def test_success_fraction_is_monotone_in_epsilon():
    config = small_config()
    result = run_experiment(config, progress=False)
    previous = None
    for eps in (0.0, 0.01, 0.05, 0.2, 2.0):
        fractions = success_fraction_at(result.trials, eps, "normalized", config.n)
        if previous is not None:
            for index, value in fractions.items():
                assert value >= previous[index]
        previous = fractions
    assert all(value == 1.0 for value in previous.values()), "Normalized gaps never exceed 2"
    recorded = success_fraction_at(result.trials, config.epsilon, "normalized", config.n)
    assert recorded[0] == result.rows[0].success_fraction


def test_sweep_runners_check_kind():
    with pytest.raises(ConfigurationError):
        run_fraction_sweep(small_config(), progress=False)
    rows = run_samples_sweep(small_config(trials=2), progress=False)
    assert [row.value for row in rows] == [200, 50]
    binary_rows = run_binary_search_sweep(
        small_config(kind=SweepKind.BINARY, values=(64,), trials=2), progress=False
    )
    assert binary_rows[0].mean_queries_per_voter <= 64


def test_run_experiment_rejects_zero_workers():
    with pytest.raises(ConfigurationError):
        run_experiment(small_config(), workers=0)


def test_csv_outputs(tmp_path):
    config = small_config(trials=2)
    result = run_experiment(config, progress=False)

    summary = tmp_path / "out.csv"
    write_csv(result.rows, summary)
    with open(summary) as f:
        rows = list(csv.DictReader(f))
    assert list(rows[0].keys()) == SUMMARY_COLUMNS
    assert [row["value"] for row in rows] == ["200", "50"]

    detail = detail_path(summary)
    assert detail.name == "out.csv.detail.csv"
    write_detail_csv(result, detail)
    with open(detail) as f:
        details = list(csv.DictReader(f))
    assert list(details[0].keys()) == DETAIL_COLUMNS
    assert len(details) == 4
    assert float(details[0]["bound_ratio"]) > 0


def test_distribution_changes_results():
    uniform = run_trial(small_config(values=(100,)), 0)[0]
    skewed = run_trial(small_config(values=(100,), distribution=DistributionSpec.truncexp(4.0)), 0)[0]
    assert uniform.interval != skewed.interval


# ============================================================================
# Reproductions
# ============================================================================

@pytest.mark.slow
def test_sample_sweep_reproduction():
    config = get_preset("figure2", sweep=SweepSpec(kind=SweepKind.SAMPLES, values=(10000, 10)))
    result = run_experiment(config, workers=4, progress=False)
    large, small = result.row_for(10000), result.row_for(10)
    assert large.success_fraction >= 0.9, f"Success at m=10000 is {large.success_fraction}"
    assert large.success_fraction > small.success_fraction


@pytest.mark.slow
def test_fraction_sweep_reproduction():
    fractions = SweepSpec(kind=SweepKind.FRACTIONS, values=(1.0, 0.5, 0.25, 0.1), m=10000)
    uniform = run_experiment(get_preset("figure3", sweep=fractions), workers=4, progress=False)
    curve = [row.success_fraction for row in uniform.rows]
    assert curve == sorted(curve, reverse=True), f"Success must not rise as fraction drops: {curve}"
    assert uniform.row_for(0.25).mean_total_queries == 10000 * 25

    normal = run_experiment(
        get_preset("figure3", sweep=fractions, distribution=DistributionSpec.truncnorm(0.5, 0.1)),
        workers=4,
        progress=False,
    )
    uniform_drop = uniform.row_for(1.0).success_fraction - uniform.row_for(0.5).success_fraction
    normal_drop = normal.row_for(1.0).success_fraction - normal.row_for(0.5).success_fraction
    assert normal_drop <= uniform_drop + 0.05


@pytest.mark.slow
def test_binary_search_reproduction():
    binary = run_experiment(
        get_preset("figure4", sweep=SweepSpec(kind=SweepKind.BINARY, values=(100000,))),
        workers=4,
        progress=False,
    )
    per_voter = binary.rows[0].mean_queries_per_voter
    assert 25 <= per_voter <= 45, f"{per_voter} queries per voter at m=100000"

    full = run_experiment(
        get_preset("figure4", sweep=SweepSpec(kind=SweepKind.SAMPLES, values=(100000,))),
        workers=4,
        progress=False,
    )
    for b, f in zip(binary.trials, full.trials):
        assert b.trial_id == f.trial_id
        assert b.interval == f.interval, f"Trial {b.trial_id}: binary and full ERM differ"
