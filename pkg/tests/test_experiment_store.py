"""Test idempotent experiment storage."""

import pytest

from consensusmine.experiments import ExperimentConfig, SweepKind, SweepSpec, run_experiment
from consensusmine.storage import ExperimentStore


@pytest.fixture
def small_config():
    """Two trials of a two-value sample sweep."""
    return ExperimentConfig(
        n=8,
        trials=2,
        epsilon=0.05,
        delta=0.05,
        sweep=SweepSpec(kind=SweepKind.SAMPLES, values=(60, 20)),
        seed=3,
        preset="tiny",
    )


def test_double_recording_no_duplicates(temp_db, small_config):
    """
    Recording the same run twice must not duplicate rows.

    Experiment and result IDs are derived from the config hash.
    """
    store = ExperimentStore(temp_db)
    result = run_experiment(small_config, progress=False, store=store)
    total1 = store.count_trials()

    # Second run of the same config (should be idempotent)
    run_experiment(small_config, progress=False, store=store)
    total2 = store.count_trials()

    assert total1 == total2, f"Trial count increased: {total1} -> {total2}"
    assert total1 == len(result.trials), f"Stored {total1} of {len(result.trials)} results"
    assert len(store.list_experiments()) == 1
    assert len(store.load_summary(small_config.config_hash)) == 2

    store.close()


def test_experiments_are_keyed_by_config(temp_db, small_config):
    store = ExperimentStore(temp_db)
    first = store.record_experiment(small_config)
    second = store.record_experiment(small_config.with_overrides(seed=4))

    assert first == small_config.config_hash
    assert first != second
    assert len(store.list_experiments()) == 2
    assert len(store.list_experiments(preset="tiny")) == 2
    assert store.list_experiments(preset="figure2") == []

    store.close()


def test_store_round_trip(temp_db, small_config):
    store = ExperimentStore(temp_db)
    result = run_experiment(small_config, progress=False, store=store)
    experiment_id = small_config.config_hash

    assert store.load_config(experiment_id) == small_config
    assert store.load_config("missing") is None

    trials = store.load_trials(experiment_id)
    assert [(t["sweep_index"], t["trial_id"]) for t in trials] == [
        (r.sweep_index, r.trial_id) for r in result.trials
    ]
    for stored, original in zip(trials, result.trials):
        assert stored["phi_hat"] == original.phi_hat
        assert stored["interval_lo"] == original.interval.lo
        assert stored["success"] == original.success
        assert stored["total_queries"] == original.queries["total"]

    summary = store.load_summary(experiment_id)
    assert [row["value"] for row in summary] == [60.0, 20.0]
    assert summary[0]["success_fraction"] == result.rows[0].success_fraction

    store.close()


def test_store_persists_across_connections(temp_db, small_config):
    store = ExperimentStore(temp_db)
    run_experiment(small_config, progress=False, store=store)
    store.close()

    reopened = ExperimentStore(temp_db)
    assert reopened.count_trials(small_config.config_hash) == 4
    assert reopened.count_trials("missing") == 0
    reopened.close()


def test_in_memory_store(small_config):
    store = ExperimentStore()
    run_experiment(small_config, progress=False, store=store)
    assert store.count_trials() == 4
    store.close()
