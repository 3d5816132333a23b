"""Test the command-line interface end to end."""

import csv
import io
import json

import pytest

from consensusmine.cli import EXIT_INPUT, EXIT_OK, build_experiment_config, build_parser, main
from consensusmine.errors import ConfigurationError
from consensusmine.experiments import SUMMARY_COLUMNS, SweepKind
from consensusmine.models import Scenario, VoterInterval, save_scenario


@pytest.fixture
def scenario_file(tmp_path):
    """Single voter [0.2, 0.8] under the uniform distribution."""
    path = tmp_path / "scenario.json"
    save_scenario(Scenario(voters=(VoterInterval(0.2, 0.8),), seed=11), path)
    return path


@pytest.fixture
def samples_file(tmp_path):
    path = tmp_path / "samples.json"
    path.write_text(json.dumps([0.1, 0.3, 0.5, 0.9]))
    return path


def _json_output(capsys):
    return json.loads(capsys.readouterr().out)


def test_erm_with_given_samples(scenario_file, samples_file, capsys):
    code = main(["erm", str(scenario_file), "--samples", str(samples_file)])
    assert code == EXIT_OK
    data = _json_output(capsys)
    assert data["interval"] == [0.3, 0.5]
    assert data["empirical_score"] == 2
    assert data["sample_index_lo"] == 1 and data["sample_index_hi"] == 2
    assert data["score_scale"] == "normalized"
    assert data["queries"]["total"] == 4
    assert data["true_opt_phi"] == pytest.approx(0.6)


def test_erm_reports_success_with_epsilon(scenario_file, samples_file, capsys):
    main(["erm", str(scenario_file), "--samples", str(samples_file), "--epsilon", "0.5"])
    data = _json_output(capsys)
    assert data["success"] is True
    assert data["epsilon"] == 0.5


def test_erm_is_deterministic(scenario_file, capsys):
    args = ["erm", str(scenario_file), "--sample-count", "1e3", "--strategy", "binary"]
    assert main(args) == EXIT_OK
    first = capsys.readouterr().out
    assert main(args) == EXIT_OK
    assert capsys.readouterr().out == first
    assert json.loads(first)["m"] == 1000


def test_erm_input_errors(scenario_file, tmp_path):
    assert main(["erm", str(scenario_file), "--sample-count", "0"]) == EXIT_INPUT
    assert main(["erm", str(scenario_file)]) == EXIT_INPUT
    assert main(["erm", str(tmp_path / "missing.json"), "--sample-count", "10"]) == EXIT_INPUT

    malformed = tmp_path / "bad.json"
    malformed.write_text("{oops")
    assert main(["erm", str(malformed), "--sample-count", "10"]) == EXIT_INPUT

    outside = tmp_path / "outside.json"
    outside.write_text("[0.5, 1.5]")
    assert main(["erm", str(scenario_file), "--samples", str(outside)]) == EXIT_INPUT

    assert main(["erm", str(scenario_file), "--sample-count", "ten"]) == EXIT_INPUT
    assert main(["erm", str(scenario_file), "--sample-count", "10",
                 "--strategy", "fractional"]) == EXIT_INPUT


@pytest.mark.parametrize(
    "payload",
    [
        {"voters": [{"lo": "abc", "hi": 0.5}]},
        {"voters": [{"lo": 0.1, "hi": 0.5}], "seed": "x"},
        {"voters": [{"lo": 0.1, "hi": 0.5}], "n": "one"},
        {"voters": [{"lo": 0.1, "hi": 0.5}], "distribution": {"kind": "truncnorm", "sigma": "wide"}},
        {"voters": ["0.1-0.5"]},
        {"voters": [{"lo": 0.6, "hi": 0.5}]},
    ],
    ids=["endpoint", "seed", "count", "distribution", "voter-type", "order"],
)
def test_erm_rejects_bad_scenario_fields(payload, samples_file, tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(payload))
    code = main(["erm", str(path), "--samples", str(samples_file)])
    assert code == EXIT_INPUT, f"{payload} exited with {code}"


def test_synth_writes_scenario(tmp_path, capsys):
    out = tmp_path / "synth.json"
    assert main(["synth", "--n", "25", "--seed", "7", "--dist", "truncexp", "--out", str(out)]) == EXIT_OK
    data = json.loads(out.read_text())
    assert data["n"] == 25
    assert data["distribution"] == {"kind": "truncexp", "lambda": 4.0}
    assert data["seed"] == 7

    assert main(["synth", "--n", "25", "--seed", "7", "--dist", "truncexp"]) == EXIT_OK
    assert _json_output(capsys) == data

    assert main(["synth", "--wmin", "0.7", "--wmax", "0.2"]) == EXIT_INPUT


def test_bound(capsys):
    assert main(["bound", "--n", "100", "--epsilon", "0.01", "--delta", "0.01"]) == EXIT_OK
    data = _json_output(capsys)
    assert data["m_theorem"] == 113415134034
    assert data["m_baseline"] == 138156
    assert data["terms"]["m"] == data["m_theorem"]

    assert main(["bound", "--n", "10", "--epsilon", "0.1", "--delta", "0.05", "--m", "1e7"]) == EXIT_OK
    data = _json_output(capsys)
    assert data["m_baseline"] == 761
    assert 0 < data["epsilon_for_m"]["10000000"] < 0.1

    assert main(["bound", "--delta", "1.5"]) == EXIT_INPUT


def test_shatter(capsys):
    assert main(["shatter", "--points", "3", "--random-trials", "50", "--n", "20", "--seed", "1"]) == EXIT_OK
    data = _json_output(capsys)
    assert data["shattered"] == 0
    assert data["points"] == 3
    assert data["thresholds"] == "canonical"

    assert main(["shatter", "--points", "4", "--random-trials", "5"]) == EXIT_INPUT


def test_experiment_to_stdout(capsys):
    args = ["experiment", "--strategy", "binary", "--n", "8", "--trials", "2",
            "--m", "40", "--m", "10", "--seed", "3", "--quiet"]
    assert main(args) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert list(rows[0].keys()) == SUMMARY_COLUMNS
    assert [row["value"] for row in rows] == ["40", "10"]
    assert all(row["sweep_param"] == "m" for row in rows)


def test_experiment_files_and_db(tmp_path):
    out = tmp_path / "frac.csv"
    db = tmp_path / "runs.duckdb"
    args = ["experiment", "--strategy", "fractional", "--fraction", "1.0", "--fraction", "0.5",
            "--m", "50", "--n", "6", "--trials", "2", "--quiet",
            "--out", str(out), "--detail", "--db", str(db)]
    assert main(args) == EXIT_OK
    with open(out) as f:
        rows = list(csv.DictReader(f))
    assert [row["value"] for row in rows] == ["1.0", "0.5"]
    assert (tmp_path / "frac.csv.detail.csv").exists()
    assert db.exists()


def test_experiment_workers_do_not_change_output(tmp_path):
    outputs = []
    for workers in ("1", "2"):
        out = tmp_path / f"w{workers}.csv"
        args = ["experiment", "--strategy", "full", "--m", "30", "--n", "5", "--trials", "3",
                "--seed", "9", "--workers", workers, "--quiet", "--out", str(out)]
        assert main(args) == EXIT_OK
        outputs.append(out.read_text())
    assert outputs[0] == outputs[1]


def test_experiment_usage_errors():
    assert main(["experiment", "--detail", "--strategy", "full", "--m", "10"]) == EXIT_INPUT
    assert main(["experiment", "--m", "10"]) == EXIT_INPUT
    assert main(["experiment", "--strategy", "full", "--fraction", "0.5"]) == EXIT_INPUT
    assert main(["experiment", "--preset", "figure7"]) == EXIT_INPUT
    assert main([]) == EXIT_INPUT


def test_build_experiment_config_from_preset():
    parser = build_parser()
    config = build_experiment_config(
        parser.parse_args(["experiment", "--preset", "figure4", "--m", "1e5", "--trials", "5"])
    )
    assert config.sweep.kind is SweepKind.BINARY
    assert config.sweep.values == (100000,)
    assert config.trials == 5
    assert config.preset == "figure4"

    config = build_experiment_config(parser.parse_args(["experiment", "--preset", "figure3", "--m", "500"]))
    assert config.sweep.m == 500
    assert config.sweep.values == (1.0, 0.5, 0.25, 0.1, 0.05)

    with pytest.raises(ConfigurationError):
        build_experiment_config(
            parser.parse_args(["experiment", "--preset", "figure3", "--m", "5", "--m", "6"])
        )
