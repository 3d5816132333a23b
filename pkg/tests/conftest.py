"""Shared fixtures and the slow-test switch."""

import os
import tempfile

import numpy as np
import pytest

from consensusmine.models import Scenario, VoterInterval


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow acceptance reproductions"
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running reproduction, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def temp_db():
    """Create a temporary database path for testing."""
    with tempfile.NamedTemporaryFile(suffix=".duckdb", delete=False) as f:
        db_path = f.name
    os.remove(db_path)
    yield db_path
    # Cleanup
    for path in (db_path, db_path + ".wal"):
        if os.path.exists(path):
            os.remove(path)


@pytest.fixture
def two_voter_scenario():
    """Voters [0, 0.5] and [0.25, 0.75] under the uniform distribution."""
    return Scenario(voters=(VoterInterval(0.0, 0.5), VoterInterval(0.25, 0.75)))


def _random_voters(rng: np.random.Generator, n: int):
    voters = []
    for _ in range(n):
        a, b = np.sort(rng.random(2))
        if rng.random() < 0.2:
            a, b = np.round(a, 1), np.round(b, 1)
        if rng.random() < 0.05:
            b = a
        voters.append(VoterInterval(float(a), float(b)))
    return voters


@pytest.fixture
def random_voters():
    """Factory: n voters with random endpoints, some snapped to a 0.1 grid or degenerate."""
    return _random_voters
