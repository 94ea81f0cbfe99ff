import numpy as np
import pytest

from domcell.oracle import random_instances

SEED = 20171015
ACCEPTANCE_LINES: list[str] = []


def pytest_report_header(config):
    return f"domcell random-instance seed: {SEED}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def instances():
    """The 200 seeded random instances shared by the exhaustive checks."""
    return random_instances(SEED, 200, t_max=7, i_max=4)


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)
