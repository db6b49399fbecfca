import sys

import numpy as np
import pytest

from dgh_waves import ModelParams, TravelingWaveProblem


@pytest.fixture
def ch():
    return ModelParams(alpha=1.0, c0=0.0, gamma=0.0)


@pytest.fixture
def kdv():
    return ModelParams(alpha=0.0, c0=0.0, gamma=1.0)


@pytest.fixture
def peakon_problem(ch):
    return TravelingWaveProblem(ch, 3.0, 0.0, 0.0)


@pytest.fixture
def soliton_problem(kdv):
    return TravelingWaveProblem(kdv, 1.0, 0.0, 0.0)


@pytest.fixture
def cuspon_problem(ch):
    # roots {-1/2 (double), 2}, pole 1
    return TravelingWaveProblem(ch, 1.0, 1.75, 0.5)


@pytest.fixture
def cnoidal_problem(kdv):
    # roots {-1, 0, 1}
    return TravelingWaveProblem(kdv, 0.0, 1.0, 0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda l: int(l.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
