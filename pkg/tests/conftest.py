import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from microcrack import Exponential, Grid, Params, StepWise  # noqa: E402


@pytest.fixture
def params():
    return Params()


@pytest.fixture
def grid():
    return Grid()


@pytest.fixture
def exp_ic():
    return Exponential(1.0, 1.0)


@pytest.fixture
def step_ic():
    return StepWise(1.0, 1.0, 2.0)
