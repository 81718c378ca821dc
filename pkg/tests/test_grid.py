import numpy as np
import pytest
from hypothesis import given, strategies as st

from microcrack import ContractError, Field, Grid, Params, Trajectory, node_length, validate


@pytest.mark.parametrize("i, dl, lmax, expected", [
    (0, 0.1, 10, 0.0),
    (7, 0.5, 10, 3.5),
    (200, 0.05, 200, 10.0),
])
def test_node_length(i, dl, lmax, expected):
    assert node_length(i, Grid(dl=dl, lmax=lmax)) == expected


@pytest.mark.parametrize("i", [-1, 201])
def test_node_length_out_of_range(i):
    with pytest.raises(ContractError):
        node_length(i, Grid())


@given(st.integers(0, 5000), st.floats(1e-6, 10.0))
def test_node_length_is_one_product(i, dl):
    grid = Grid(dl=dl, lmax=5000)
    assert node_length(i, grid) == i * dl
    assert grid.lengths()[i] == i * dl


def test_validate_defaults_ok():
    assert validate(Params(1, 1, 1), Grid(0.05, 0.001, 200, 1000)) == []


def test_validate_beta_zero():
    assert validate(Params(beta=0.0), Grid()) == ["beta > 0"]


def test_validate_reports_every_violation():
    problems = validate(Params(), Grid(dl=-0.1, dt=0.0))
    assert problems == ["dl > 0", "dt > 0"]


def test_validate_non_finite_and_counts():
    problems = validate(Params(alpha=float("nan"), v_sigma=-1.0), Grid(lmax=2, tmax=0))
    assert "alpha finite" in problems
    assert "v_sigma >= 0" in problems
    assert "lmax >= 3" in problems
    assert "tmax >= 1" in problems


def test_field_is_frozen_copy():
    raw = np.zeros(4)
    f = Field(raw, 0)
    raw[0] = 5.0
    assert f.values[0] == 0.0
    with pytest.raises(ValueError):
        f.values[1] = 1.0


def test_field_flags_non_finite():
    assert Field(np.array([0.0, 1.0]), 0).finite
    assert not Field(np.array([0.0, np.inf]), 0).finite


def test_trajectory_invariants():
    a, b = Field(np.zeros(4), 0), Field(np.zeros(4), 3)
    traj = Trajectory((a, b), stride=3)
    assert traj.status == "Completed" and traj.levels == (0, 3)
    assert Trajectory((a, b), 3, blown_up_at=3).status == "BlownUpAt:3"
    with pytest.raises(ContractError):
        Trajectory((b, a))
    with pytest.raises(ContractError):
        Trajectory((a, b), 3, blown_up_at=2)
