"""Stress ramp, Rice-Griffith crack velocity and the two initial distributions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .grid import ContractError, Field, Grid, Params


@dataclass(frozen=True)
class StepWise:
    """Constant ``amplitude`` on l_lo <= l <= l_hi (both ends inclusive), zero elsewhere."""

    amplitude: float
    l_lo: float
    l_hi: float

    def __post_init__(self):
        if not (self.amplitude >= 0 and 0 <= self.l_lo < self.l_hi):
            raise ContractError("StepWise needs amplitude >= 0 and 0 <= l_lo < l_hi")
        if not all(map(math.isfinite, (self.amplitude, self.l_lo, self.l_hi))):
            raise ContractError("StepWise parameters must be finite")


@dataclass(frozen=True)
class Exponential:
    """amplitude * exp(-decay * l)."""

    amplitude: float
    decay: float

    def __post_init__(self):
        if not (self.amplitude >= 0 and self.decay > 0):
            raise ContractError("Exponential needs amplitude >= 0 and decay > 0")
        if not all(map(math.isfinite, (self.amplitude, self.decay))):
            raise ContractError("Exponential parameters must be finite")


InitialCondition = Union[StepWise, Exponential]


def sigma_at(t_index, grid: Grid, params: Params):
    if t_index < 0:
        raise ContractError("time level must be >= 0")
    return params.v_sigma * (t_index * grid.dt)


def growth_active(l, sigma, params: Params):
    # strict '>' as in the reference loops; at equality the velocity is 0 anyway
    return l * sigma**2 * params.beta - params.alpha > 0


def crack_velocity(l, sigma, params: Params):
    # same rounding of the drive term as growth_active, so a closed gate gives exactly 0
    drive = l * sigma**2 * params.beta
    v = -params.alpha + drive
    if np.ndim(v) == 0:
        return v if params.alpha <= drive else 0.0
    return np.where(params.alpha <= drive, v, 0.0)


def initial_density(ic: InitialCondition, l):
    """Closed-form f0 at arbitrary lengths (scalar or array), float64."""
    l = np.asarray(l, dtype=np.float64)
    if isinstance(ic, StepWise):
        out = np.where((l >= ic.l_lo) & (l <= ic.l_hi), ic.amplitude, 0.0)
    elif isinstance(ic, Exponential):
        out = ic.amplitude * np.exp(-ic.decay * l)
    else:
        raise TypeError(f"unknown initial condition {ic!r}")
    return out[()] if out.ndim == 0 else out


def initial_field(ic: InitialCondition, grid: Grid, dtype=np.float64) -> Field:
    """Sample the initial condition on the grid (computed in binary64, then rounded)."""
    values = np.asarray(initial_density(ic, grid.lengths()), dtype=np.float64)
    return Field(values.astype(dtype), 0)
