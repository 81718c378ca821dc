"""Physical parameters, discretization and sampled fields.

Units live in the docstrings only; every value is a plain real.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np


class ContractError(ValueError):
    """Raised when an operation is called outside its precondition."""


@dataclass(frozen=True)
class Params:
    """Crack-growth constants.

    alpha   crack resistance (length/time)
    beta    growth coefficient (1/(stress^2 time))
    v_sigma loading speed of the linear stress ramp (stress/time)
    """

    alpha: float = 1.0
    beta: float = 1.0
    v_sigma: float = 1.0


@dataclass(frozen=True)
class Grid:
    """Uniform grid: node i sits at l = i*dl for i in 0..lmax, level n at t = n*dt."""

    dl: float = 0.05
    dt: float = 0.001
    lmax: int = 200
    tmax: int = 1000

    @property
    def n_nodes(self) -> int:
        return self.lmax + 1

    @property
    def length(self) -> float:
        return self.lmax * self.dl

    def lengths(self, dtype=np.float64) -> np.ndarray:
        """Physical length of every node, each one a single product i*dl."""
        return np.arange(self.n_nodes, dtype=dtype) * dtype(self.dl)


def node_length(i: int, grid: Grid) -> float:
    if not 0 <= i <= grid.lmax:
        raise ContractError(f"node index {i} outside 0..{grid.lmax}")
    return i * grid.dl


def validate(params: Params, grid: Grid) -> list[str]:
    """Return every violated invariant of ``params`` and ``grid``; empty means ok."""
    problems = []
    for name in ("alpha", "beta", "v_sigma"):
        if not math.isfinite(getattr(params, name)):
            problems.append(f"{name} finite")
    for name in ("dl", "dt"):
        if not math.isfinite(getattr(grid, name)):
            problems.append(f"{name} finite")
    if not params.alpha >= 0:
        problems.append("alpha >= 0")
    if not params.beta > 0:
        problems.append("beta > 0")
    if not params.v_sigma >= 0:
        problems.append("v_sigma >= 0")
    if not grid.dl > 0:
        problems.append("dl > 0")
    if not grid.dt > 0:
        problems.append("dt > 0")
    if not (isinstance(grid.lmax, (int, np.integer)) and grid.lmax >= 3):
        problems.append("lmax >= 3")
    if not (isinstance(grid.tmax, (int, np.integer)) and grid.tmax >= 1):
        problems.append("tmax >= 1")
    return problems


def require_valid(params: Params, grid: Grid) -> None:
    problems = validate(params, grid)
    if problems:
        raise ContractError("invalid configuration: " + "; ".join(problems))


@dataclass(frozen=True, eq=False)
class Field:
    """Distribution samples f(i*dl) at one time level.

    The array is frozen on construction so a Field can be shared freely.
    """

    values: np.ndarray
    time_index: int

    def __post_init__(self):
        arr = np.array(self.values, copy=True)
        if arr.ndim != 1 or arr.dtype not in (np.float32, np.float64):
            raise ContractError("field values must be a 1-D float32/float64 array")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def dtype(self):
        return self.values.dtype

    @property
    def finite(self) -> bool:
        return bool(np.isfinite(self.values).all())

    def check_grid(self, grid: Grid) -> None:
        if self.values.shape[0] != grid.n_nodes:
            raise ContractError(
                f"field has {self.values.shape[0]} nodes, grid expects {grid.n_nodes}"
            )


@dataclass(frozen=True)
class Trajectory:
    snapshots: tuple[Field, ...]
    stride: int = 1
    blown_up_at: Optional[int] = None
    # levels are strictly increasing; nothing is stored past a blow-up
    _levels: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        snaps = tuple(self.snapshots)
        object.__setattr__(self, "snapshots", snaps)
        levels = tuple(f.time_index for f in snaps)
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ContractError("snapshot time levels must be strictly increasing")
        if self.blown_up_at is not None and levels and levels[-1] > self.blown_up_at:
            raise ContractError("snapshot recorded after blow-up level")
        if self.stride < 1:
            raise ContractError("stride must be >= 1")
        object.__setattr__(self, "_levels", levels)

    @property
    def levels(self) -> tuple[int, ...]:
        return self._levels

    @property
    def completed(self) -> bool:
        return self.blown_up_at is None

    @property
    def status(self) -> str:
        if self.blown_up_at is None:
            return "Completed"
        return f"BlownUpAt:{self.blown_up_at}"

    def __len__(self):
        return len(self.snapshots)

    def __getitem__(self, k) -> Field:
        return self.snapshots[k]

    def at_level(self, n: int) -> Field:
        """The snapshot stored at time level ``n``."""
        try:
            return self.snapshots[self._levels.index(n)]
        except ValueError:
            raise KeyError(f"no snapshot stored at level {n}") from None
