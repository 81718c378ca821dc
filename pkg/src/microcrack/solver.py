"""Explicit FTCS and upwind steppers and the time-marching loop.

Both steppers work in the dtype of the incoming field (binary32 or binary64);
every constant is rounded to that dtype first, so a run never mixes widths.
"""
from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass

import numpy as np

from .grid import ContractError, Field, Grid, Params, Trajectory, validate
from .physics import InitialCondition, growth_active, initial_field, sigma_at


class SchemeKind(enum.Enum):
    FTCS = "ftcs"
    UPWIND = "upwind"


class Precision(enum.Enum):
    BINARY32 = "f32"
    BINARY64 = "f64"

    @property
    def dtype(self):
        return np.float32 if self is Precision.BINARY32 else np.float64


class BlownUpInputError(ValueError):
    """A stepper was handed a field containing inf or nan."""


DEFAULT_BLOWUP_THRESHOLD = 1e12


@dataclass(frozen=True)
class RunConfig:
    scheme: SchemeKind
    params: Params
    grid: Grid
    ic: InitialCondition
    stride: int = 10
    blowup_threshold: float = DEFAULT_BLOWUP_THRESHOLD
    precision: Precision = Precision.BINARY64
    advection: bool = True
    source: bool = True
    # dt/dl instead of dt/(2 dl) in the centred difference; FTCS only
    compat_half_coefficient: bool = False

    def validate(self) -> list[str]:
        problems = validate(self.params, self.grid)
        if not (isinstance(self.stride, int) and self.stride >= 1):
            problems.append("stride >= 1")
        if not self.blowup_threshold > 0:
            problems.append("blowup_threshold > 0")
        return problems

    def with_precision(self, precision: Precision) -> "RunConfig":
        return dataclasses.replace(self, precision=precision)


def _in_dtype(params: Params, grid: Grid, dtype):
    cast = dtype
    return (
        Params(cast(params.alpha), cast(params.beta), cast(params.v_sigma)),
        Grid(cast(grid.dl), cast(grid.dt), grid.lmax, grid.tmax),
    )


def _check_input(field: Field, t_index: int, grid: Grid):
    field.check_grid(grid)
    if field.time_index != t_index:
        raise ContractError(f"field is at level {field.time_index}, step asked for {t_index}")
    if not field.finite:
        raise BlownUpInputError(f"field at level {t_index} contains non-finite values")


def _step(field, t_index, grid, params, scheme, advection, source, half_coefficient):
    _check_input(field, t_index, grid)
    dtype = field.dtype.type
    p, g = _in_dtype(params, grid, dtype)
    f = field.values
    L = g.lengths(dtype)[1:-1]
    sigma = sigma_at(dtype(t_index), g, p)
    s2 = sigma**2
    fm, fi, fp = f[:-2], f[1:-1], f[2:]

    if source:
        kept = fi * (dtype(1) - (dtype(3) * p.beta * s2 - (dtype(2) * p.alpha) / L) * g.dt)
    else:
        kept = fi
    # advection coefficient l*beta*sigma^2 - alpha, in the reference loops' operation order
    coeff = L * p.beta * s2 - p.alpha
    if not advection:
        new = kept
    elif scheme is SchemeKind.FTCS:
        denom = g.dl if half_coefficient else dtype(2) * g.dl
        new = kept - coeff * g.dt / denom * (fp - fm)
    else:
        backward = coeff * g.dt / g.dl * (fi - fm)
        forward = coeff * g.dt / g.dl * (fp - fi)
        new = kept - np.where(coeff > 0, backward, forward)

    out = f.copy()
    out[1:-1] = np.where(growth_active(L, sigma, p), new, fi)
    return Field(out, t_index + 1)


def ftcs_step(
    field: Field,
    t_index: int,
    grid: Grid,
    params: Params,
    *,
    advection: bool = True,
    source: bool = True,
    half_coefficient: bool = False,
) -> Field:
    """One forward-time, centred-space step from level ``t_index``.

    Interior node i with L = i*dl and sigma = v_sigma*t_index*dt, where growth
    is active::

        out[i] = f[i]*(1 - (3 beta sigma^2 - 2 alpha/L) dt)
                 - (L beta sigma^2 - alpha) dt/(2 dl) (f[i+1] - f[i-1])

    Gated-off nodes and the two end nodes are copied unchanged.
    """
    return _step(field, t_index, grid, params, SchemeKind.FTCS, advection, source, half_coefficient)


def upwind_step(
    field: Field,
    t_index: int,
    grid: Grid,
    params: Params,
    *,
    advection: bool = True,
    source: bool = True,
) -> Field:
    """Same as ``ftcs_step`` but with a one-sided (donor-cell) advective difference."""
    return _step(field, t_index, grid, params, SchemeKind.UPWIND, advection, source, False)


def blowup_check(field: Field, threshold: float = DEFAULT_BLOWUP_THRESHOLD) -> bool:
    """True when the field holds a non-finite value or one larger than ``threshold`` in magnitude."""
    values = field.values
    if not np.isfinite(values).all():
        return True
    return bool(np.abs(values).max(initial=0.0) > threshold)


def run(config: RunConfig) -> Trajectory:
    problems = config.validate()
    if problems:
        raise ContractError("invalid run configuration: " + "; ".join(problems))
    grid = config.grid
    field = initial_field(config.ic, grid, config.precision.dtype)
    snapshots = [field]
    if config.scheme is SchemeKind.FTCS:
        step = lambda f, n: ftcs_step(
            f, n, grid, config.params,
            advection=config.advection, source=config.source,
            half_coefficient=config.compat_half_coefficient,
        )
    else:
        step = lambda f, n: upwind_step(
            f, n, grid, config.params, advection=config.advection, source=config.source
        )

    blown_up_at = None
    for n in range(grid.tmax - 1):
        field = step(field, n)
        level = n + 1
        if blowup_check(field, config.blowup_threshold):
            blown_up_at = level
            snapshots.append(field)
            break
        if level % config.stride == 0 or level == grid.tmax - 1:
            snapshots.append(field)
    return Trajectory(tuple(snapshots), config.stride, blown_up_at)
