"""Error norms, moments, total variation and the two comparison experiments."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .analytic import analytic_field
from .grid import ContractError, Field, Grid, Trajectory
from .solver import Precision, RunConfig, run

DIVERGENCE_THRESHOLDS = (1e-6, 1e-3, 1e-1)


def _trapezoid(y: np.ndarray, dl: float) -> float:
    return float(dl * (y[1:-1].sum() + 0.5 * (y[0] + y[-1])))


def moment(field: Field, grid: Grid, k: int) -> float:
    """Trapezoid integral of l^k f(l) over [0, lmax*dl], evaluated in binary64."""
    if k not in (0, 1, 2, 3):
        raise ContractError(f"moment order must be 0..3, got {k}")
    field.check_grid(grid)
    f = field.values.astype(np.float64)
    if k == 0:
        return _trapezoid(f, grid.dl)
    return _trapezoid(grid.lengths() ** k * f, grid.dl)


def norm_error(a: Field, b: Field, grid: Grid, p, interior: bool = False) -> float:
    """Discrete L1, L2 or max norm of a - b.

    L1 and L2 use trapezoid weights (dl inside, dl/2 at the two end nodes).
    With ``interior=True`` the end nodes are left out entirely.
    """
    a.check_grid(grid)
    b.check_grid(grid)
    if a.time_index != b.time_index:
        raise ContractError(f"fields at different levels {a.time_index} and {b.time_index}")
    d = np.abs(a.values.astype(np.float64) - b.values.astype(np.float64))
    if interior:
        d = d.copy()
        d[0] = d[-1] = 0.0
    if p in (math.inf, "inf"):
        return float(d.max())
    if p == 1:
        return _trapezoid(d, grid.dl)
    if p == 2:
        return math.sqrt(_trapezoid(d * d, grid.dl))
    raise ContractError(f"norm selector must be 1, 2 or inf, got {p!r}")


def total_variation(field: Field) -> float:
    return float(np.abs(np.diff(field.values.astype(np.float64))).sum())


@dataclass(frozen=True)
class ComparisonRecord:
    time_index: int
    l1_error: float
    l2_error: float
    linf_error: float
    second_moment_numeric: float
    second_moment_analytic: float
    total_variation: float


@dataclass(frozen=True)
class ComparisonReport:
    records: tuple[ComparisonRecord, ...]
    status: str

    FIELDS = (
        "time_index", "l1_error", "l2_error", "linf_error",
        "second_moment_numeric", "second_moment_analytic", "total_variation",
    )

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records])


def compare_run(config: RunConfig, closed_form: bool = False, trajectory: Optional[Trajectory] = None) -> ComparisonReport:
    """Run the scheme and measure it against the exact field at every stored snapshot.

    Error norms cover interior nodes only; both end nodes are held fixed by the
    schemes.  A precomputed ``trajectory`` of the same config may be passed in.
    """
    traj = run(config) if trajectory is None else trajectory
    grid = config.grid
    records = []
    for snap in traj.snapshots:
        exact = analytic_field(snap.time_index, grid, config.params, config.ic, closed_form)
        records.append(ComparisonRecord(
            time_index=snap.time_index,
            l1_error=norm_error(snap, exact, grid, 1, interior=True),
            l2_error=norm_error(snap, exact, grid, 2, interior=True),
            linf_error=norm_error(snap, exact, grid, math.inf, interior=True),
            second_moment_numeric=moment(snap, grid, 2),
            second_moment_analytic=moment(exact, grid, 2),
            total_variation=total_variation(snap),
        ))
    return ComparisonReport(tuple(records), traj.status)


def relative_divergence(a: Field, b: Field) -> float:
    """||a - b|| / ||b|| over all nodes in binary64; 0 when both vanish."""
    x = a.values.astype(np.float64)
    y = b.values.astype(np.float64)
    num = float(np.linalg.norm(x - y))
    den = float(np.linalg.norm(y))
    if num == 0.0:
        return 0.0
    if den == 0.0 or not math.isfinite(den):
        return math.inf
    return num / den


@dataclass(frozen=True)
class PrecisionReport:
    status_f32: str
    status_f64: str
    blowup_f32: Optional[int]
    blowup_f64: Optional[int]
    levels: tuple[int, ...]
    divergence: tuple[float, ...]
    first_exceed: dict

    FIELDS = ("time_index", "divergence")


def precision_experiment(config: RunConfig) -> PrecisionReport:
    """Run one configuration at binary32 and binary64 and measure how far they drift apart.

    Divergence is the relative L2 distance of the binary32 field from the
    binary64 field, on the levels both runs stored.  ``first_exceed`` maps each
    threshold to the first such level where divergence is above it (None if never).
    """
    t32 = run(config.with_precision(Precision.BINARY32))
    t64 = run(config.with_precision(Precision.BINARY64))
    by_level = {f.time_index: f for f in t64.snapshots}
    levels, divergence = [], []
    for snap in t32.snapshots:
        ref = by_level.get(snap.time_index)
        if ref is not None:
            levels.append(snap.time_index)
            divergence.append(relative_divergence(snap, ref))
    first_exceed = {}
    for thr in DIVERGENCE_THRESHOLDS:
        first_exceed[thr] = next((n for n, d in zip(levels, divergence) if d > thr), None)
    return PrecisionReport(
        status_f32=t32.status,
        status_f64=t64.status,
        blowup_f32=t32.blown_up_at,
        blowup_f64=t64.blown_up_at,
        levels=tuple(levels),
        divergence=tuple(divergence),
        first_exceed=first_exceed,
    )
