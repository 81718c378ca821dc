"""Plain-text export of trajectories and reports.

Reals are written with the shortest decimal string that reads back to the same
value in the field's own precision, so files round-trip bit-exactly.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .diagnostics import ComparisonReport, PrecisionReport
from .grid import Grid, Trajectory


def fmt(x) -> str:
    """Shortest round-trip text for a binary32/binary64 value or an int."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, np.floating):
        return str(x)
    return repr(float(x))


def _opt(n: Optional[int]) -> str:
    return "none" if n is None else str(n)


@contextmanager
def _open_for_write(path):
    path = Path(path)
    try:
        fh = open(path, "w", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    with fh:
        yield fh


def _metadata_lines(metadata: Optional[dict]) -> list[str]:
    if not metadata:
        return []
    return [f"# {k}={v}" for k, v in metadata.items()]


def write_trajectory_csv(trajectory: Trajectory, grid: Grid, path, metadata: Optional[dict] = None) -> None:
    """Write ``t,l,f,l2f`` rows ordered by time then length.

    Line one is ``# status=...``; optional ``# key=value`` metadata lines follow
    before the header.
    """
    lines = [f"# status={trajectory.status}", *_metadata_lines(metadata), "t,l,f,l2f"]
    l64 = [fmt(v) for v in grid.lengths()]
    for snap in trajectory.snapshots:
        dtype = snap.dtype.type
        lengths = grid.lengths(dtype)
        l2f = lengths * lengths * snap.values
        t = fmt(snap.time_index * grid.dt)
        for i in range(grid.n_nodes):
            lines.append(f"{t},{l64[i]},{fmt(snap.values[i])},{fmt(l2f[i])}")
    with _open_for_write(path) as fh:
        fh.write("\n".join(lines) + "\n")


@dataclass
class CsvTrajectory:
    status: str
    metadata: dict
    times: list = field(default_factory=list)
    lengths: list = field(default_factory=list)
    values: list = field(default_factory=list)
    l2f: list = field(default_factory=list)


def _split_metadata(text_lines):
    meta = {}
    body = []
    for line in text_lines:
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key] = value
        elif line:
            body.append(line)
    return meta, body


def read_trajectory_csv(path, dtype=np.float64) -> CsvTrajectory:
    """Parse a file from ``write_trajectory_csv``; f and l2f come back in ``dtype``."""
    with open(path, encoding="utf-8") as fh:
        meta, body = _split_metadata(fh.read().splitlines())
    status = meta.pop("status")
    out = CsvTrajectory(status, meta)
    if body[0] != "t,l,f,l2f":
        raise ValueError(f"{path}: unexpected header {body[0]!r}")
    groups: dict = {}
    for line in body[1:]:
        t, l, f, l2f = line.split(",")
        groups.setdefault(t, []).append((float(l), float(f), float(l2f)))
    for t, rows in groups.items():
        out.times.append(float(t))
        out.lengths.append(np.array([r[0] for r in rows]))
        out.values.append(np.array([r[1] for r in rows]).astype(dtype))
        out.l2f.append(np.array([r[2] for r in rows]).astype(dtype))
    return out


def write_surface(trajectory: Trajectory, grid: Grid, path) -> None:
    """Whitespace-separated ``l t l2f`` triplets, one blank-line-separated block per snapshot."""
    blocks = []
    l64 = [fmt(v) for v in grid.lengths()]
    for snap in trajectory.snapshots:
        dtype = snap.dtype.type
        lengths = grid.lengths(dtype)
        l2f = lengths * lengths * snap.values
        t = fmt(snap.time_index * grid.dt)
        blocks.append("\n".join(f"{l64[i]} {t} {fmt(l2f[i])}" for i in range(grid.n_nodes)))
    with _open_for_write(path) as fh:
        fh.write("\n\n".join(blocks) + "\n")


Report = Union[ComparisonReport, PrecisionReport]


def write_report(report: Report, path, metadata: Optional[dict] = None) -> None:
    if isinstance(report, ComparisonReport):
        head = [f"# status={report.status}"]
        rows = [[getattr(r, name) for name in report.FIELDS] for r in report.records]
    elif isinstance(report, PrecisionReport):
        head = [
            f"# status_f32={report.status_f32}",
            f"# status_f64={report.status_f64}",
            f"# blowup_f32={_opt(report.blowup_f32)}",
            f"# blowup_f64={_opt(report.blowup_f64)}",
        ]
        head += [f"# first_exceed_{thr:g}={_opt(n)}" for thr, n in report.first_exceed.items()]
        rows = [[n, d] for n, d in zip(report.levels, report.divergence)]
    else:
        raise TypeError(f"cannot write report of type {type(report).__name__}")
    lines = head + _metadata_lines(metadata) + [",".join(report.FIELDS)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    with _open_for_write(path) as fh:
        fh.write("\n".join(lines) + "\n")


def read_report(path) -> tuple[dict, list[str], list[list]]:
    """Return (metadata, header, rows); time_index columns are ints, the rest floats."""
    with open(path, encoding="utf-8") as fh:
        meta, body = _split_metadata(fh.read().splitlines())
    header = body[0].split(",")
    rows = []
    for line in body[1:]:
        cells = line.split(",")
        rows.append([int(c) if name == "time_index" else float(c) for name, c in zip(header, cells)])
    return meta, header, rows


def parse_optional_int(text: str) -> Optional[int]:
    return None if text == "none" else int(text)

