"""Command-line front end.

    microcrack simulate|analytic|compare|precision --ic step|exp --amp R ... --out PATH

Physical and grid flags default to alpha=beta=vsigma=1, dl=0.05, dt=0.001,
lmax=200, tmax=1000, stride=10.  These are working defaults for this tool, not
values taken from any measurement.  Initial-condition parameters have no
defaults.  Every output file starts with the fully resolved configuration as
``# key=value`` lines; the ``cli`` entry re-creates the run when passed back
together with a new ``--out``.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .analytic import analytic_field
from .diagnostics import compare_run, precision_experiment
from .grid import Grid, Params, Trajectory
from .io import fmt, write_report, write_surface, write_trajectory_csv
from .physics import Exponential, StepWise
from .solver import Precision, RunConfig, SchemeKind, run

SUBCOMMANDS = ("simulate", "analytic", "compare", "precision")

DEFAULTS = {
    "scheme": "ftcs",
    "alpha": 1.0,
    "beta": 1.0,
    "vsigma": 1.0,
    "dl": 0.05,
    "dt": 0.001,
    "lmax": 200,
    "tmax": 1000,
    "stride": 10,
    "precision": "f64",
}

IC_FLAGS = {"step": ("l_lo", "l_hi"), "exp": ("decay",)}

# flags that do not apply to a subcommand are rejected rather than ignored
NOT_FOR = {
    "analytic": ("scheme", "precision", "compat_half_coefficient"),
    "precision": ("precision", "surface", "closed_form"),
    "simulate": ("closed_form",),
    "compare": (),
}

ORDER = ("scheme", "ic", "amp", "l_lo", "l_hi", "decay", "alpha", "beta", "vsigma",
         "dl", "dt", "lmax", "tmax", "stride", "precision")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="microcrack", allow_abbrev=False,
                description="Finite-difference crack-length distribution experiments.")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--scheme", choices=("ftcs", "upwind"))
    p.add_argument("--ic", choices=("step", "exp"))
    p.add_argument("--amp", type=float)
    p.add_argument("--l-lo", dest="l_lo", type=float)
    p.add_argument("--l-hi", dest="l_hi", type=float)
    p.add_argument("--decay", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--vsigma", type=float)
    p.add_argument("--dl", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--lmax", type=int)
    p.add_argument("--tmax", type=int)
    p.add_argument("--stride", type=int)
    p.add_argument("--precision", choices=("f32", "f64"))
    p.add_argument("--out", type=Path)
    p.add_argument("--surface", type=Path)
    p.add_argument("--compat-half-coefficient", dest="compat_half_coefficient",
                   action="store_true", default=None,
                   help="use dt/dl instead of dt/(2 dl) in the FTCS advection term")
    p.add_argument("--closed-form", dest="closed_form", action="store_true", default=None,
                   help="compare against the closed form traced back to t=0 instead of the gated solution")
    return p


@dataclass(frozen=True)
class CliInvocation:
    subcommand: str
    config: RunConfig
    out: Path
    surface: Optional[Path]
    closed_form: bool
    resolved: dict

    def metadata(self) -> dict:
        meta = {"subcommand": self.subcommand}
        meta.update({k: fmt(v) if isinstance(v, (int, float)) and not isinstance(v, bool) else v
                     for k, v in self.resolved.items()})
        meta["blowup_threshold"] = fmt(self.config.blowup_threshold)
        meta["cli"] = " ".join(self.argv())
        return meta

    def argv(self) -> list[str]:
        """Flags that reproduce this invocation, excluding output paths."""
        args = [self.subcommand]
        for key in ORDER:
            if key in self.resolved:
                v = self.resolved[key]
                args += [_flag(key), v if isinstance(v, str) else fmt(v)]
        if self.resolved.get("compat_half_coefficient"):
            args.append("--compat-half-coefficient")
        if self.resolved.get("closed_form"):
            args.append("--closed-form")
        return args


def parse_cli(args) -> CliInvocation:
    """Turn an argument list into a resolved invocation or raise UsageError."""
    ns = build_parser().parse_args(list(args))
    sub = ns.subcommand
    given = {k: v for k, v in vars(ns).items() if v is not None and k != "subcommand"}

    misplaced = [_flag(k) for k in NOT_FOR[sub] if k in given]
    if misplaced:
        raise UsageError(f"{', '.join(misplaced)} not accepted by '{sub}'")
    if given.get("compat_half_coefficient") and given.get("scheme", "ftcs") != "ftcs":
        raise UsageError("--compat-half-coefficient requires --scheme ftcs")
    missing = [_flag(k) for k in ("ic", "amp", "out") if k not in given]
    if "ic" in given:
        kind = given["ic"]
        missing += [_flag(k) for k in IC_FLAGS[kind] if k not in given]
        other = "exp" if kind == "step" else "step"
        stray = [_flag(k) for k in IC_FLAGS[other] if k in given]
        if stray:
            raise UsageError(f"{', '.join(stray)} not used by --ic {kind}")
    if missing:
        raise UsageError(f"missing required flag(s): {', '.join(missing)}")

    resolved = {}
    for key in ORDER:
        if key in NOT_FOR[sub]:
            continue
        if key in given:
            resolved[key] = given[key]
        elif key in DEFAULTS:
            resolved[key] = DEFAULTS[key]
    if sub != "analytic":
        resolved["compat_half_coefficient"] = bool(given.get("compat_half_coefficient"))
    if sub in ("analytic", "compare"):
        resolved["closed_form"] = bool(given.get("closed_form"))

    try:
        if resolved["ic"] == "step":
            ic = StepWise(resolved["amp"], resolved["l_lo"], resolved["l_hi"])
        else:
            ic = Exponential(resolved["amp"], resolved["decay"])
    except ValueError as exc:
        raise UsageError(f"invalid initial condition: {exc}") from None
    params = Params(resolved["alpha"], resolved["beta"], resolved["vsigma"])
    grid = Grid(resolved["dl"], resolved["dt"], resolved["lmax"], resolved["tmax"])
    config = RunConfig(
        scheme=SchemeKind(resolved.get("scheme", "ftcs")),
        params=params,
        grid=grid,
        ic=ic,
        stride=resolved["stride"],
        precision=Precision(resolved.get("precision", "f64")),
        compat_half_coefficient=resolved.get("compat_half_coefficient", False),
    )
    problems = config.validate()
    if sub in ("analytic", "compare") and not params.v_sigma > 0:
        problems.append("vsigma > 0 (the exact solution needs a loading ramp)")
    if problems:
        raise UsageError("invalid value(s): " + "; ".join(problems))
    return CliInvocation(sub, config, given["out"], given.get("surface"),
                         resolved.get("closed_form", False), resolved)


def analytic_trajectory(config: RunConfig, closed_form: bool = False) -> Trajectory:
    grid = config.grid
    levels = list(range(0, grid.tmax, config.stride))
    if levels[-1] != grid.tmax - 1:
        levels.append(grid.tmax - 1)
    fields = [analytic_field(n, grid, config.params, config.ic, closed_form) for n in levels]
    return Trajectory(tuple(fields), config.stride)


def execute(inv: CliInvocation) -> str:
    cfg = inv.config
    meta = inv.metadata()
    if inv.subcommand == "precision":
        report = precision_experiment(cfg)
        write_report(report, inv.out, meta)
        return f"binary32 {report.status_f32}, binary64 {report.status_f64}"
    if inv.subcommand == "analytic":
        traj = analytic_trajectory(cfg, inv.closed_form)
        write_trajectory_csv(traj, cfg.grid, inv.out, meta)
    else:
        traj = run(cfg)
        if inv.subcommand == "simulate":
            write_trajectory_csv(traj, cfg.grid, inv.out, meta)
        else:
            report = compare_run(cfg, inv.closed_form, trajectory=traj)
            write_report(report, inv.out, meta)
    if inv.surface is not None:
        write_surface(traj, cfg.grid, inv.surface)
    return traj.status


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        inv = parse_cli(argv)
    except UsageError as exc:
        print(build_parser().format_usage().rstrip(), file=sys.stderr)
        print(f"microcrack: error: {exc}", file=sys.stderr)
        return 2
    try:
        status = execute(inv)
    except OSError as exc:
        print(f"microcrack: {exc}", file=sys.stderr)
        return 1
    print(f"{inv.subcommand}: {status} -> {inv.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
