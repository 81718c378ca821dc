import shlex
import subprocess
import sys

import pytest

from microcrack import Exponential, Precision, SchemeKind, StepWise
from microcrack.cli import DEFAULTS, UsageError, main, parse_cli
from microcrack.io import read_report, read_trajectory_csv

EXP = ["--ic", "exp", "--amp", "1", "--decay", "1"]
STEP = ["--ic", "step", "--amp", "1", "--l-lo", "1", "--l-hi", "2"]


def test_parse_simulate_defaults():
    inv = parse_cli(["simulate", "--scheme", "ftcs", *EXP, "--out", "run.csv"])
    cfg = inv.config
    assert inv.subcommand == "simulate" and str(inv.out) == "run.csv" and inv.surface is None
    assert cfg.scheme is SchemeKind.FTCS and cfg.precision is Precision.BINARY64
    assert cfg.ic == Exponential(1.0, 1.0)
    assert (cfg.params.alpha, cfg.params.beta, cfg.params.v_sigma) == (1.0, 1.0, 1.0)
    assert (cfg.grid.dl, cfg.grid.dt, cfg.grid.lmax, cfg.grid.tmax) == (0.05, 0.001, 200, 1000)
    assert cfg.stride == DEFAULTS["stride"] and cfg.compat_half_coefficient is False


def test_metadata_lists_every_resolved_value():
    inv = parse_cli(["simulate", *STEP, "--out", "x.csv"])
    meta = inv.metadata()
    for key in ("scheme", "ic", "amp", "l_lo", "l_hi", "alpha", "beta", "vsigma", "dl", "dt",
                "lmax", "tmax", "stride", "precision", "compat_half_coefficient", "blowup_threshold"):
        assert key in meta
    assert meta["dl"] == "0.05" and meta["tmax"] == "1000" and meta["precision"] == "f64"
    assert "--out" not in meta["cli"]


def test_parse_precision_subcommand():
    inv = parse_cli(["precision", "--scheme", "ftcs", *STEP, "--out", "p.csv"])
    assert inv.subcommand == "precision"
    assert inv.config.ic == StepWise(1.0, 1.0, 2.0)


def test_parse_surface_and_overrides():
    inv = parse_cli(["compare", "--scheme", "upwind", *EXP, "--dl", "0.1", "--lmax", "100",
                     "--stride", "5", "--out", "c.csv", "--surface", "s.dat", "--closed-form"])
    assert inv.config.scheme is SchemeKind.UPWIND and inv.closed_form
    assert inv.config.grid.dl == 0.1 and inv.config.stride == 5 and str(inv.surface) == "s.dat"


@pytest.mark.parametrize("args, named", [
    (["simulate", "--ic", "step", "--amp", "1", "--out", "x.csv"], ["--l-lo", "--l-hi"]),
    (["simulate", "--ic", "exp", "--amp", "1", "--out", "x.csv"], ["--decay"]),
    (["simulate", *EXP], ["--out"]),
    (["simulate", "--amp", "1", "--out", "x"], ["--ic"]),
    (["simulate", *EXP, "--out", "x", "--bogus", "1"], ["--bogus"]),
    (["simulate", *EXP, "--l-lo", "1", "--out", "x"], ["--l-lo"]),
    (["analytic", *EXP, "--precision", "f32", "--out", "x"], ["--precision"]),
    (["analytic", *EXP, "--scheme", "ftcs", "--out", "x"], ["--scheme"]),
    (["simulate", *EXP, "--closed-form", "--out", "x"], ["--closed-form"]),
    (["precision", *EXP, "--surface", "s", "--out", "x"], ["--surface"]),
    (["simulate", "--scheme", "upwind", *EXP, "--compat-half-coefficient", "--out", "x"],
     ["--compat-half-coefficient"]),
    (["simulate", *EXP, "--dl", "-1", "--out", "x"], ["dl"]),
    (["simulate", *EXP, "--stride", "0", "--out", "x"], ["stride"]),
    (["compare", *EXP, "--vsigma", "0", "--out", "x"], ["vsigma"]),
    (["simulate", "--ic", "step", "--amp", "1", "--l-lo", "3", "--l-hi", "2", "--out", "x"], ["initial condition"]),
    (["simulate", *EXP, "--sch", "ftcs", "--out", "x"], ["--sch"]),
    (["run", *EXP, "--out", "x"], ["run"]),
    (["simulate", *EXP, "--lmax", "2.5", "--out", "x"], ["--lmax"]),
])
def test_usage_errors(args, named):
    with pytest.raises(UsageError) as exc:
        parse_cli(args)
    for name in named:
        assert name in str(exc.value)


def test_main_usage_exit_code(capsys):
    assert main(["simulate", "--ic", "step", "--amp", "1", "--out", "x.csv"]) == 2
    err = capsys.readouterr().err
    assert "--l-lo" in err and "--l-hi" in err


def test_main_io_error_exit_code(tmp_path, capsys):
    assert main(["simulate", *EXP, "--tmax", "3", "--out", str(tmp_path / "no" / "x.csv")]) == 1
    assert "x.csv" in capsys.readouterr().err


@pytest.mark.parametrize("sub, ic", [("simulate", STEP), ("analytic", EXP), ("compare", EXP), ("precision", STEP)])
def test_runs_are_byte_identical(tmp_path, sub, ic):
    extra = [] if sub == "precision" else ["--surface"]
    outs = []
    for k in (1, 2):
        out, surf = tmp_path / f"{sub}{k}.csv", tmp_path / f"{sub}{k}.dat"
        args = [sub, *ic, "--tmax", "400", "--stride", "50", "--out", str(out)]
        if extra:
            args += [*extra, str(surf)]
        assert main(args) == 0
        outs.append((out.read_bytes(), surf.read_bytes() if extra else b""))
    assert outs[0] == outs[1]


@pytest.mark.parametrize("sub, ic, extra", [
    ("simulate", STEP, ["--precision", "f32", "--scheme", "upwind"]),
    ("simulate", EXP, ["--compat-half-coefficient", "--dt", "0.002"]),
    ("analytic", EXP, ["--closed-form"]),
    ("compare", STEP, ["--alpha", "0.5"]),
    ("precision", EXP, ["--stride", "7"]),
])
def test_rerun_from_embedded_metadata(tmp_path, sub, ic, extra):
    first = tmp_path / "first.csv"
    assert main([sub, *ic, *extra, "--tmax", "500", "--out", str(first)]) == 0
    text = first.read_text()
    cli_line = next(ln for ln in text.splitlines() if ln.startswith("# cli="))
    second = tmp_path / "second.csv"
    assert main([*shlex.split(cli_line[len("# cli="):]), "--out", str(second)]) == 0
    assert second.read_bytes() == first.read_bytes()


def test_simulate_output_is_readable(tmp_path):
    out = tmp_path / "run.csv"
    assert main(["simulate", *STEP, "--tmax", "200", "--stride", "100", "--out", str(out)]) == 0
    back = read_trajectory_csv(out)
    assert back.status == "Completed" and back.times == [0.0, 0.1, 0.199]
    assert back.metadata["subcommand"] == "simulate"


def test_compare_output_fields(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["compare", *EXP, "--tmax", "100", "--stride", "50", "--out", str(out)]) == 0
    meta, header, rows = read_report(out)
    assert meta["status"] == "Completed"
    assert header[0] == "time_index" and [r[0] for r in rows] == [0, 50, 99]


def test_module_entry_point(tmp_path):
    out = tmp_path / "m.csv"
    res = subprocess.run([sys.executable, "-m", "microcrack", "analytic", *EXP, "--tmax", "20",
                          "--out", str(out)], capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert out.read_text().startswith("# status=Completed\n")
