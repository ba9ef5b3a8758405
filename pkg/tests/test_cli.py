"""Sweep driver: spec parsing, table emission, exit codes, determinism."""

from __future__ import annotations

import json
import math
import shutil
import subprocess

import numpy as np
import pytest

from topoqubit import SpecError, __version__
from topoqubit.cli import (
    DEFAULT_NM_GAMMA0,
    main,
    parse_spec,
    run_corr_series,
)

pytestmark = pytest.mark.filterwarnings("ignore::topoqubit.HorizonWarning")


# ---------------------------------------------------------------------------
# spec parsing
# ---------------------------------------------------------------------------

def test_parse_spec_defaults():
    spec = parse_spec(mode="nm-scan", overrides={"q_values": [1.0, 3.0]})
    assert spec.mode == "nm-scan"
    assert spec.q_values == (1.0, 3.0)
    assert spec.gamma0_values == DEFAULT_NM_GAMMA0
    assert spec.b == 1.0
    assert spec.theta == pytest.approx(math.pi / 2.0)
    assert spec.format == "csv"


def test_parse_spec_file_and_override_precedence(tmp_path):
    p = tmp_path / "spec.json"
    p.write_text(json.dumps({
        "mode": "corr-series",
        "q_values": [1.0],
        "gamma0_values": [0.5],
        "b": 0.25,
        "n_grid": 64,
    }))
    spec = parse_spec(path=str(p), mode="corr-series", overrides={"b": 0.75})
    assert spec.b == 0.75                    # flag wins
    assert spec.n_grid == 64                 # file value survives
    assert spec.gamma0_values == (0.5,)


def test_parse_spec_rejections(tmp_path):
    with pytest.raises(SpecError):
        parse_spec(mode="corr-series")                       # q_values required
    with pytest.raises(SpecError):
        parse_spec(mode="bogus", overrides={"q_values": [1.0]})
    with pytest.raises(SpecError):
        parse_spec(mode="corr-series",
                   overrides={"q_values": [1.0], "gamma0_values": [0.5], "theta": 9.0})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SpecError):
        parse_spec(path=str(bad), mode="nm-scan")
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"mode": "nm-scan", "q_values": [1.0], "zzz": 1}))
    with pytest.raises(SpecError):
        parse_spec(path=str(unknown), mode="nm-scan")
    conflicting = tmp_path / "conflict.json"
    conflicting.write_text(json.dumps({"mode": "nm-scan", "q_values": [1.0]}))
    with pytest.raises(SpecError):
        parse_spec(path=str(conflicting), mode="qfi-series")
    with pytest.raises(FileNotFoundError):
        parse_spec(path=str(tmp_path / "missing.json"), mode="nm-scan")


def test_runner_rejects_foreign_mode():
    spec = parse_spec(mode="nm-scan", overrides={"q_values": [1.0]})
    with pytest.raises(SpecError):
        run_corr_series(spec)


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_exit_zero_and_csv_shape(tmp_path, capsys):
    out = tmp_path / "t.csv"
    rc = main(["corr-series", "--q", "1.0", "--gamma0", "1.0",
               "--t-max", "2.0", "--n-grid", "32", "--out", str(out)])
    assert rc == 0
    assert "wall time" in capsys.readouterr().err
    lines = out.read_text().splitlines()
    assert lines[0] == f"# tool: topoqubit {__version__}"
    assert lines[1].startswith("# spec: ")
    assert lines[2] == "q,gamma0,t,alpha,concurrence,discord,lqu,tnd,coherence_l1"
    rows = [ln.split(",") for ln in lines[3:]]
    assert len(rows) == 32
    first = [float(x) for x in rows[0]]
    # t = 0: full coherence, maximal entanglement, no dephasing yet
    assert first[2] == 0.0 and first[3] == 1.0
    assert first[4] == 1.0 and first[8] == 1.0
    for row in rows:
        assert all(np.isfinite(float(x)) for x in row)


def test_exit_two_on_bad_spec(capsys):
    assert main(["corr-series", "--gamma0", "1.0"]) == 2          # no --q
    assert main(["corr-series", "--q", "1.0", "--gamma0", "1.0",
                 "--theta", "9.0"]) == 2
    assert "spec error" in capsys.readouterr().err


def test_exit_three_on_convergence_failure(tmp_path, capsys):
    out = tmp_path / "t.csv"
    rc = main(["corr-series", "--q", "3.0", "--gamma0", "1.0",
               "--t-max", "1e7", "--n-grid", "16", "--out", str(out)])
    assert rc == 3
    assert "error" in capsys.readouterr().err


def test_exit_four_on_io_failure(tmp_path, capsys):
    rc = main(["corr-series", "--q", "1.0", "--gamma0", "1.0",
               "--t-max", "1.0", "--n-grid", "16",
               "--out", str(tmp_path / "no_such_dir" / "t.csv")])
    assert rc == 4
    rc = main(["nm-scan", "--spec", str(tmp_path / "missing.json")])
    assert rc == 4
    assert "i/o error" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# modes
# ---------------------------------------------------------------------------

def test_nm_scan_markovian_row(tmp_path):
    out = tmp_path / "nm.csv"
    rc = main(["nm-scan", "--q", "1.0", "--gamma0", "1.0",
               "--n-grid", "1024", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[2] == "q,gamma0,n_blp,n_lpp,critical_flag"
    q, g0, n_blp, n_lpp, flag = (float(x) for x in lines[3].split(","))
    assert (q, g0) == (1.0, 1.0)
    assert n_blp == 0.0 and n_lpp == 0.0 and flag == 0.0


def test_nm_scan_critical_row(tmp_path):
    out = tmp_path / "nm.csv"
    rc = main(["nm-scan", "--q", "3.0", "--gamma0", "1.6",
               "--n-grid", "2048", "--out", str(out)])
    assert rc == 0
    row = out.read_text().splitlines()[3].split(",")
    assert float(row[2]) > 0.0 and float(row[4]) == 1.0


def test_qfi_series_gap_column(tmp_path):
    out = tmp_path / "qfi.csv"
    rc = main(["qfi-series", "--q", "3.0", "--gamma0", "1.6",
               "--t-max", "10.0", "--n-grid", "64", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[2] == "q,gamma0,t,f_closed,f_general,rel_gap"
    for ln in lines[3:]:
        vals = [float(x) for x in ln.split(",")]
        if vals[3] > 1e-280:
            assert vals[5] <= 1e-8


def test_state_dump_is_valid_state(tmp_path):
    out = tmp_path / "dump.csv"
    rc = main(["state-dump", "--q", "1.0", "--gamma0", "1.0",
               "--t-max", "3.0", "--n-grid", "16", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    cols = lines[2].split(",")
    assert cols[:7] == ["q", "gamma0", "t", "rho11", "rho22", "rho33", "rho44"]
    assert "re_rho14" in cols and "im_rho23" in cols
    for ln in lines[3:]:
        v = dict(zip(cols, (float(x) for x in ln.split(","))))
        assert v["rho11"] + v["rho22"] + v["rho33"] + v["rho44"] == pytest.approx(1.0, abs=1e-12)
        # the Bell-like family keeps only the anti-diagonal coherence
        assert v["re_rho12"] == 0.0 and v["im_rho14"] == 0.0
        assert v["re_rho14"] >= 0.0


def test_json_format(tmp_path):
    out = tmp_path / "t.json"
    rc = main(["corr-series", "--q", "1.0", "--gamma0", "1.0",
               "--t-max", "1.0", "--n-grid", "16", "--format", "json",
               "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["meta"]["tool"] == "topoqubit"
    assert doc["meta"]["version"] == __version__
    assert doc["meta"]["spec"]["mode"] == "corr-series"
    assert doc["columns"][0] == "q"
    assert len(doc["rows"]) == 16
    assert all(len(r) == len(doc["columns"]) for r in doc["rows"])


def test_stdout_when_no_out_path(capsys):
    rc = main(["corr-series", "--q", "1.0", "--gamma0", "1.0",
               "--t-max", "1.0", "--n-grid", "16"])
    assert rc == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("# tool: topoqubit")
    assert "wall time" in captured.err


# ---------------------------------------------------------------------------
# determinism and reproducibility
# ---------------------------------------------------------------------------

def test_parallel_output_is_byte_identical(tmp_path):
    base = ["corr-series", "--q", "1.0", "3.0", "--gamma0", "0.5",
            "--t-max", "5.0", "--n-grid", "64"]
    serial = tmp_path / "serial.csv"
    parallel = tmp_path / "parallel.csv"
    assert main(base + ["--parallel", "1", "--out", str(serial)]) == 0
    assert main(base + ["--parallel", "2", "--out", str(parallel)]) == 0
    assert serial.read_bytes() == parallel.read_bytes()


def test_metadata_line_reproduces_run(tmp_path):
    first = tmp_path / "first.csv"
    rc = main(["qfi-series", "--q", "2.0", "--gamma0", "1.0",
               "--t-max", "4.0", "--n-grid", "32", "--out", str(first)])
    assert rc == 0
    spec_line = first.read_text().splitlines()[1]
    spec_json = spec_line.removeprefix("# spec: ")
    spec_file = tmp_path / "replay.json"
    spec_file.write_text(spec_json)
    second = tmp_path / "second.csv"
    rc = main(["qfi-series", "--spec", str(spec_file), "--out", str(second)])
    assert rc == 0
    assert first.read_bytes() == second.read_bytes()


def test_console_script_installed(tmp_path):
    exe = shutil.which("topoqubit")
    assert exe is not None, "console script should be on PATH after install"
    out = tmp_path / "cli.csv"
    proc = subprocess.run(
        [exe, "corr-series", "--q", "1.0", "--gamma0", "1.0",
         "--t-max", "1.0", "--n-grid", "16", "--out", str(out)],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert out.read_text().startswith("# tool: topoqubit")
