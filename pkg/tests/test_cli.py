import json
import subprocess
import sys

import pytest

from curvecount.cli import main, run


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("CURVECOUNT_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


def records(text):
    lines = [json.loads(x) for x in text.splitlines()]
    return lines[:-1], lines[-1]["summary"]


def strip_timing(text):
    out = []
    for line in text.splitlines():
        blob = json.loads(line)
        if "summary" in blob:
            blob["summary"].pop("elapsed_seconds")
        out.append(blob)
    return out


def test_dt_k3xe_value(capsys):
    assert main(["dt", "k3xe", "--n", "1", "--d", "0"]) == 0
    recs, summary = records(capsys.readouterr().out)
    assert {r["value"] for r in recs} == {"24/1"}
    assert summary["passed"]


def test_dt_with_beta(capsys):
    assert main(["dt", "k3xe", "--n", "1", "--d", "0", "--beta-sq", "-2"]) == 0
    recs, _ = records(capsys.readouterr().out)
    assert recs[0]["value"] == "1/1" and recs[0]["route"] == "multiple_cover"


def test_dt_abelian(capsys):
    assert main(["dt", "abelian", "--n", "2", "--type", "0,0,2"]) == 0
    recs, _ = records(capsys.readouterr().out)
    assert {r["value"] for r in recs} == {"-5/2"}
    assert len(recs) == 3


def test_tables_m_csv(capsys):
    assert main(["tables", "m", "--hmax", "2", "--dmax", "2", "--nmax", "5", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "h,d,n,value"
    assert "1,0,1,-24/1" in lines


def test_verify_k3xe_routes_exit_zero(capsys):
    assert main(["verify", "thm1", "--nmax", "10", "--dmax", "5", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "overall: PASS" in out


def test_failing_run_exits_nonzero(capsys):
    assert main(["gw-check", "--gmax", "3", "--dmax", "1", "--scheme", "single_constant"]) == 1


def test_bad_class_exits_two(capsys):
    assert main(["dt", "k3xe", "--n", "0", "--d", "1"]) == 2
    assert "error" in capsys.readouterr().err


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code != 0


def test_inconsistent_bounds(capsys):
    assert main(["igusa", "--hmax", "2", "--dmax", "2", "--plo", "-3"]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["igusa", "--hmax", "1", "--dmax", "1", "--nmax", "4"],
        ["wallcross", "k3xe", "--nmax", "4", "--dmax", "2"],
        ["wallcross", "abelian", "--nmax", "4", "--dmax", "2"],
        ["partitions", "--d", "3", "--nmax", "6"],
        ["partitions", "--d", "2", "--nmax", "8"],
        ["kummer", "--d", "3", "--ey", "24", "--nmax", "5"],
        ["kummer", "--d", "2", "--ey", "1", "--nmax", "5"],
        ["gw-check", "--gmax", "4", "--dmax", "2"],
        ["verify", "thm2", "--nmax", "4", "--dmax", "3"],
        ["verify", "thm3", "--nmax", "6", "--dmax", "2"],
        ["tables", "c", "--bound", "8"],
        ["tables", "a", "--bound", "8"],
        ["tables", "mdirect", "--dmax", "2", "--nmax", "3"],
        ["tables", "eta", "--tmax", "4"],
        ["tables", "macmahon", "--qmax", "4"],
    ],
)
def test_subcommands_pass(argv):
    for fmt in ("json", "csv", "text"):
        rep, text = run(argv + ["--format", fmt])
        assert rep.passed and text


def test_deterministic_output():
    argv = ["verify", "thm2", "--nmax", "5", "--dmax", "3"]
    assert strip_timing(run(argv)[1]) == strip_timing(run(argv)[1])


def test_cache_transparency(cache_dir):
    argv = ["igusa", "--hmax", "1", "--dmax", "2", "--nmax", "5"]
    fresh = strip_timing(run(argv + ["--no-cache"])[1])
    run(argv)
    assert list(cache_dir.glob("*.json"))
    cached = strip_timing(run(argv)[1])
    assert fresh == cached


def test_cache_dir_flag(tmp_path):
    run(["tables", "m", "--hmax", "1", "--dmax", "1", "--nmax", "3", "--cache-dir", str(tmp_path / "x")])
    assert list((tmp_path / "x").glob("*.json"))


def test_output_file_and_jobs(tmp_path):
    out = tmp_path / "rep.jsonl"
    rep, text = run(["tables", "eta", "--tmax", "3", "--output", str(out), "--jobs", "4"])
    assert out.read_text() == text
    assert rep.config["jobs"] == 4


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "curvecount.cli", "dt", "k3xe", "--n", "2", "--d", "0", "--format", "text"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "-60/1" in proc.stdout
