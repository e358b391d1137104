import json
import math
import subprocess
import sys

import pytest

from loggas import cli
from loggas.cli import Row, RunReport, report_to_csv, rows_from_csv


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_all_methods(capsys):
    code, out, _ = run(["eval", "--s", "20", "--kappa", "0.5", "--json"], capsys)
    assert code == 0
    doc = json.loads(out)
    by = {r["method"]: r for r in doc["rows"]}
    assert by["oracle"]["regime"] == "Oracle"
    assert abs(by["theorem1"]["log_det"] - by["oracle"]["log_det"]) < 1e-3
    assert "skipped=" in by["theorem2"]["flags"]
    assert by["bounds-lower"]["log_det"] <= by["oracle"]["log_det"] <= by["bounds-upper"]["log_det"]
    assert doc["meta"]["node_rule"] == "max(60, ceil(10 s))"


def test_eval_explicit_out_of_regime_is_flagged(capsys):
    code, out, _ = run(["eval", "--s", "10", "--v", "1", "--method", "theorem2"], capsys)
    assert code == 2
    assert "error=RegimeError" in out


def test_eval_precision_guard_row(capsys):
    code, out, _ = run(["eval", "--s", "20", "--v", "18", "--method", "oracle"], capsys)
    assert code == 2
    assert "PrecisionDomainError" in out and "14.57" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--s", "10"],
        ["eval", "--v", "1"],
        ["eval", "--s", "10", "--v", "1", "--kappa", "0.1"],
        ["eval", "--s", "10", "--v", "1", "--method", "nonsense"],
        ["scan", "--axis", "kappa", "--s", "10"],
        ["scan", "--axis", "s", "--start", "5", "--stop", "10"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as info:
        code = cli.main(argv)
        raise SystemExit(code)
    assert info.value.code == 1


def test_scan_csv_round_trip_and_determinism(tmp_path, capsys):
    argv = ["scan", "--axis", "kappa", "--s", "15", "--start", "0.2", "--stop", "0.8", "--steps", "4", "--methods", "oracle,theorem1"]
    code, first, err = run(argv, capsys)
    assert code == 0 and "rows=8" in err
    _, second, _ = run(argv, capsys)
    assert first == second
    rows = rows_from_csv(first)
    assert len(rows) == 8
    assert report_to_csv(RunReport(rows)) == first
    out = tmp_path / "scan.csv"
    run(argv + ["--out", str(out)], capsys)
    assert out.read_text() == first
    meta = json.loads((tmp_path / "scan.csv.meta.json").read_text())
    assert meta["config"]["s"] == 15.0


def test_csv_preserves_full_precision():
    x = 0.1 + 0.2
    rep = RunReport([Row(1.0, x, x, "oracle", -math.pi, None, "Oracle", "")])
    back = rows_from_csv(report_to_csv(rep))[0]
    assert back.v == x and back.log_det == -math.pi and back.error_bound is None


def test_scan_threads_agree(capsys, monkeypatch):
    argv = ["scan", "--axis", "s", "--kappa", "0.5", "--start", "10", "--stop", "20", "--steps", "3", "--methods", "oracle,fixedv"]
    _, serial, _ = run(argv, capsys)
    monkeypatch.setenv("LOGGAS_THREADS", "3")
    _, threaded, _ = run(argv, capsys)
    assert serial == threaded


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# bulk point\ns = 12\nkappa = 0.4\nmethod = oracle\n")
    code, out, _ = run(["eval", "--config", str(cfg), "--json"], capsys)
    assert code == 0
    rows = json.loads(out)["rows"]
    assert len(rows) == 1 and rows[0]["s"] == 12.0
    _, out, _ = run(["eval", "--config", str(cfg), "--s", "14", "--json"], capsys)
    assert json.loads(out)["rows"][0]["s"] == 14.0
    cfg.write_text("bogus = 1\n")
    code, _, err = run(["eval", "--config", str(cfg)], capsys)
    assert code == 1 and "unknown key" in err


def test_stokes(capsys):
    code, out, _ = run(["scan", "--stokes", "--s", "100", "--q-max", "2"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "s,q,chi,v"
    s, q, chi, v = lines[2].split(",")
    assert int(q) == 2 and float(chi) == 0.75
    assert float(v) == pytest.approx(100 - 0.75 * math.log(100))


def test_pn(capsys):
    code, out, err = run(["pn", "--s", "3", "--n-max", "15"], capsys)
    assert code == 0 and err == ""
    assert "sum p_n" in out
    code, _, err = run(["pn", "--s", "10", "--n-max", "2"], capsys)
    assert code == 0 and "normalization deficit" in err


def test_verify_quick(capsys):
    code, out, _ = run(["verify", "--quick", "--suite", "theta", "--json"], capsys)
    assert code == 0
    assert all(c["passed"] for c in json.loads(out))


def test_verify_failure_exit_code(capsys, monkeypatch):
    from loggas import verify

    def bad(quick=False):
        yield verify.Check("theta", "forced", 1.0, 0.0)

    monkeypatch.setitem(verify.SUITES, "theta", bad)
    code, _, err = run(["verify", "--suite", "theta"], capsys)
    assert code == 3 and "forced" in err


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "loggas.cli", "eval", "--s", "5", "--v", "1", "--method", "oracle"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "Oracle" in res.stdout
