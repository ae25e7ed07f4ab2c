"""CLI subcommands end to end: exit codes, outputs and replay."""
from __future__ import annotations

import json

import pytest

from loewner_lab.cli import EXIT_CONFIG, EXIT_OK, main
from loewner_lab.config import SuiteConfig
from loewner_lab.report import write_dumps
from loewner_lab.suite import RESULTS, SuiteReport, combinations, make_instance


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    for key in ("SEED", "TRIALS", "DIMS", "BOUNDS", "RESULTS", "FUNCTIONS", "MAPS", "EXPONENTS"):
        monkeypatch.delenv(f"LOEWNER_LAB_{key}", raising=False)


SMALL = ["--results", "cor_inverse,prop21", "--dims", "1,2", "--trials", "4", "--bounds", "1:4",
         "--functions", "inv", "--maps", "identity,pinching", "--seed", "9"]


def test_verify_writes_json_report(tmp_path, capsys):
    out = tmp_path / "runs" / "r.json"
    assert main(["verify", *SMALL, "--out", str(out)]) == EXIT_OK
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert [r["result_id"] for r in payload["results"]] == ["prop21", "cor_inverse"]
    assert all(r["failures"] == 0 for r in payload["results"])
    assert "OK" in capsys.readouterr().out


def test_verify_csv_to_stdout(capsys):
    assert main(["verify", *SMALL, "--format", "csv"]) == EXIT_OK
    captured = capsys.readouterr()
    lines = captured.out.splitlines()
    assert lines[0].startswith("result_id,trial,seed")
    assert len(lines) == 8 + 1
    assert "cor_inverse" in captured.err


def test_bad_flags_exit_3(capsys):
    assert main(["verify", "--bounds", "2:2"]) == EXIT_CONFIG
    assert "bounds" in capsys.readouterr().err
    assert main(["verify", "--trials", "0"]) == EXIT_CONFIG


def test_config_file_flag(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("results=cor_inverse\ndims=1\ntrials=2\n", encoding="utf-8")
    out = tmp_path / "r.json"
    assert main(["verify", "--config", str(conf), "--out", str(out)]) == EXIT_OK
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["config"]["trials"] == 2
    assert main(["verify", "--config", str(tmp_path / "missing.conf")]) == EXIT_CONFIG


def test_constants_table(capsys):
    assert main(["constants", "--bounds", "1:4", "--exponents", "-1", "--functions", "inv"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "1.5625" in out and "invalid" in out


def test_constants_json_to_file(tmp_path):
    out = tmp_path / "k.json"
    assert main(["constants", "--bounds", "1.5:4", "--functions", "exp", "--format", "json",
                 "--out", str(out)]) == EXIT_OK
    rows = json.loads(out.read_text(encoding="utf-8"))
    assert [r["t"] for r in rows] == [-0.5, -1.0, -2.0, -3.0]


def test_oracle_command(capsys):
    assert main(["oracle", "--results", "cor22,cor_inverse", "--bounds", "1:4", "--exponents", "-1",
                 "--points", "9"]) == EXIT_OK
    assert "2/2 cases agree" in capsys.readouterr().out


def test_replay(tmp_path, capsys):
    entry = RESULTS["cor_inverse"]
    cfg = SuiteConfig(results="cor_inverse", dims="2", trials=1, bounds="1:4", maps="pinching", seed=1)
    inst = make_instance(entry, combinations(entry, cfg)[0], 0, cfg)
    report = SuiteReport(config={}, results=[], trials=[], provenance={},
                         failures=[{"error": "forced", "instance": inst}])
    [path] = write_dumps(report, tmp_path)
    assert main(["replay", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("cor_inverse  pinching  bounds 1:4")
    assert out.count("OK") == 2
    assert main(["replay", str(tmp_path / "missing.json")]) == EXIT_CONFIG


def test_replay_of_a_tampered_dump_exits_3(tmp_path, capsys):
    entry = RESULTS["cor_inverse"]
    cfg = SuiteConfig(results="cor_inverse", dims="2", trials=1, bounds="1:4", maps="pinching", seed=1)
    inst = make_instance(entry, combinations(entry, cfg)[0], 0, cfg)
    report = SuiteReport(config={}, results=[], trials=[], provenance={},
                         failures=[{"error": "forced", "instance": inst}])
    [path] = write_dumps(report, tmp_path)
    payload = json.loads(path.read_text(encoding="utf-8"))
    payload["instance"]["A"] = "2\n1.0,0.0 2.0,0.0\n0.0,0.0 3.0,0.0"
    path.write_text(json.dumps(payload), encoding="utf-8")
    assert main(["replay", str(path)]) == EXIT_CONFIG
    assert "NotHermitian" in capsys.readouterr().err

    payload["instance"]["A"] = "2\n9.0,0.0 0.0,0.0\n0.0,0.0 1.0,0.0"
    path.write_text(json.dumps(payload), encoding="utf-8")
    assert main(["replay", str(path)]) == EXIT_CONFIG
