"""Command-line interface: JSON in/out, determinism, exit codes."""

import json
import subprocess
import sys

import pytest

from padharm.cli import main


def run_cli(argv, payload=None, tmp_path=None):
    """Invoke main() with a payload file; capture stdout/stderr/exit code."""
    args = list(argv)
    if payload is not None:
        path = tmp_path / "payload.json"
        path.write_text(json.dumps(payload))
        args = ["--payload", str(path)] + args
    out_path = tmp_path / "out.json"
    args = ["--out", str(out_path)] + args
    code = main(args)
    text = out_path.read_text() if out_path.exists() else ""
    return code, text


def test_invariants_round_trip(tmp_path):
    code, text = run_cli(["invariants"],
                         {"matrix": [[0, 1], [2, 0]]}, tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["command"] == "invariants"
    assert doc["result"]["a"] == ["0"]
    assert doc["result"]["b"] == ["0", "2"]


def test_section_then_invariants(tmp_path):
    code, text = run_cli(
        ["section"], {"kind": "sigma", "a": ["1/2"], "b": [2, 3]}, tmp_path)
    assert code == 0
    matrix = json.loads(text)["result"]["matrix"]
    code, text = run_cli(["invariants"], {"matrix": matrix}, tmp_path)
    assert json.loads(text)["result"] == {"a": ["1/2"], "b": ["2", "3"]}


def test_oi_rs_frozen_example(tmp_path):
    payload = {
        "X": [0, 1, 1, 0],
        "f": {"space": {"kind": "matrix-f", "k": 2},
              "terms": [{"coeff": 1}]},
    }
    code, text = run_cli(["oi-rs"], payload, tmp_path)
    assert code == 0
    result = json.loads(text)["result"]
    assert result["measure"] == "unnormalized"
    assert result["value_at_s0"]["terms"] == [["0", "2/3"]]


def test_oi_rs_normalized_measure(tmp_path):
    payload = {
        "X": [0, 1, 1, 0],
        "f": {"space": {"kind": "matrix-f", "k": 2},
              "terms": [{"coeff": 1}]},
    }
    code, text = run_cli(["--measure", "norm", "oi-rs"], payload, tmp_path)
    assert code == 0
    result = json.loads(text)["result"]
    assert result["measure"] == "normalized"
    assert result["value_at_s0"]["terms"] == [["0", "1"]]


def test_oi_nilpotent_default(tmp_path):
    code, text = run_cli(["oi-nilpotent"], {"n": 1}, tmp_path)
    assert code == 0
    result = json.loads(text)["result"]
    # (1 - 1/q)/(1 + T) at s = 0 is (1 - 1/q)/2 = 1/3 for q = 3
    assert result["value_at_s0"]["terms"] == [["0", "1/3"]]
    assert result["pole_report"][0]["orders"]["s=1/2+"] == 0


def test_match_default_forms(tmp_path):
    payload = {"matrix": [[[0, 1], [0, 1]], [[0, 1], [0, 2]]]}
    code, text = run_cli(["match"], payload, tmp_path)
    assert code == 0
    result = json.loads(text)["result"]
    assert result["side"] in (0, 1)
    assert result["disc_classes"] == ["1", "3"]


def test_local_factors_table(tmp_path):
    code, text = run_cli(["local-factors"], {"q": 3, "n_max": 2}, tmp_path)
    assert code == 0
    table = json.loads(text)["result"]["table"]
    assert table and all(row["rational_function"]["var"] == "q^-1"
                         for row in table)


def test_dagger_gen(tmp_path):
    code, text = run_cli(["dagger-gen"], {"kind": "scalar", "m": 1}, tmp_path)
    assert code == 0
    result = json.loads(text)["result"]
    assert result["admissible"] is True
    assert result["packet"]["terms"]


def test_fourier_command_determinism(tmp_path):
    payload = {"packet": {"space": {"kind": "f", "dim": 1},
                          "terms": [{"coeff": 1, "exps": [1],
                                     "center": ["1/3"]}]}}
    runs = set()
    for _ in range(2):
        code, text = run_cli(["fourier"], payload, tmp_path)
        assert code == 0
        runs.add(text)
    assert len(runs) == 1


def test_schema_error_exit_code(tmp_path, capsys):
    code, _ = run_cli(["invariants"], {"matrix": [[1, 2]]}, tmp_path)
    assert code == 2
    err = capsys.readouterr().err
    assert json.loads(err)["error"]["type"] == "SchemaError"
    assert "/matrix" in json.loads(err)["error"]["message"]


def test_bad_config_exit_code(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": 2}))
    code, _ = run_cli(["--config", str(cfg), "invariants"],
                      {"matrix": [[0, 1], [1, 0]]}, tmp_path)
    assert code == 2
    assert "/p" in capsys.readouterr().err


def test_rank_budget_exit_code(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"budgets": {"max_n": 1}}))
    big = [[0] * 4 for _ in range(4)]
    code, _ = run_cli(["--config", str(cfg), "invariants"],
                      {"matrix": big}, tmp_path)
    assert code == 2


def test_verify_suite_small(tmp_path):
    code, text = run_cli(
        ["verify-suite", "section-identities", "--n", "2", "--samples", "5"],
        None, tmp_path)
    assert code == 0
    result = json.loads(text)["result"]
    assert result["passed"] is True
    assert result["failures"] == []


def test_germ_check_command(tmp_path):
    payload = {"m": 1, "r": 3, "points": [[0, 1, 0], [1, 1, 0]]}
    code, text = run_cli(["germ-check"], payload, tmp_path)
    assert code == 0
    result = json.loads(text)["result"]
    assert result["all_equal"] is True
    assert len(result["points"]) == 2


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "padharm.cli", "--version"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip()


def test_unknown_suite(tmp_path, capsys):
    with pytest.raises(SystemExit):
        main(["verify-suite", "nonsense"])
