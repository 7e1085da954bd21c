import json
import subprocess
import sys

import pytest

from supersdet import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_lpoly(capsys):
    code, out, _ = run_cli(capsys, "lpoly", "--k", "3")
    assert code == 0
    assert "L_1 = (1/3)*p1" in out
    assert "L_3" in out


def test_lgenus_builtin_match(capsys):
    code, out, _ = run_cli(capsys, "lgenus", "--manifold", "builtin:cp2")
    assert code == 0
    assert out.strip() == "L-genus = 1, signature = 1, MATCH"
    code, out, _ = run_cli(capsys, "lgenus", "--manifold", "builtin:k3")
    assert code == 0
    assert "-16" in out and "MATCH" in out


def test_lgenus_file_and_errors(capsys, tmp_path):
    doc = {"name": "point-ish", "dimension": 4, "kind": "pontryagin_numbers",
           "signature": 0, "pontryagin_numbers": {"p1": 0}}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "lgenus", "--manifold", str(path))
    assert code == 0 and "MATCH" in out

    missing = tmp_path / "missing.json"
    code, _, err = run_cli(capsys, "lgenus", "--manifold", str(missing))
    assert code == 2

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "lgenus", "--manifold", str(bad))
    assert code == 2


def test_lgenus_mismatch_exits_one(capsys, tmp_path):
    doc = {"name": "liar", "dimension": 4, "kind": "pontryagin_numbers",
           "signature": 5, "pontryagin_numbers": {"p1": 3}}
    path = tmp_path / "liar.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "lgenus", "--manifold", str(path))
    assert code == 1
    assert "MISMATCH" in out


def test_sdet_formal_report(capsys):
    code, out, _ = run_cli(capsys, "sdet", "--n", "4", "--k", "2",
                           "--mode", "formal", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["equal"] is True
    assert payload["mode"] == "formal"
    assert payload["sector"] == "PA"


def test_sdet_concrete_and_pp(capsys):
    code, out, _ = run_cli(capsys, "sdet", "--n", "4", "--k", "2", "--mode", "concrete")
    assert code == 0 and "equal = True" in out
    code, out, _ = run_cli(capsys, "sdet", "--n", "4", "--k", "3", "--pp")
    assert code == 0 and "equal = True" in out
    code, _, err = run_cli(capsys, "sdet", "--n", "5", "--k", "2", "--mode", "concrete")
    assert code == 2


def test_zeta_subcommand(capsys):
    code, out, _ = run_cli(capsys, "zeta", "--what", "product", "--n", "4")
    assert code == 0 and "r^(2)" in out
    code, out, _ = run_cli(capsys, "zeta", "--what", "trace", "--bc", "periodic", "--k", "1",
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["coefficient"] == {"num": -1, "den": 12}
    code, out, _ = run_cli(capsys, "zeta", "--what", "trace", "--bc", "antiperiodic", "--k", "1")
    assert code == 0 and "-1/4" in out


def test_pushforward_subcommand(capsys):
    code, out, _ = run_cli(capsys, "pushforward", "--manifold", "builtin:cp2",
                           "--class", "h^2")
    assert code == 0
    assert "= 1" in out
    code, _, _ = run_cli(capsys, "pushforward", "--manifold", "builtin:k3xcp2",
                         "--class", "1")
    assert code == 2  # numbers-only manifolds carry no ring model


def test_verify_suite_exit_code(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "series")
    assert code == 0
    assert "6/6 checks passed" in out


def test_json_determinism(capsys):
    outputs = []
    for _ in range(2):
        code, out, _ = run_cli(capsys, "sdet", "--n", "4", "--k", "3", "--format", "json")
        assert code == 0
        outputs.append(out.encode())
    assert outputs[0] == outputs[1]
    for _ in range(2):
        code, out, _ = run_cli(capsys, "verify", "--suite", "zeta", "--format", "json")
        assert code == 0
        outputs.append(out.encode())
    assert outputs[2] == outputs[3]


def test_truncation_env_override(capsys, monkeypatch):
    monkeypatch.setenv("SUPERSDET_TRUNCATION", "2")
    code, out, _ = run_cli(capsys, "sdet", "--n", "4", "--format", "json")
    assert code == 0
    assert json.loads(out)["K"] == 2
    monkeypatch.setenv("SUPERSDET_TRUNCATION", "zero")
    code, _, err = run_cli(capsys, "sdet", "--n", "4")
    assert code == 2


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "supersdet.cli", "lgenus", "--manifold", "builtin:hp2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "MATCH" in proc.stdout


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["lpoly", "--k", "2", "--frobnicate"])
    assert err.value.code == 2
