import json
import subprocess
import sys

import pytest

from pseudofield.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_moebius(capsys):
    for mode in ("float", "rational"):
        code, out, _ = run(capsys, "eval", "--instance", "moebius3", "--mode", mode,
                           "--x", "3", "--tuple", "2,0.5,-1")
        assert code == 0 and out.strip() == "5"


def test_eval_affine(capsys):
    code, out, _ = run(capsys, "eval", "--instance", "affine2", "--mode", "rational",
                       "--x", "2", "--tuple", "3,5")
    assert (code, out.strip()) == (0, "1")


def test_solve_gl2(capsys):
    args = ("solve", "--instance", "semidirect", "--n", "2", "--from", "2,0,0,1", "--to", "2,3,4,5")
    assert run(capsys, *args)[:2] == (0, "1,1.5,4,5\n")
    assert run(capsys, *args, "--mode", "rational")[:2] == (0, "1,3/2,4,5\n")


def test_solve_degenerate_exits_one(capsys):
    code, out, err = run(capsys, "solve", "--instance", "affine2", "--mode", "rational",
                         "--from", "2,2", "--to", "0,1")
    assert code == 1 and out == "" and err.startswith("undefined:")


@pytest.mark.parametrize("argv", [
    ("eval", "--instance", "affine2", "--x", "1", "--tuple", "1,2,3"),
    ("eval", "--instance", "affine2", "--x", "a", "--tuple", "1,2"),
    ("eval", "--instance", "moebius3", "--n", "4", "--x", "1", "--tuple", "1,2,3"),
    ("check", "--instance", "semidirect"),
    ("check", "--instance", "affine2", "--samples", "0"),
    ("check", "--instance", "affine2", "--tol", "-1"),
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "--instance", "nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_check_report_schema(capsys):
    code, out, _ = run(capsys, "check", "--instance", "affine2", "--mode", "rational", "--samples", "30")
    assert code == 0
    d = json.loads(out)
    assert d["pass"] is True and d["mode"] == "rational" and d["n"] == 2
    assert list(d) == sorted(d)
    entry = d["checks"][0]
    assert set(entry) == {"check_id", "paper_ref", "samples_attempted", "samples_defined",
                          "failures", "max_residual"}
    assert entry["max_residual"] == "0"


def test_roundtrip_report_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "roundtrip", "--instance", "moebius3", "--mode", "rational",
                       "--samples", "20", "--report", str(path))
    assert code == 0 and out == ""
    d = json.loads(path.read_text())
    assert any(c["check_id"] == "roundtrip.phi3" for c in d["checks"])


def test_identical_flags_identical_bytes(tmp_path):
    cmd = [sys.executable, "-m", "pseudofield.cli", "check", "--instance", "semidirect",
           "--n", "3", "--samples", "20", "--seed", "9"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["seed"] == 9
