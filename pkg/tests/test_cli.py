import json
import subprocess
import sys
from pathlib import Path

import pytest

from weylstack.cli import main

GOLDEN = Path(__file__).parent / "golden"
GOLDEN_CASES = [
    ("1,1,1", "0", "classify_1-1-1_0.json"),
    ("2,3", "1", "classify_2-3_1.json"),
    ("2,4", "3", "classify_2-4_3.json"),
    ("1,1,1", "-5", "classify_1-1-1_-5.json"),
    ("1,2,2", "1/2", "classify_1-2-2_1_2.json"),
]


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "weylstack", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.mark.parametrize("weights, twist, golden", GOLDEN_CASES)
def test_golden_classifications(weights, twist, golden):
    expected = (GOLDEN / golden).read_text()
    outputs = [run("classify", "--weights", weights, "--twist", twist, "--output", "json", "--seed", "7")
               for _ in range(2)]
    for code, out, _ in outputs:
        assert code == 0
        assert out == expected


def test_classify_text(capsys):
    assert main(["classify", "--weights", "1,1,1", "--twist", "0"]) == 0
    out = capsys.readouterr().out
    assert "stack: Yes" in out and "kernel: Zero" in out
    assert main(["classify", "--weights", "2,3", "--twist", "generic", "--output", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert (doc["exactness"], doc["kernel"], doc["n_caveat"]) == ("Guaranteed", "Zero", True)


def test_semigroup_queries(capsys):
    assert main(["semigroup", "--weights", "6,9,20", "frobenius"]) == 0
    assert capsys.readouterr().out == "43\n"
    assert main(["semigroup", "--weights", "2,3", "gaps"]) == 0
    assert capsys.readouterr().out == "[1]\n"
    assert main(["semigroup", "--weights", "2,3", "member", "7", "--output", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"] is True and 2 * doc["representation"][0] + 3 * doc["representation"][1] == 7


def test_weyl_eval(capsys):
    assert main(["weyl-eval", "[E, x0]", "--weights", "2,3"]) == 0
    assert capsys.readouterr().out == "2*x0\n"
    assert main(["weyl-eval", "d0 * x0^2"]) == 0
    assert capsys.readouterr().out == "x0^2 d0 + 2*x0\n"
    assert main(["weyl-eval", "x0 * x1 - x1 * x0"]) == 0
    assert capsys.readouterr().out == "0\n"


def test_verify_reports(capsys):
    assert main(["verify", "--weights", "2,3", "--twist", "0", "koszul", "--output", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"]
    details = " ".join(c["detail"] for c in doc["checks"])
    assert "(-3*d1, 2*d0): in ker phi2 = True, in image phi1 = False" in details
    assert main(["verify", "--weights", "1,1,1", "--twist", "0", "koszul", "--degree-lo", "-3",
                 "--degree-hi", "3", "--order-bound", "3"]) == 0
    assert main(["verify", "--weights", "2,3", "delta"]) == 0


def test_verify_deterministic(tmp_path):
    files = [tmp_path / "a.json", tmp_path / "b.json"]
    for f in files:
        assert main(["verify", "--weights", "2,3,5", "--twist", "1/2", "euler", "--seed", "3",
                     "--output", "json", "--out", str(f)]) == 0
    assert files[0].read_bytes() == files[1].read_bytes()


def test_verify_failure_exit(monkeypatch, capsys):
    from weylstack import cli

    monkeypatch.setattr(cli, "suite_delta", lambda cfg, rng: [cli.Check("forced", False, "", "x0")])
    assert main(["verify", "--weights", "2,3", "delta"]) == 4
    assert "FAIL forced" in capsys.readouterr().out


EXIT_MATRIX = [
    (["classify", "--weights", "2,3", "--twist", "1"], 0),
    (["classify", "--weights", "2,x", "--twist", "1"], 2),
    (["classify", "--weights", "2", "--twist", "1"], 2),
    (["classify", "--weights", "2,3", "--twist", "1/0"], 2),
    (["classify", "--weights", "2,3", "--twist", "1", "--degree-lo", "5", "--degree-hi", "1"], 2),
    (["semigroup", "--weights", "2,4", "frobenius"], 3),
    (["semigroup", "--weights", "3,6,9", "gaps"], 3),
    (["semigroup", "--weights", "2,3", "member"], 2),
    (["weyl-eval", "x0 +* 2"], 2),
    (["weyl-eval", "E"], 2),
    (["verify", "--weights", "2,3", "--padding", "1", "koszul"], 3),
    (["verify", "--weights", "2,3", "nonsense"], 2),
    (["nonsense"], 2),
]


def test_exit_code_matrix():
    first = [run(*args) for args, _ in EXIT_MATRIX]
    second = [run(*args) for args, _ in EXIT_MATRIX]
    assert first == second
    assert [code for code, _, _ in first] == [code for _, code in EXIT_MATRIX]


def test_parse_error_position():
    code, _, err = run("weyl-eval", "x0 +* 2")
    assert code == 2 and "at position 4" in err
