import json
import subprocess
import sys

import jsonschema
import pytest

from newton_smoothing import serialize as ser
from newton_smoothing.catalog import EXAMPLES, P_A
from newton_smoothing.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_json_validates(capsys):
    code, out, _ = run(["analyze", P_A], capsys)
    assert code == 0
    report = json.loads(out)
    ser.validate_report(report)
    assert report["newton"]["delta"] == "8/5"
    assert report["profiles"]["literal"]["polyline"][-1] == ["1/2", "5/8"]
    assert report["profiles_diverge"] is False


def test_profile_csv(capsys):
    code, out, _ = run(["profile", "t1^2 + t2^4", "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines() == ["inv_p,alpha", "0,0", "1/4,1/2", "1/2,3/4"]


def test_profile_tsv_exclude_axis(capsys):
    code, out, _ = run(["profile", "t1^2 + t2^4", "--format", "tsv", "--r-convention", "exclude-axis"], capsys)
    assert out.splitlines()[1:] == ["0\t0", "3/8\t3/4", "1/2\t3/4"]


def test_check_failure_exit_code(capsys):
    code, out, _ = run(["check", EXAMPLES["square-degenerate"]], capsys)
    assert code == 1
    report = json.loads(out)
    assert report["conditions"]["verdict"] == "FAIL"
    assert report["conditions"]["witnesses"]


def test_profile_withheld_unless_forced(capsys):
    _, out, _ = run(["profile", EXAMPLES["square-degenerate"]], capsys)
    assert "profiles" not in json.loads(out)
    _, out, _ = run(["profile", EXAMPLES["square-degenerate"], "--ignore-conditions"], capsys)
    assert "profiles" in json.loads(out)


def test_parse_error_exit_code(capsys):
    code, out, err = run(["analyze", "t1^2 +"], capsys)
    assert code == 2
    assert json.loads(out)["error"]["kind"] == "parse"
    assert "expected a term" in err


def test_unsupported_exit_code(capsys):
    code, out, _ = run(["analyze", "t1^2*t2^4"], capsys)
    assert code == 3
    assert json.loads(out)["error"]["kind"] == "unsupported"


def test_strict_exponents_off(capsys):
    code, _, _ = run(["check", "t1^2 + t1*t2^4 + t2^6", "--strict-exponents", "off"], capsys)
    assert code in (0, 1)


def test_knapp_csv(capsys):
    code, out, _ = run(["knapp", P_A, "--preset", "full-box", "--format", "csv"], capsys)
    assert code == 0
    assert "full-box,PASS,3,2,1" in out


def test_decompose(capsys, tmp_path):
    target = tmp_path / "dec.json"
    code, _, _ = run(["decompose", P_A, "--box", "12", "--out", str(target)], capsys)
    report = json.loads(target.read_text())
    ser.validate_report(report)
    assert code == 0 and report["decomposition"]["covered_once"]
    assert report["decomposition"]["normals"] == [[1, 0], [4, 1], [0, 1]]


def test_decompose_bad_normals(capsys):
    code, _, _ = run(["decompose", P_A, "--normals", "1,2;2,1"], capsys)
    assert code == 3


def test_decay_subcommand(capsys):
    code, out, _ = run(["decay", "t1^2 + t2^4", "--v", "1,1", "--index", "1,0", "--xi-range", "9:12"], capsys)
    report = json.loads(out)
    ser.validate_report(report)
    assert code == 0 and report["decay"]["verdict"] == "PASS"


def test_file_input(capsys, tmp_path):
    src = tmp_path / "p.txt"
    src.write_text(P_A + "\n")
    code, out, _ = run(["check", "--file", str(src)], capsys)
    assert code == 0 and json.loads(out)["input"]["text"] == P_A


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "newton_smoothing", "check", P_A], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "check"


def test_schema_rejects_unknown_top_level_keys():
    with pytest.raises(jsonschema.ValidationError):
        ser.validate_report({"tool": {"name": "x", "version": "0"}, "command": "check", "input": {"text": ""}, "extra": 1})
