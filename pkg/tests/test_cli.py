import io
import json
import subprocess
import sys

import numpy as np
import pytest

from fuzzystat.cli import main
from fuzzystat.readers import read_series


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_generate_formats():
    code, text = run(["generate", "--kind", "spike", "--n", "6"])
    assert code == 0 and text.split() == ["1", "2", "1", "4", "1", "6"]
    code, text = run(["generate", "--kind", "even-digit-evens", "--n", "20"])
    assert text.split() == [str(k) for k in range(10, 21, 2)]
    code, text = run(["generate", "--kind", "planted", "--n", "8", "--r", "0.25", "--m", "1"])
    assert len(text.split()) == 8


def test_generate_unknown_kind(capsys):
    code, _ = run(["generate", "--kind", "bogus", "--n", "3"])
    assert code == 3 and "even-digit-evens" in capsys.readouterr().err


def test_generate_bad_params():
    assert run(["generate", "--kind", "planted", "--n", "5", "--a", "3", "--m", "1"])[0] == 3


def test_analyze_roundtrip(tmp_path):
    path = tmp_path / "spike.csv"
    _, text = run(["generate", "--kind", "spike", "--n", "20000"])
    path.write_text(text)
    code, out = run(["analyze", "--input", str(path), "--candidates", "1,2", "--r", "0.5"])
    rep = json.loads(out)
    assert code == 0 and rep["candidates"][0]["verdict"] == "ACCEPT"
    assert np.array_equal(read_series(text), np.where(np.arange(1, 20001) % 2 == 0, np.arange(1, 20001), 1))
    code, out = run(["analyze", "--input", str(path), "--out-format", "text", "--candidates", "1"])
    assert code == 0 and "candidates" in out


def test_analyze_jsonl_field(tmp_path):
    path = tmp_path / "x.jsonl"
    path.write_text("".join(json.dumps({"v": 1 + 0.5**i}) + "\n" for i in range(200)))
    code, out = run(["analyze", "--input", str(path), "--field", "v", "--candidates", "1", "--eps-min", "1e-6", "--r", "0.25"])
    assert code == 0 and json.loads(out)["candidates"][0]["verdict"] == "ACCEPT"


@pytest.mark.parametrize("content", ["", "a\nb\n", "1\nnan\n"])
def test_analyze_parse_errors(tmp_path, content):
    path = tmp_path / "bad.csv"
    path.write_text(content)
    assert run(["analyze", "--input", str(path)])[0] == 2


def test_usage_errors(tmp_path):
    path = tmp_path / "ok.csv"
    path.write_text("1\n2\n3\n")
    assert run(["analyze", "--input", str(path), "--tail-fraction", "0"])[0] == 3
    assert run(["analyze", "--input", str(path), "--r", "-1"])[0] == 3
    assert run(["analyze", "--input", str(tmp_path / "missing.csv")])[0] == 3
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--bogus"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 3


def test_verify_single_suite_json():
    code, out = run(["verify", "--suite", "ex-2.1", "--n", "20000", "--out-format", "json"])
    data = json.loads(out)
    assert code == 0 and all(c["result"] == "PASS" for c in data["checks"])


def test_module_entry_point_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "fuzzystat", "analyze", "--input", "-", "--candidates", "0"],
        input="0\n0\n0\n0\n", capture_output=True, text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["n"] == 4
