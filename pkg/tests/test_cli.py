import json
from fractions import Fraction
import os
import shutil
import subprocess
import sys

import pytest

from scatterdiag.cli import RunConfig, main, parse_loop, run
from scatterdiag.errors import ConfigurationError


@pytest.fixture
def files(tmp_path, samples_dir):
    for name in os.listdir(samples_dir):
        shutil.copy(os.path.join(samples_dir, name), tmp_path / name)
    return tmp_path


def test_complete_then_check(files, capsys):
    out = files / "out.json"
    assert main(["complete", "--input", str(files / "two_line_tropical.json"), "--output", str(out)]) == 0
    assert main(["check", "--input", str(out)]) == 0
    assert "consistent mod t^9" in capsys.readouterr().out
    doc = json.loads(out.read_text())
    assert [a["label"] for a in doc["added"]] == ["1 + t^2*x*y"]


def test_check_inconsistent(files, capsys):
    assert main(["check", "-i", str(files / "two_line_tropical.json"), "--order", "3"]) == 1
    assert "defect of t-order 2" in capsys.readouterr().out


def test_complete_extended_example(files):
    out = files / "ext.json"
    assert main(["complete", "-i", str(files / "extended_two_wall.json"), "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    (added,) = doc["added"]
    assert added["label"] == "(E12, 0) t^2*x*y"
    assert added["kind"] == "ray" and added["direction"] == [1, 1]


def test_complete_output_is_deterministic(files):
    a, b = files / "a.json", files / "b.json"
    main(["complete", "-i", str(files / "two_line_quantum.json"), "-o", str(a)])
    main(["complete", "-i", str(files / "two_line_quantum.json"), "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_product_identity_for_double_crossing(files, capsys):
    assert main(["product", "-i", str(files / "two_line_tropical.json"), "--loop", "5,-1;7,-1;7,1;5,1"]) == 0
    assert "log = 0 (identity)" in capsys.readouterr().out


def test_product_prints_log(files, capsys):
    assert main(["product", "-i", str(files / "two_line_tropical.json"), "-N", "2", "--loop", "1,-1;1,1;-1,1;-1,-1"]) == 0
    assert capsys.readouterr().out.strip() == "log = -1 d[-1,1] t^2*x*y"


def test_render_and_print(files, capsys):
    svg = files / "d.svg"
    assert main(["render", "-i", str(files / "two_line_tropical.json"), "--svg", str(svg), "--size", "200", "--labels", "full"]) == 0
    assert svg.read_text().startswith("<svg")
    assert main(["print", "-i", str(files / "two_line_tropical.json")]) == 0
    text = capsys.readouterr().out
    assert "wall 0: line from (0, 0) along (1, 0), grade (1, 0): f = 1 + t*x" in text
    assert main(["print", "-i", str(files / "extended_two_wall.json")]) == 0
    assert "log = (-E12, 0) t*x" in capsys.readouterr().out


def test_schema_error_exit(files, capsys):
    bad = files / "bad.json"
    doc = json.loads((files / "two_line_tropical.json").read_text())
    doc["walls"][1]["wall_function"] = "1 + t*x"
    bad.write_text(json.dumps(doc))
    assert main(["check", "-i", str(bad)]) == 2
    assert "wall 1" in capsys.readouterr().err
    assert main(["check", "-i", str(files / "missing.json")]) == 2


def test_unsupported_exit(files, capsys):
    doc = json.loads((files / "two_line_tropical.json").read_text())
    doc["walls"].append({"base": ["1/1", "0/1"], "direction": [1, -1], "kind": "line", "grade": [1, -1], "wall_function": "1 + t*x*y^-1"})
    p = files / "three.json"
    p.write_text(json.dumps(doc))
    assert main(["check", "-i", str(p)]) == 3
    assert "common point" in capsys.readouterr().err


def test_non_generic_exit(files, capsys):
    assert main(["product", "-i", str(files / "two_line_tropical.json"), "--loop", "1,0;0,1;-1,1"]) == 4
    err = capsys.readouterr().err
    assert "segment 0" in err and "wall 0" in err


def test_non_generic_message_names_segment(files, capsys):
    main(["product", "-i", str(files / "two_line_tropical.json"), "--loop", "2,0;1,1;-1,1"])
    err = capsys.readouterr().err
    assert "segment" in err and "wall 0" in err


def test_bad_arguments(files, capsys):
    assert main(["product", "-i", str(files / "two_line_tropical.json"), "--loop", "1;2"]) == 2
    assert "loop vertex 0" in capsys.readouterr().err
    assert main(["check", "-i", str(files / "two_line_tropical.json"), "--order", "0"]) == 2
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_run_config_invariants(files):
    with pytest.raises(ConfigurationError):
        RunConfig("product", files / "x.json")
    with pytest.raises(ConfigurationError):
        RunConfig("render", files / "x.json")
    with pytest.raises(ConfigurationError):
        RunConfig("check", files / "x.json", order=0)
    assert parse_loop("1/2,0; 0,-1/3 ;") == ((Fraction(1, 2), 0), (0, Fraction(-1, 3)))


def test_run_direct(files, capsys):
    cfg = RunConfig("check", files / "two_line_tropical.json", order=2)
    assert run(cfg) == 1


def test_console_script(files):
    exe = shutil.which("scatterdiag")
    cmd = [exe] if exe else [sys.executable, "-m", "scatterdiag.cli"]
    res = subprocess.run(cmd + ["check", "-i", str(files / "extended_two_wall.json")], capture_output=True, text=True)
    assert res.returncode == 1
    assert "defect of t-order 2" in res.stdout
