import json
import subprocess
import sys

import pytest

from gradedflag.catalog_io import example_path
from gradedflag.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_catalog_listing(capsys):
    code, data = run_json(capsys, "catalog")
    assert code == 0 and "gl(2,1,1)" in data["names"]
    code, data = run_json(capsys, "catalog", "gl(2,1,1)")
    assert data["layers"] == {"2": 2, "1": 3, "0": 6, "-1": 3, "-2": 2}


def test_catalog_save_then_validate(capsys, tmp_path):
    path = tmp_path / "x.json"
    assert run(capsys, "catalog", "gl(1,1)", "--save", str(path))[0] == 0
    assert run(capsys, "validate", "--algebra", str(path))[0] == 0


def test_validate_shipped(capsys):
    code, out, _ = run(capsys, "validate", "--algebra", str(example_path("sl2")))
    assert code == 0 and out.startswith("ok: sl2")


def test_validate_broken(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(example_path("sl2").read_text().replace('[1, 2, ["0", "0", "-2"]]', '[1, 2, ["0", "1", "-2"]]'))
    code, data = run_json(capsys, "validate", "--algebra", str(bad))
    assert code == 1 and data["violations"] == [{"check": "jacobi", "triple": [0, 1, 2]}]


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "validate", "--algebra", str(tmp_path / "nope.json"))[0] == 2


def test_unknown_flag_and_suite(capsys):
    with pytest.raises(SystemExit) as info:
        main(["act", "--bogus"])
    assert info.value.code == 2
    assert run(capsys, "properties", "--algebra", "catalog:sl2", "--suite", "nope")[0] == 2


def test_act(capsys):
    assert run(capsys, "act", "--algebra", "catalog:sl2", "--x", "3*e")[1] == "3*e"
    code, out, _ = run(capsys, "act", "--algebra", "catalog:gl(1,1)", "--word", "-[0,0,1,0]", "--x", "[0,1,0,0]")
    assert out == "1/2*E12"
    code, data = run_json(capsys, "act", "--algebra", "catalog:gl(1,1)", "--word", "-[0,0,1,0]",
                          "--x", "[0,-1,0,0]")
    assert code == 0 and data == {"inside": False, "failures": [["d", 1], ["c", 1]]}


def test_bergman_and_kernel(capsys):
    code, data = run_json(capsys, "bergman", "--algebra", "catalog:sl2", "--x", "e", "--w", "f")
    assert data["det"] == "4"
    code, data = run_json(capsys, "kernel", "--algebra", "catalog:sl2", "--x", "e", "--y", "f")
    assert data["det"] == "0" and data["transversal"] is False


def test_torsor(capsys):
    code, data = run_json(capsys, "torsor", "--algebra", "catalog:sl2", "--v", "3/7*e")
    assert code == 0 and data["rounds"] == 1 and data["chart"] == ["3/7", "0", "0"]


def test_realize(capsys):
    code, out, _ = run(capsys, "realize", "--algebra", "catalog:sl2", "--Y", "f")
    assert out.endswith("= -t^2 e")
    code, data = run_json(capsys, "realize", "--algebra", "catalog:gl(2,1,1)", "--Y", "E11", "--layer", "2")
    assert data["map"] == "t1 E14"


def test_properties(capsys):
    code, data = run_json(capsys, "properties", "--algebra", "catalog:sl2", "--suite", "torsor",
                          "--trials", "100")
    assert code == 0 and data["results"][0]["passed"] == 100
    code, data = run_json(capsys, "properties", "--algebra", "catalog:gl(2,1,1)", "--suite", "cocycle",
                          "--trials", "50", "--seed", "3")
    assert code == 0 and data["ok"]


def test_json_is_deterministic(capsys):
    argv = ("properties", "--algebra", "catalog:gl(1,1)", "--suite", "all", "--trials", "5", "--seed", "11")
    first = run(capsys, *argv, "--format", "json")[1]
    assert first == run(capsys, *argv, "--format", "json")[1]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "gradedflag", "catalog"], capture_output=True, text=True)
    assert res.returncode == 0 and "sl2" in res.stdout
