import json
import subprocess
import sys

import pytest

from eptl import cli


def run(argv):
    args = cli.parse(argv)
    return cli.run(args)


def emit(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr()


def test_fn_report_contains_fixture_with_citation(capsys):
    code, out = emit(["fn", "--N", "3", "--a", "0", "--b", "1"], capsys)
    rep = json.loads(out.out)
    assert code == 0 and rep["schema"] == 1 and rep["pass"]
    assert rep["result"]["fixture_F3"]["pass"]
    assert rep["result"]["fixture_F3"]["citation"] in out.out
    assert rep["config"]["N"] == 3


def test_intra_jordan_four_sites(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _ = emit(["intra-jordan", "--N", "4", "--P", "2", "--k", "0", "--json", str(path)], capsys)
    rep = json.loads(path.read_text())
    assert code == 0
    assert rep["result"]["fixture_omega0_H_Jordan"]["pass"]
    assert rep["result"]["cell"]["pass"]


def test_byte_stable(capsys):
    argv = ["intertwiner", "--N", "4", "--d", "0", "--q-half", "1/4", "--expand"]
    _, a = emit(argv, capsys)
    _, b = emit(argv, capsys)
    assert a.out == b.out


def test_exit_status_reflects_failures(capsys):
    code, out = emit(["relations", "--N", "2", "--rep", "rho", "--a", "1", "--b", "3"], capsys)
    assert code == 1
    rep = json.loads(out.out)
    assert not rep["pass"] and rep["failed"]


@pytest.mark.parametrize("argv,msg", [
    (["basis", "--N", "4", "--d", "1"], "d = N mod 2"),
    (["fn", "--N", "3", "--a", "2", "--b", "4"], "gcd"),
    (["intra-jordan", "--N", "3", "--P", "2", "--k", "0"], "P"),
    (["intertwiner", "--N", "4"], "--d"),
    (["repmat", "--N", "3", "--a", "1", "--b", "3", "--v", "x"], "angle"),
])
def test_config_errors(argv, msg, capsys):
    code, out = emit(argv, capsys)
    assert code == 2 and msg in out.err


def test_config_file(tmp_path, capsys):
    conf = tmp_path / "c.json"
    conf.write_text(json.dumps({"N": 5, "d": 1}))
    code, out = emit(["basis", "--config", str(conf)], capsys)
    rep = json.loads(out.out)
    assert code == 0 and rep["result"]["1"]["count"] == 10


def test_csv_matrices(capsys):
    code, out = emit(["repmat", "--N", "3", "--a", "1", "--b", "3", "--gen", "e1", "--csv"], capsys)
    lines = out.out.splitlines()
    assert lines[0] == "matrix,row,col,m,coeffs"
    assert all(l.startswith("result/matrices/e1,") for l in lines[1:])


def test_pretty(capsys):
    code, out = emit(["basis", "--N", "4", "--pretty"], capsys)
    assert out.out.rstrip().endswith("overall: PASS")


def test_bratelli_solid_boxes():
    rep = run(["bratelli", "--P", "2", "--maxN", "8"])
    assert rep["result"]["solid_boxes"] == [[4, 0], [5, 1], [6, 2], [7, 3], [8, 4]]


def test_float_scan_is_labeled():
    rep = run(["bratelli", "--P", "2", "--maxN", "6", "--float-scan"])
    fs = rep["result"]["float_scan"]
    assert fs["certifying"] is False
    assert [4, 0, 2] in fs["candidates"]
    assert fs["disagreements_with_figure"] == []


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "eptl.cli", "basis", "--N", "3"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["pass"]
