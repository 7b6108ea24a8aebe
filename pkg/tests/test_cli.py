import json
import subprocess
import sys

import pytest

from hyperspectra import cli
from hyperspectra import tensor as tz

from conftest import DATA


def run(capsys, *argv):
    code = cli.run(list(map(str, argv)))
    out, err = capsys.readouterr()
    return code, out, err


def test_tensor_dump_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "tensor", DATA / "ex123.json", "--kind", "RW")
    assert code == 0
    T = tz.from_dict(json.loads(out))
    assert T == tz.build(__import__("hyperspectra").hypergraph.load(DATA / "ex123.json"), "RW")
    path = tmp_path / "t.json"
    assert cli.run(["tensor", str(DATA / "ex123.json"), "--kind", "L", "--out", str(path)]) == 0
    assert tz.load(path).kind == "L"


def test_spectrum_k2(capsys, tmp_path):
    plot = tmp_path / "p.csv"
    code, out, _ = run(capsys, "spectrum", DATA / "k2.json", "--plot-out", plot)
    assert code == 0
    rep = json.loads(out)
    assert sorted(e["re"] for e in rep["eigenvalues"]) == pytest.approx([-1, 1], abs=1e-10)
    assert rep["stats"]["paths"] == 4
    assert plot.read_text().splitlines()[0] == "re,im"
    assert len(plot.read_text().splitlines()) == 3


def test_spectrum_is_deterministic(capsys):
    runs = [run(capsys, "spectrum", DATA / "ex123.json", "--seed", "5", *extra)[1]
            for extra in ([], [], ["--workers", "2"])]
    assert runs[0] == runs[1] == runs[2]


def test_env_var_sets_seed(capsys, monkeypatch):
    _, a, _ = run(capsys, "spectrum", DATA / "ex123.json", "--seed", "7")
    monkeypatch.setenv("HYPERSPECTRA_SPECTRUM_SEED", "7")
    _, b, _ = run(capsys, "spectrum", DATA / "ex123.json")
    assert json.loads(a)["stats"]["seed"] == json.loads(b)["stats"]["seed"] == 7
    assert a == b


@pytest.mark.parametrize("argv", [
    ["spectrum", "missing.json"],
    ["spectrum", str(DATA / "k2.json"), "--kind", "Q"],
    ["spectrum", str(DATA / "isolated.json"), "--kind", "L"],
    ["gm", str(DATA / "k2.json"), "one"],
    ["check", str(DATA / "k2.json"), "--theorem", "flower"],
    ["nonsense"],
])
def test_input_errors_exit_3(capsys, argv):
    assert cli.run(argv) == 3


def test_bad_json_exits_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.run(["spectrum", str(bad)]) == 3
    bad.write_text(json.dumps({"vertices": ["a", "b"], "edges": [{"vertices": ["a"], "weight": 1}]}))
    assert cli.run(["tensor", str(bad)]) == 3


def test_gm_k2(capsys):
    code, out, err = run(capsys, "gm", DATA / "k2.json", "1")
    assert code == 0
    assert json.loads(out)["gm"] == 1
    assert "slices=" in err


def test_check_commands(capsys):
    code, out, err = run(capsys, "check", DATA / "ex123.json", "--theorem", "rowsums", "--theorem", "radius")
    assert code == 0
    assert [r["theorem_id"] for r in json.loads(out)] == ["rowsums", "radius"]
    code, out, _ = run(capsys, "check", DATA / "flower_3_2.json", "--theorem", "flower")
    assert code == 0 and json.loads(out)[0]["passed"]


def test_check_hbounds_reports_warning(capsys):
    # K2's Kirchhoff eigenvalue 2 exceeds the maximum degree 1
    code, out, err = run(capsys, "check", DATA / "k2.json", "--theorem", "hbounds")
    assert code == 0
    assert "warnings" in err


def test_flower_command(capsys):
    code, out, _ = run(capsys, "flower", 3, 2)
    assert code == 0
    assert "found 4 distinct, 0 outside the closed form" in out


def test_console_script_help():
    proc = subprocess.run([sys.executable, "-c", "from hyperspectra.cli import entry; entry()", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "spectrum" in proc.stdout
