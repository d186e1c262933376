import csv
import io
import json
import math
import subprocess
import sys

import pytest

from bohrkit.cli import main, round_sig, to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_radius_table_row(capsys):
    code, out, _ = run(capsys, "radius", "--family", "y", "--p", "0.6", "--k", "2", "--n", "1", "--m0", "4")
    d = json.loads(out)
    assert code == 0 and abs(d["root"] - 0.463452) < 1e-5 and d["unique_on_grid"] is True


def test_radius_closed(capsys):
    code, out, _ = run(capsys, "radius", "--family", "closed", "--which", "bohr-third", "--k", "1")
    assert code == 0 and json.loads(out)["root"] == pytest.approx(1 / 3, abs=1e-9)


def test_radius_other_families(capsys):
    assert json.loads(run(capsys, "radius", "--family", "rn", "--n", "1")[1])["root"] == pytest.approx(
        math.sqrt(5) - 2, abs=1e-8)
    assert json.loads(run(capsys, "radius", "--family", "rnprime", "--n", "1")[1])["root"] == pytest.approx(
        1 / 3, abs=1e-8)
    assert json.loads(run(capsys, "radius", "--family", "rap", "--a", "0", "--p", "1")[1])["root"] == pytest.approx(
        0.381966, abs=1e-6)


@pytest.mark.parametrize("argv", [
    ("radius", "--family", "y", "--p", "3.0", "--k", "1", "--n", "1", "--m0", "1"),
    ("radius", "--family", "y", "--k", "1"),
    ("radius", "--family", "bogus"),
    ("verify", "--functional", "nope"),
    ("multidim", "--theorem", "2.2", "--n", "5"),
    ("table1", "--tol", "-1"),
])
def test_invalid_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_no_root_exit_3(capsys, monkeypatch):
    from bohrkit import cli
    from bohrkit.radii import NoRootFound

    def boom(*a, **k):
        raise NoRootFound("none")

    monkeypatch.setattr(cli, "solve_radius", boom)
    assert run(capsys, "radius", "--family", "rn", "--n", "1")[0] == 3


def test_table1_csv_and_json(capsys):
    code, out, _ = run(capsys, "table1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8 and list(rows[0]) == ["k", "m0", "N", "p", "root"]
    assert abs(float(rows[0]["root"]) - 0.428676) < 1e-5
    assert "\r" not in out
    code, out, _ = run(capsys, "table1", "--format", "json")
    data = json.loads(out)
    assert len(data) == 8 and isinstance(data[0], dict)
    _, tight, _ = run(capsys, "table1", "--tol", "1e-12")
    assert all(abs(a["root"] - b["root"]) < 1e-5 for a, b in zip(data, json.loads(tight)))


def test_figure1(tmp_path, capsys):
    dest = tmp_path / "fig.csv"
    code, _, _ = run(capsys, "figure1", "--grid", "50", "--out", str(dest))
    rows = list(csv.DictReader(dest.open(encoding="utf-8")))
    assert code == 0 and len({r["label"] for r in rows}) == 8 and len(rows) == 400
    zero = [r for r in rows if float(r["r"]) == 0.0]
    assert sorted(-float(r["y"]) for r in zero) == sorted([0.12, 0.6, 0.1, 1.2, 1.6, 2.0, 0.19, 1.7])


def test_figure1_unwritable(capsys, tmp_path):
    assert run(capsys, "figure1", "--out", str(tmp_path / "missing" / "x.csv"))[0] == 4


def test_verify_majorant(capsys):
    code, out, _ = run(capsys, "verify", "--functional", "majorant", "--k", "2", "--trials", "10000", "--seed", "42")
    assert code == 0 and json.loads(out)["violations"] == []


def test_verify_failure_exit_5(capsys):
    code, out, _ = run(capsys, "verify", "--functional", "majorant", "--trials", "2000", "--z-radius", "0.4")
    assert code == 5 and json.loads(out)["violation_count"] > 0


def test_sharpness_refined_l(capsys):
    code, out, _ = run(capsys, "sharpness", "--functional", "refined-l", "--k", "1", "--probe-offset", "0.02")
    assert code == 0 and json.loads(out)["exceeded"] is True


def test_sharpness_below_exit_5(capsys):
    code, _, err = run(capsys, "sharpness", "--functional", "majorant", "--probe-offset", "-0.01", "--a-step", "0.001")
    assert code == 5 and "no witness" in err


def test_multidim(capsys):
    code, out, _ = run(capsys, "multidim", "--n", "2", "--theorem", "2.2", "--k", "1", "--lines", "1000", "--seed", "7")
    assert code == 0 and json.loads(out)["trials_run"] == 1000
    code, out, _ = run(capsys, "multidim", "--n", "3", "--theorem", "2.4", "--p", "1", "--N", "3", "--m0", "2",
                       "--k", "2", "--lines", "200")
    assert code == 0
    code, out, _ = run(capsys, "multidim", "--n", "2", "--theorem", "2.1", "--extremal")
    assert code == 0 and json.loads(out)["exceeded"] is True


def test_seed_from_env(capsys, monkeypatch):
    monkeypatch.setenv("BOHR_SEED", "123")
    code, out, _ = run(capsys, "verify", "--functional", "zero-omitted", "--trials", "20")
    assert json.loads(out)["seed"] == 123


def test_deterministic_output(capsys):
    argv = ("verify", "--functional", "refined-j", "--p", "2", "--n", "3", "--trials", "300", "--seed", "8")
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv, "--workers", "3")[1]
    assert a == b


def test_json_round_trip():
    obj = {"a": 0.1234567890123, "b": [1.0, float("inf")], "c": {"d": True, "e": "x"}}
    text = to_json(obj)
    assert json.loads(text) == round_sig(obj)
    assert to_json(json.loads(text)) == text
    assert round_sig(0.1234567890123) == 0.123456789


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "bohrkit", "radius", "--family", "closed", "--which", "rogosinski"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["root"] == 0.5
