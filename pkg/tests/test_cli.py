import csv
import json
import subprocess
import sys

import pytest

from rfaudit.cli import main


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def r_file(tmp_path):
    return write(tmp_path, "r.json", {"p": [0, 2], "q": [-1, 1], "m": 1, "n": 1})


@pytest.fixture
def doublet_file(tmp_path):
    return write(tmp_path, "d.json", {"p": [-0.5, 1], "q": [-0.50000001, 1], "m": 1, "n": 1})


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_audit_clean(capsys, r_file):
    code, out, _ = run_cli(capsys, "audit", r_file, "--density", "12")
    rep = json.loads(out)
    assert code == 0
    assert rep["summary"]["flagged_pairs"] == 0
    assert set(rep) >= {"tool", "config", "input", "sylvester", "coprimeness", "spherical",
                        "doublets", "verdicts", "summary"}
    certs = rep["doublets"]["certificates"]
    assert certs and all(not c["violations"] for c in certs)


def test_audit_flags_doublet(capsys, doublet_file):
    code, out, _ = run_cli(capsys, "audit", doublet_file, "--density", "12",
                           "--threshold", "1e-6")
    assert code == 2
    assert json.loads(out)["summary"]["flagged_pairs"] == 1


def test_audit_zero_denominator(capsys, tmp_path):
    bad = write(tmp_path, "bad.json", {"p": [1], "q": [0], "m": 0, "n": 0})
    code, _, err = run_cli(capsys, "audit", bad)
    assert code == 1 and "rfaudit: error:" in err


def test_audit_degenerate_and_malformed(capsys, tmp_path):
    same = write(tmp_path, "same.json", {"p": [1, 1], "q": [1, 1], "m": 1, "n": 1})
    assert run_cli(capsys, "audit", same)[0] == 1
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run_cli(capsys, "audit", str(broken))[0] == 1
    assert run_cli(capsys, "audit", str(tmp_path / "missing.json"))[0] == 1
    assert run_cli(capsys, "audit", same, "--region", "hexagon")[0] == 1


def test_audit_is_byte_stable(capsys, r_file):
    a = run_cli(capsys, "audit", r_file, "--density", "10", "--ell", "1", "--ell", "2")[1]
    b = run_cli(capsys, "audit", r_file, "--density", "10", "--ell", "1", "--ell", "2")[1]
    assert a == b
    assert [e["ell"] for e in json.loads(a)["sylvester"]] == [1, 2]


def test_audit_table_and_output_file(capsys, r_file, tmp_path):
    out_path = tmp_path / "rep.txt"
    code, out, _ = run_cli(capsys, "audit", r_file, "--density", "8", "--format", "table",
                           "-o", str(out_path))
    assert code == 0 and out == ""
    text = out_path.read_text()
    assert "summary.exit_code" in text and "tool.name" in text


def test_audit_plane_region(capsys, r_file):
    code, out, _ = run_cli(capsys, "audit", r_file, "--density", "8", "--region", "plane")
    assert code == 0
    assert json.loads(out)["spherical"]["rho_K"] is None


def test_verify_cli(capsys):
    code, out, _ = run_cli(capsys, "verify", "--seed", "1", "--trials", "2")
    rep = json.loads(out)
    assert rep["trials"] == 2 and code in (0, 2)
    assert code == (0 if rep["all_passed"] else 2)
    assert run_cli(capsys, "verify", "--trials", "0")[0] == 1


def test_distance_cli(capsys, r_file, tmp_path):
    near = write(tmp_path, "n.json", {"p": [0.001, 2], "q": [-1, 1], "m": 1, "n": 1})
    code, out, _ = run_cli(capsys, "distance", "--fn1", r_file, "--fn2", near, "--density", "12")
    assert code == 0
    assert all(v["ok"] for v in json.loads(out)["verdicts"])


def test_example_cli(capsys):
    code, out, _ = run_cli(capsys, "example", "--m", "2", "--density", "12")
    assert code == 0 and json.loads(out)["m"] == 2
    assert run_cli(capsys, "example", "--m", "0")[0] == 1


def test_growth_cli_csv(capsys, tmp_path):
    path = tmp_path / "g.csv"
    code, out, _ = run_cli(capsys, "growth", "--m-max", "3", "--density", "12", "--csv", str(path))
    assert code == 0 and json.loads(out)["growth_increasing"] is True
    rows = list(csv.DictReader(path.open()))
    assert [r["m"] for r in rows] == ["1", "2", "3"]
    assert all(r["in_window"] == "True" for r in rows)


def test_module_entry_point(r_file):
    proc = subprocess.run([sys.executable, "-m", "rfaudit.cli", "audit", r_file, "--density", "6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["tool"]["name"] == "rfaudit"
