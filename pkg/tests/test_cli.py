import json
import shutil
import subprocess
import sys

import pytest

from conftest import DATA
from skewmorita.cli import main
from skewmorita.selftest import fixture_dir

D10 = str(fixture_dir() / "d10.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_reduce_summary(capsys):
    code, out, _ = run(capsys, "reduce", D10)
    assert code == 0
    assert out.splitlines()[0] == "2 vertices, 4 arrows"


def test_reduce_trivial_counts(capsys):
    code, out, _ = run(capsys, "reduce", str(fixture_dir() / "trivial.json"))
    assert code == 0 and out.startswith("3 vertices, 5 arrows")


def test_reduce_json_is_deterministic(capsys):
    _, a, _ = run(capsys, "reduce", "--json", D10)
    _, b, _ = run(capsys, "reduce", "--json", D10)
    assert a == b
    assert a == (fixture_dir() / "golden" / "d10_reduce.json").read_text()


def test_reduce_dot(capsys):
    code, out, _ = run(capsys, "reduce", "--dot", D10)
    assert code == 0 and out.startswith("digraph")


def test_broken_action_exit_code(capsys):
    code, out, err = run(capsys, "reduce", str(DATA / "broken_action.json"))
    assert code == 2
    details = json.loads(err)
    assert details["error"] == "action" and "s" in details["pair"]


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "reduce", str(tmp_path / "nope.json"))
    assert code == 2 and json.loads(err)["error"] == "file"


@pytest.mark.parametrize("flag", ["--fast", "--slow", "--both"])
def test_transport_potential(capsys, flag):
    code, out, _ = run(capsys, "transport", D10, flag, "--json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["paths"]) == 32
    assert {json.dumps(p["coeff"]) for p in doc["paths"]} == {json.dumps(doc["paths"][0]["coeff"])}


def test_transport_unit(capsys):
    code, out, _ = run(capsys, "transport", D10, "--unit")
    assert code == 0
    assert out.strip() == "1 · e[0,chi0] + 1 · e[0,chi1]"


def test_transport_element_file(capsys):
    code, out, err = run(capsys, "transport", D10, "--element", str(DATA / "d10_element_unprojected.json"))
    assert code == 2 and json.loads(err)["error"] == "not_projected"
    code, out, err = run(capsys, "transport", D10, "--element", str(DATA / "d10_element_unprojected.json"), "--project")
    assert code == 0, err


def test_verify_roundtrip_via_files(capsys, tmp_path):
    _, out, _ = run(capsys, "transport", D10, "--json")
    comb = tmp_path / "comb.json"
    comb.write_text(out)
    code, out, _ = run(capsys, "verify", D10, str(comb))
    assert code == 0 and "ok" in out
    doc = json.loads(comb.read_text())
    doc["paths"][0]["coeff"] = 5
    comb.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", D10, str(comb))
    assert code == 1 and "off by" in out


def test_bad_workers_env(capsys, monkeypatch):
    monkeypatch.setenv("SKEWMORITA_WORKERS", "x")
    code, _, err = run(capsys, "transport", D10)
    assert code == 2 and json.loads(err)["error"] == "environment"


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest", "--trials", "5")
    assert code == 0
    assert "FAIL" not in out and out.count("[PASS]") >= 10


def test_selftest_empty_directory(capsys, tmp_path):
    code, out, _ = run(capsys, "selftest", "--fixtures", str(tmp_path))
    assert code == 0
    assert "no fixtures found" in out


def test_selftest_perturbed_golden(capsys, tmp_path):
    shutil.copy(fixture_dir() / "d10.json", tmp_path / "d10.json")
    (tmp_path / "golden").mkdir()
    g = json.loads((fixture_dir() / "golden" / "d10_pairing_terms.json").read_text())
    g["columns"][1]["beta"] = -1
    (tmp_path / "golden" / "d10_pairing_terms.json").write_text(json.dumps(g))
    code, out, _ = run(capsys, "selftest", "--fixtures", str(tmp_path), "--trials", "2")
    assert code == 1
    line = next(l for l in out.splitlines() if "golden" in l)
    assert line.startswith("[FAIL]") and "beta expected -1 got 1" in line


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "skewmorita.cli", "reduce", D10],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("2 vertices, 4 arrows")
