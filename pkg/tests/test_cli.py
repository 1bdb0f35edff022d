import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from thetagroups import cli
from thetagroups.fixture import fixture_dir


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["no-such-command"])
    assert e.value.code == 1
    assert run(capsys, "grade", "E9.9")[0] == 1
    assert run(capsys, "hilbert", "G2.2", "99")[0] == 1
    assert run(capsys, "verify-paper")[0] == 1
    assert run(capsys, "verify-paper", "Z3")[0] == 1


def test_list_cases_json(capsys):
    code, out, _ = run(capsys, "list-cases", "--json")
    assert code == 0
    assert len(json.loads(out)) == 10


def test_hilbert_json(capsys):
    code, out, _ = run(capsys, "hilbert", "E6.2", "1", "--json")
    assert code == 0
    assert out.strip() == (
        '{"case": "E6.2", "codim": 10, "degree": 42, "flags": ["euler-level"], '
        '"numerator": [1, 10, 20, 10, 1], "orbit": 1}'
    )


def test_resolve_json(capsys):
    code, out, _ = run(capsys, "resolve", "G2.2", "1", "--json")
    d = json.loads(out)
    assert code == 0
    assert d["betti"] == [1, 3, 2]
    assert "ghosts-cancelled" in d["flags"]


def test_bott_json(capsys):
    code, out, _ = run(capsys, "bott", "--json", "grass:1,2", "--", "-3;0")
    assert code == 0
    assert json.loads(out)["degree"] == 1


def test_dot_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.dot", tmp_path / "b.dot"
    assert run(capsys, "hasse", "G2.2", "--dot", str(a))[0] == 0
    assert run(capsys, "hasse", "G2.2", "--dot", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"O1 -> O2;" in a.read_bytes()
    code, out, _ = run(capsys, "hasse", "G2.2")
    assert out.encode() == a.read_bytes()


def test_verify_paper_group(capsys):
    code, out, _ = run(capsys, "verify-paper", "G2", "--strict")
    assert code == 0
    assert "| G2.2 |" in out


def test_tampered_fixture_is_a_mismatch(capsys, tmp_path, monkeypatch):
    for f in fixture_dir().glob("*.yaml"):
        shutil.copy(f, tmp_path)
    p = tmp_path / "G2.2.yaml"
    p.write_text(p.read_text().replace("dim: 3,", "dim: 5,"))
    monkeypatch.setenv("VINBERG_FIXTURE_DIR", str(tmp_path))
    code, out, _ = run(capsys, "verify-paper", "G2.2", "--sections", "orbits")
    assert code == 2
    assert "fail" in out


def test_report_writes_figures(capsys, tmp_path):
    code, _, _ = run(capsys, "verify-paper", "G2.2", "F4.1", "--report", str(tmp_path))
    assert code == 0
    names = {p.name for p in tmp_path.iterdir()}
    assert {"report.md", "report.json", "hasse_G2.2.png", "hasse_F4.1.png", "numerators_F4.1.png"} <= names
    # no numerator table for G2.2, so no numerator figure
    assert "numerators_G2.2.png" not in names
    assert json.loads((tmp_path / "report.json").read_text())


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "thetagroups", "list-cases"], capture_output=True, text=True)
    assert r.returncode == 0 and "E6.4" in r.stdout
