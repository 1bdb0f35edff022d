import pytest

from thetagroups.grading import CASES
from thetagroups.verify import (
    CaseReport,
    exit_code,
    markdown,
    resolve_scope,
    verify_case,
)


def test_resolve_scope():
    assert resolve_scope("all") == sorted(CASES)
    assert resolve_scope("G2") == ["G2.1", "G2.2"]
    assert resolve_scope(["F4.3", "G2.1", "F4.3"]) == ["F4.3", "G2.1"]
    with pytest.raises(KeyError):
        resolve_scope("B7")


def test_g22_verifies_cleanly():
    rep = verify_case("G2.2")
    c = rep.counts()
    assert rep.error is None and c["fail"] == 0 and c["pass"] > 0
    assert rep.ok(strict=True)
    assert exit_code([rep]) == 0


def test_exit_codes():
    good = CaseReport("G2.1")
    good.add("orbits", "dims", "pass", [0, 2], [0, 2])
    bad = CaseReport("G2.2")
    bad.add("orbits", "dims", "fail", [0, 1], [0, 2])
    loose = CaseReport("F4.3")
    loose.add("hasse", "(0, 1)", "unverified", True, None)
    broken = CaseReport("F4.4", error="boom")
    assert exit_code([good]) == 0
    assert exit_code([good, bad]) == 2
    assert exit_code([loose]) == 0
    assert exit_code([loose], strict=True) == 2
    assert exit_code([bad, broken]) == 3


def test_markdown_escapes_and_summarises():
    r = CaseReport("G2.1")
    r.add("orbits", "a|b", "flagged", "x", "y", "known misprint")
    text = markdown([r])
    assert "| G2.1 | 0 | 1 | 0 | 0 | ok |" in text
    assert "a\\|b" in text
    assert r.to_dict()["case"] == "G2.1"
