"""CLI surface: JSON envelopes, golden outputs, exit codes, caps."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from rootinv import cli
from rootinv.reports import family_monoid
from rootinv.rootsystem import build

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


@pytest.mark.parametrize(
    "argv,fname",
    [
        (("info", "E6"), "info_e6.json"),
        (
            ("invariants", "A", "3", "--relations", "--hironaka"),
            "invariants_a3_relations_hironaka.json",
        ),
        (("classgroup", "D", "5"), "classgroup_d5.json"),
        (("hilbert", "--ker", "1 2 -3"), "hilbert_ker_1_2_m3.json"),
    ],
)
def test_golden_outputs(capsys, argv, fname):
    code, out = run_cli(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / fname).read_text()


def test_envelope_and_determinism(capsys):
    code1, out1 = run_cli(capsys, "info", "E6")
    code2, out2 = run_cli(capsys, "info", "E6")
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert set(doc) == {"schema_version", "command", "payload"}
    assert doc["schema_version"] == "1"
    assert doc["command"] == "info E6"


def test_invariants_e7_payload(capsys):
    code, out = run_cli(capsys, "invariants", "E7")
    assert code == 0
    p = json.loads(out)["payload"]
    assert p["generator_count"] == 10
    assert p["free_coordinates"] == [1, 3, 4, 6]
    assert p["residual"] == {
        "dim": 3,
        "congruences": [{"coefficients": [1, 1, 1], "modulus": 2}],
    }
    assert p["class_group"] == "Z/2"


def test_expand_a2(capsys):
    code, out = run_cli(capsys, "invariants", "A", "2", "--expand")
    assert code == 0
    p = json.loads(out)["payload"]
    by_name = {e["name"]: e for e in p["expansion"]}
    assert by_name["q1"]["terms"] == 7  # six roots plus the constant 3
    assert by_name["p1"]["terms"] == 10
    assert by_name["p2"]["terms"] == 10
    assert "expansion_truncated" not in p


def test_expand_orbit_cap_truncation(capsys):
    code, out = run_cli(capsys, "invariants", "A", "2", "--expand", "--orbit-cap", "2")
    assert code == 0
    p = json.loads(out)["payload"]
    assert p["expansion_truncated"] is True


def test_usage_errors(capsys):
    assert run_cli(capsys, "info", "H", "3")[0] == 2
    assert run_cli(capsys, "info", "A")[0] == 2
    assert run_cli(capsys, "info", "E", "9")[0] == 2
    assert run_cli(capsys, "hilbert", "--ker", "1 a")[0] == 2
    assert run_cli(capsys, "hilbert", "--monoid", "/nonexistent/file")[0] == 2
    with pytest.raises(SystemExit) as ei:
        cli.main(["bogus-command"])
    assert ei.value.code == 2


def test_hilbert_monoid_file(capsys, tmp_path):
    m = family_monoid(build("C", 3))
    path = tmp_path / "c3.monoid"
    path.write_text(m.serialize())
    code, out = run_cli(capsys, "hilbert", "--monoid", str(path))
    assert code == 0
    p = json.loads(out)["payload"]
    assert p["kind"] == "congruence"
    assert p["count"] == 4
    assert sorted(map(tuple, p["basis"])) == sorted(
        [(0, 1, 0), (0, 0, 2), (1, 0, 1), (2, 0, 0)]
    )


def test_classgroup_fallback(capsys):
    code, out = run_cli(capsys, "classgroup", "B", "7", "--group-cap", "1000")
    assert code == 0
    p = json.loads(out)["payload"]
    assert p["class_group"] == "0"
    assert p["method"] == "family-fallback"
    assert p["toric_cross_check"] == "agree"


def test_thread_count(monkeypatch):
    monkeypatch.setenv("ROOTINV_THREADS", "4")
    assert cli._thread_count() == 4
    monkeypatch.setenv("ROOTINV_THREADS", "abc")
    assert cli._thread_count() == 1
    monkeypatch.setenv("ROOTINV_THREADS", "0")
    assert cli._thread_count() == 1
    monkeypatch.delenv("ROOTINV_THREADS")
    assert cli._thread_count() == 1
