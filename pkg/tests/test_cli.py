from __future__ import annotations

import json

import pytest

from irregular_tr.cli import main
from irregular_tr.fixtures import curve_to_json, fixture


def run(capsys, *argv: str) -> tuple[int, dict, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else {}), out


def test_correlator_value(capsys):
    code, report, _ = run(capsys, "correlator", "--curve", "bessel", "--g", "1", "--n", "1")
    assert code == 0 and report["status"] == "pass"
    assert report["payload"]["coefficients"][0]["value"] == ["1/8", "0/1", "0/1", "0/1"]


def test_output_is_byte_identical(capsys):
    argv = ("graphs", "--curve", "legendre", "--g", "1", "--n", "1")
    _, _, first = run(capsys, *argv)
    _, _, second = run(capsys, *argv)
    assert first == second
    assert "seconds" not in json.loads(first)


def test_timing_flag(capsys):
    _, report, _ = run(capsys, "correlator", "--curve", "airy", "--g", "0", "--n", "3", "--timing")
    assert "seconds" in report


def test_json_out(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, report, out = run(capsys, "tables", "--curve", "airy", "--gmax", "1", "--nmax", "2", "--json-out", str(target))
    assert code == 0
    assert target.read_text() == out


def test_curve_file(capsys, tmp_path):
    path = tmp_path / "legendre.json"
    path.write_text(json.dumps(curve_to_json(fixture("legendre"))))
    code, report, _ = run(capsys, "correlator", "--curve", str(path), "--g", "1", "--n", "1", "--basis", "local")
    assert code == 0
    assert report["payload"]["basis"] == "local"


@pytest.mark.parametrize(
    "argv",
    [
        ("correlator", "--curve", "nowhere", "--g", "1", "--n", "1"),
        ("correlator", "--g", "1", "--n", "1"),
        ("graphs", "--curve", "airy", "--g", "0", "--n", "2"),
        ("tables", "--curve", "gauss"),
        ("frobnicate",),
        ("correlator", "--curve", "airy", "--g", "x"),
    ],
)
def test_invalid_input_exit_two(capsys, argv):
    assert main(list(argv)) == 2
    capsys.readouterr()


def test_malformed_file(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{ not json")
    code, report, _ = run(capsys, "decompose", "--curve", str(path))
    assert code == 2 and report["status"] == "error"


def test_decompose_passes(capsys):
    code, report, _ = run(capsys, "decompose", "--curve", "legendre", "--gmax", "1", "--nmax", "2")
    assert code == 0
    assert report["payload"]["first_mismatch"] is None


def test_legendre_and_verify(capsys):
    code, report, _ = run(capsys, "legendre", "verify", "--gmax", "2", "--degmax", "4")
    assert code == 0 and report["payload"]["closed_forms"]["ok"]
    code = main(["verify", "tables"])
    captured = capsys.readouterr()
    assert code == 0
    assert "criterion 1 [PASS]" in captured.err
    assert json.loads(captured.out)["payload"]["suite"] == "tables"


def test_failed_check_exit_one(capsys, monkeypatch):
    import irregular_tr.cli as cli
    from irregular_tr.acceptance import CriterionResult

    monkeypatch.setattr(cli, "run_suite", lambda name: [CriterionResult(1, "forced", False)])
    code, report, _ = run(capsys, "verify", "tables")
    assert code == 1 and report["status"] == "fail"
