"""Command line interface: exit codes, output stability, reports."""

import json

import pytest

from fordcr import cli


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_params_default(capsys):
    code, out = _run(capsys, "params")
    assert code == 0
    assert "twist parameter s = 0" in out
    assert "defining equations: all zero" in out


def test_params_json_deterministic(capsys):
    code1, out1 = _run(capsys, "params", "--json", "--s", "1/100")
    code2, out2 = _run(capsys, "params", "--json", "--s", "1/100")
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["s"] == "1/100"
    assert doc["defining equations residuals zero"] is True


def test_params_inadmissible(capsys):
    code, _ = _run(capsys, "params", "--s", "1/2")
    assert code == 2


def test_precision_floor(capsys):
    code, _ = _run(capsys, "params", "--precision", "32")
    assert code == 2


def test_rep_word(capsys):
    code, out = _run(capsys, "rep", "--word", "2-12", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["word"] == "2-12"
    assert doc["preserves form"] is True
    assert len(doc["matrix"]) == 3


def test_spheres_report(capsys):
    code, out = _run(capsys, "spheres", "--json")
    assert code == 0
    doc = json.loads(out)
    words = {row["word"] for row in doc["core spheres"]}
    assert words == {"2", "-2", "3", "-3"}
    assert len(doc["k ranges"]) == 10


def test_chart_report(capsys):
    code, out = _run(capsys, "chart", "--pair", "1,2", "--restrict", "0",
                     "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["pair"] == [1, 2]
    assert doc["restrict"]["index"] == 0


def test_chart_trace(capsys):
    code, out = _run(capsys, "chart", "--pair", "1,2", "--restrict", "0",
                     "--trace", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["trace"]["branch +1"]


def test_svg_needs_out(capsys):
    code = cli.main(["boundary", "--svg"])
    assert code == 2


def test_face_report_structure(complexes0):
    doc = cli.face_report(complexes0[2])
    assert doc["side"] == 2
    assert "face" in doc["classification"]
    assert "strip" in doc["classification"]
    assert len(doc["finite vertices"]) == 4
    assert len(doc["ideal vertices"]) == 6


def test_check_tables_function(complexes0):
    doc, ok = cli.check_tables(complexes0)
    assert ok
    assert doc["all tables match"] is True


def test_checklist_json_roundtrip(checklist0):
    doc = cli.checklist_json(checklist0)
    blob = cli._dump(doc)
    assert json.loads(blob) == json.loads(cli._dump(doc))
    assert cli.checklist_pass(checklist0)


def test_export_writes_files(tmp_path, capsys):
    code, out = _run(capsys, "params", "--out", str(tmp_path), "--json")
    assert code == 0
    written = tmp_path / "params.json"
    assert written.exists()
    assert json.loads(written.read_text()) == json.loads(out)
