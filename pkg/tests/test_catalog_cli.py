import json

import pytest

from qalt.catalog import certify_row, load_certificate, run_batch
from qalt.cli import diagram_from_notation, main
from qalt.conway import TableRow, table_path
from qalt.qacert import verify_certificate


def test_run_batch_family(tmp_path):
    report = run_batch(table_path("table1.csv"), "family", out_dir=tmp_path)
    assert report.summary == {"qa": 23, "unknown": 0, "error": 0}
    assert report.exit_code == 0
    files = sorted(tmp_path.glob("*.json"))
    assert len(files) == 23
    assert all(verify_certificate(load_certificate(f)) for f in files)


def test_run_batch_designated_parallel_is_order_stable():
    serial = run_batch(table_path("table2.csv"), "designated")
    parallel = run_batch(table_path("table2.csv"), "designated", jobs=3)
    assert serial.summary["qa"] == 17
    assert serial.to_json() == parallel.to_json()
    assert serial.text() == parallel.text()


def test_run_batch_empty(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("knot,conway\n")
    report = run_batch(empty, "family")
    assert report.rows == [] and report.exit_code == 0
    assert report.to_json() == {"rows": [], "summary": {"qa": 0, "unknown": 0, "error": 0}}


def test_run_batch_records_row_errors(tmp_path):
    csv = tmp_path / "mixed.csv"
    csv.write_text("knot,conway\nok,[41;3;3-]\nbad,[41;0;3-]\nnone,[22;22;2-]\n")
    report = run_batch(csv, "family")
    assert [r.outcome for r in report.rows] == ["QA", "Error", "Unknown"]
    assert report.exit_code == 1
    with pytest.raises(ValueError):
        run_batch(csv, "bogus")


def test_certify_row_designated_requires_marker():
    row = certify_row(TableRow("x", "[23;211;2-]"), "designated")
    assert row.outcome == "Error" and "designated" in row.reason


def test_cli_det_and_genus(capsys):
    assert main(["det", "[221;22;2-]"]) == 0
    assert capsys.readouterr().out.strip() == "det=43 engine=genus1"
    assert main(["genus", "[221;22;2-]"]) == 0
    assert capsys.readouterr().out.strip().endswith("g=1")
    assert main(["oracle", "[221;22;2-]"]) == 0
    assert "det=43" in capsys.readouterr().out


def test_cli_parse(capsys):
    assert main(["parse", "[21111;*3*;2-]"]) == 0
    out = capsys.readouterr().out
    assert "slot 1: 3" in out and "designated" in out
    assert main(["parse", "[22;0]"]) == 2
    assert "position" in capsys.readouterr().err


def test_cli_trees(tmp_path, capsys):
    f = tmp_path / "k4.txt"
    f.write_text("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    assert main(["trees", str(f), "--check"]) == 0
    assert capsys.readouterr().out.strip() == "16"


def test_cli_certify_and_verify(tmp_path, capsys):
    assert main(["certify", "[41;3;3-]"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["family"]["family"] == "II"
    out = tmp_path / "c.json"
    assert main(["certify", "[*23*;211;2-]", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["certify", "--verify", str(out)]) == 0
    data = json.loads(out.read_text())
    data["tree"]["det"] += 1
    out.write_text(json.dumps(data))
    assert main(["certify", "--verify", str(out)]) == 1
    assert "invalid" in capsys.readouterr().out


def test_cli_certify_unknown(capsys):
    assert main(["certify", "P(2,-2)"]) == 1
    assert capsys.readouterr().out.startswith("Unknown")


def test_cli_batch(capsys, tmp_path):
    assert main(["batch", str(table_path("table1.csv")), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["qa"] == 23
    assert set(data["rows"][0]) >= {"knot", "notation", "outcome", "family", "det", "certificate"}


def test_cli_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code != 0
    with pytest.raises(SystemExit) as exc:
        main(["det", "[22;2;2]", "--nope"])
    assert exc.value.code != 0


def test_notation_forms():
    assert len(diagram_from_notation("P(2,-2)").crossings) == 4
    assert len(diagram_from_notation("221").crossings) == 5
    assert len(diagram_from_notation("[22;3]").crossings) == 7
