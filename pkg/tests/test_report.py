from __future__ import annotations

import csv
import io
import json

from commulab.matrix import Matrix
from commulab.report import FAIL, INCONCLUSIVE, PASS, CheckReport, emit_report, exit_code, to_csv, to_json
from commulab.rings import Mod


def test_json_schema_and_timing_toggle():
    r = CheckReport("C4", PASS, "", {"nilindex": 3, "n": 2}, seed=1, anchor="x", timing={"ms": 5})
    data = json.loads(to_json([r]))
    assert data["schema"] == 1
    (rep,) = data["reports"]
    assert rep["status"] == "PASS" and rep["metrics"] == {"n": 2, "nilindex": 3}
    assert "timing" not in rep
    assert json.loads(to_json([r], include_timing=True))["reports"][0]["timing"] == {"ms": 5}


def test_fail_embeds_matrices_verbatim():
    X = Matrix.from_values(Mod(9), [[3, 0], [0, 6]])
    r = CheckReport("T13", FAIL, "broken", {}, artifacts={"X": X})
    art = json.loads(to_json([r]))["reports"][0]["artifacts"]["X"]
    assert art == {"ring": "Zmod:9", "entries": [["3", "0"], ["0", "6"]]}
    assert Matrix.from_json(art["ring"], json.dumps(art["entries"])) == X


def test_csv_flattens_metrics():
    reports = [
        CheckReport("D1", PASS, "", {"Y(3,2)": {"dimension": 2, "expected": 2}}, timing={"ms": 12}),
        CheckReport("D3", PASS, "", {"N(2)": {"dimension": 2, "expected": 2}}),
    ]
    rows = list(csv.DictReader(io.StringIO(to_csv(reports, include_timing=True))))
    assert rows[0]["check_id"] == "D1" and rows[0]["Y(3,2).dimension"] == "2"
    assert rows[0]["timing.ms"] == "12"
    assert rows[1]["N(2).expected"] == "2" and rows[1]["Y(3,2).dimension"] == ""


def test_exit_codes():
    ok = CheckReport("a", PASS)
    inc = CheckReport("b", INCONCLUSIVE)
    bad = CheckReport("c", FAIL)
    assert exit_code([ok]) == 0
    assert exit_code([ok, inc]) == 2
    assert exit_code([inc, bad, ok]) == 1


def test_emit_report_writes_file(tmp_path):
    path = tmp_path / "r.json"
    text = emit_report([CheckReport("a", PASS)], "json", path)
    assert path.read_text() == text
    try:
        emit_report([], "xml")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown format accepted")
