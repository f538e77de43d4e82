import json
import shutil
from pathlib import Path

import pytest

from einstab.tables import GATED_IDS, TABLE_IDS, reproduce

FLAG_R3 = Path(__file__).parent / "data" / "flag_r3"


@pytest.mark.parametrize("table_id", TABLE_IDS)
def test_embedded_tables_reproduce(table_id):
    report = reproduce(table_id)
    assert report.complete and report.rows
    assert report.passed, [r.label for r in report.failures]


@pytest.mark.parametrize("table_id", ("W2", "W4_2"))
def test_reports_are_deterministic_and_serializable(table_id):
    a, b = reproduce(table_id), reproduce(table_id)
    assert a.render() == b.render()
    doc = json.loads(json.dumps(a.to_dict()))
    assert doc["table"] == table_id and doc["passed"] is True
    assert len(doc["rows"]) == len(a.rows)
    assert {"label", "expected", "computed", "abs_err", "tolerance", "pass", "provenance"} <= set(doc["rows"][0])
    assert a.render().splitlines()[-1].endswith("PASS")


def test_unknown_table():
    with pytest.raises(KeyError):
        reproduce("W99")


@pytest.mark.parametrize("table_id", GATED_IDS)
def test_flag_tables_without_descriptors_are_incomplete(table_id):
    report = reproduce(table_id)
    assert not report.complete and not report.passed
    assert "--descriptor-dir" in report.notes[0]


def test_flag_r3_with_derived_descriptors():
    report = reproduce("FS3", FLAG_R3)
    assert report.complete
    assert report.passed, [r.label for r in report.failures]


def test_missing_descriptor_marks_incomplete(tmp_path):
    files = sorted(FLAG_R3.glob("*.json"))
    for f in files[1:]:
        shutil.copy(f, tmp_path)
    report = reproduce("FS3", tmp_path)
    assert not report.complete
    assert any(files[0].stem in n for n in report.notes)
    assert all(r.passed for r in report.rows)
