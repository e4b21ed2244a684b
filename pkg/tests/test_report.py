import pytest

from src.lib.report import (
    CSV_COLUMNS,
    load_report,
    records_csv,
    records_json,
    write_report,
)
from src.lib.sweep import SweepConfig, run_sweep
from src.lib.utils import FileError


@pytest.fixture(scope="module")
def records():
    return run_sweep(SweepConfig(families=["S3", "D4"], progress=False)).records


def test_json_round_trip(tmp_path, records):
    stats = write_report(records, tmp_path / "report.json")
    assert stats.total_files == 1
    assert load_report(tmp_path / "report.json") == records


def test_reports_are_byte_identical_across_runs(tmp_path, records):
    again = run_sweep(SweepConfig(families=["S3", "D4"], progress=False)).records
    write_report(records, tmp_path / "a.json", tmp_path / "a.csv")
    write_report(again, tmp_path / "b.json", tmp_path / "b.csv")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_json_field_names(records):
    text = records_json(records)
    assert text.endswith("]\n")
    for field in ("group_spec", "subgroup_members", "g_in_K", "bound_audits",
                  "special_formula_checks", "standing_assumptions_met"):
        assert f'"{field}"' in text


def test_csv_rows(records):
    lines = records_csv(records).splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == len(records) + 1
    star = next(line for line in lines if line.startswith("S3,6,0 2,2,(123),"))
    assert ",Star(center=0)," in star


def test_empty_report(tmp_path):
    write_report([], tmp_path / "empty.json", tmp_path / "empty.csv")
    assert (tmp_path / "empty.json").read_text(encoding="utf-8") == "[]\n"
    assert load_report(tmp_path / "empty.json") == []
    assert (tmp_path / "empty.csv").read_text(encoding="utf-8") == ",".join(CSV_COLUMNS) + "\n"


def test_invalid_report(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('[{"group_spec": "S3"}]', encoding="utf-8")
    with pytest.raises(FileError):
        load_report(path)
    with pytest.raises(FileError):
        load_report(tmp_path / "missing.json")
