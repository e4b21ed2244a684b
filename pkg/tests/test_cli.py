import json

import pytest

from main import INTERFACES_BASE_PATH, build_parser, cli, scan_directory
from src.interfaces.Graphs.export import GraphExport
from src.lib.report import load_report


def test_every_command_is_registered():
    tree = scan_directory(INTERFACES_BASE_PATH)
    names = sorted(entry["name"] for entries in tree.values() for entry in entries)
    assert names == ["build", "info", "isoclinism", "probe", "verify"]
    assert build_parser(tree).prog == "relgraph"


def test_info_q8(capsys):
    assert cli(["info", "--group", "Q8"]) == 0
    out = capsys.readouterr().out
    assert "center size: 2" in out
    assert "subgroups: 6" in out


def test_probe_star(capsys):
    assert cli(["probe", "--group", "S3", "--subgroup", "(12)", "--g", "(123)"]) == 0
    out = capsys.readouterr().out
    assert "Star(center=0)" in out
    assert "edges: 5" in out


def test_probe_whole_group(capsys):
    assert cli(["probe", "--group", "D4", "--subgroup", "all", "--g", "r^2"]) == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["probe", "--group", "S3", "--subgroup", "(12)", "--g", "(1234)"],
        ["probe", "--group", "S9", "--subgroup", "all", "--g", "e"],
        ["probe", "--group", "S3", "--subgroup", "(12)"],
        ["isoclinism", "--pair1", "D4", "--pair2", "Q8:all"],
        ["verify", "--max-order", "100"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(argv):
    assert cli(argv) == 2


def test_runtime_errors_exit_1(capsys):
    assert cli(["info", "--group", "D61"]) == 1
    assert "Error:" in capsys.readouterr().out


def test_build_writes_dot_and_json(tmp_path):
    dot, data = tmp_path / "g.dot", tmp_path / "g.json"
    argv = ["build", "--group", "D4", "--subgroup", "r", "--g", "r^2",
            "--dot", str(dot), "--json", str(data)]
    assert cli(argv) == 0
    assert dot.read_text(encoding="utf-8").startswith('graph "D4" {\n')
    export = GraphExport(**json.loads(data.read_text(encoding="utf-8")))
    assert export.edge_count == 14
    assert export.h_members == [0, 1, 2, 3]


def test_verify_writes_reports(tmp_path):
    report, csv_path = tmp_path / "report.json", tmp_path / "report.csv"
    argv = ["verify", "--family", "S3", "--family", "C4", "--report", str(report),
            "--csv", str(csv_path), "--quiet"]
    assert cli(argv) == 0
    records = load_report(report)
    assert {r.group_spec for r in records} == {"S3", "C4"}
    assert csv_path.read_text(encoding="utf-8").count("\n") == len(records) + 1


def test_isoclinism_d8_q8(capsys):
    argv = ["isoclinism", "--pair1", "D4:all", "--pair2", "Q8:all", "--g", "r^2"]
    assert cli(argv) == 0
    assert "verified" in capsys.readouterr().out


def test_isoclinism_absent_exits_0(capsys):
    assert cli(["isoclinism", "--pair1", "S3:all", "--pair2", "C6:all"]) == 0
    assert "not relative isoclinic" in capsys.readouterr().out


@pytest.mark.parametrize("group", ["C2xD30", "D33", "A4xC6"])
def test_orders_above_64_are_refused(capsys, group):
    assert cli(["probe", "--group", group, "--subgroup", "all", "--g", "0"]) == 1
    assert "Error:" in capsys.readouterr().out


def test_info_s5_is_allowed(capsys):
    assert cli(["info", "--group", "S5"]) == 0
    out = capsys.readouterr().out
    assert "order: 120" in out
    assert "subgroups: skipped" in out


def test_info_writes_a_loadable_cayley_table(tmp_path, capsys):
    path = tmp_path / "q8.txt"
    assert cli(["info", "--group", "Q8", "--table", str(path)]) == 0
    capsys.readouterr()
    assert cli(["info", "--group", f"file:{path}"]) == 0
    assert "center size: 2" in capsys.readouterr().out


def test_order_16_reports_are_byte_identical(tmp_path):
    outputs = []
    for run, jobs in enumerate(["1", "1", "2"]):
        report, csv_path = tmp_path / f"r{run}.json", tmp_path / f"r{run}.csv"
        argv = ["verify", "--max-order", "16", "--jobs", jobs, "--report", str(report),
                "--csv", str(csv_path), "--quiet"]
        assert cli(argv) == 0
        outputs.append((report.read_bytes(), csv_path.read_bytes()))
    assert outputs[0] == outputs[1] == outputs[2]


def test_isoclinism_without_g_lists_the_choices(capsys):
    assert cli(["isoclinism", "--pair1", "D4:all", "--pair2", "Q8:all"]) == 0
    assert "1, r^2" in capsys.readouterr().out
