from __future__ import annotations

import csv
import io
import json

import pytest

import gridhex.group
from gridhex.cli import Engine, export_blobs, main, render_table
from gridhex.geometry import point_index
from gridhex.hyperplanes import singular_hyperplane


@pytest.fixture(scope="module")
def h1_mask(engine):
    return singular_hyperplane(engine.geometry, point_index(0, 0, 0)).mask


def test_no_command_is_a_usage_error(capsys):
    assert main([]) == 2
    capsys.readouterr()


def test_unknown_table_is_a_usage_error(capsys):
    assert main(["tables", "5"]) == 2
    capsys.readouterr()


def test_verify_skips_the_oracle_by_default(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    lines = [ln for ln in out.splitlines() if ln[:4].strip() in ("PASS", "FAIL", "SKIP")]
    assert len(lines) == 11
    assert sum(1 for ln in lines if ln.startswith("PASS")) == 10
    assert any(ln.startswith("SKIP  hyperplane-oracle") for ln in lines)
    assert "result: 10 passed, 0 failed, 1 skipped" in out
    assert "phase timings:" in out


def test_verify_exits_with_4_when_the_build_breaks(capsys, monkeypatch):
    real = gridhex.group.generators
    monkeypatch.setattr(gridhex.group, "generators", lambda g: real(g)[:3])
    assert main(["verify"]) == 4
    err = capsys.readouterr().err
    assert "BUILD FAILURE" in err


def test_table_1_text_ends_with_the_class_sizes(capsys):
    assert main(["tables", "1"]) == 0
    out = capsys.readouterr().out
    rows = out.strip().splitlines()[1:]
    assert [r.split()[-1] for r in rows] == ["27", "54", "108", "54", "12"]


def test_table_2_has_41_rows_in_every_format(capsys):
    assert main(["tables", "2"]) == 0
    text = capsys.readouterr().out
    assert len(text.strip().splitlines()) == 42
    assert main(["tables", "2", "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 42
    assert main(["tables", "2", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["rows"]) == 41
    assert payload["rows"][31]["core_points_notation"] == "5(2)"
    assert payload["rows"][35]["core_points_notation"] == "4(2:2)"
    assert payload["rows"][21]["core_lines_notation"] == "2c"


def test_table_3_json_keeps_the_overlap_count(capsys):
    assert main(["tables", "3", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["cells"]["H3,H3"] == 12
    assert payload["cells"]["H3,H4"] == 8


def test_table_4_csv_upper_triangle(capsys):
    assert main(["tables", "4", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["type", "H1", "H2", "H3", "H4", "H5"]
    assert rows[1] == ["H1", "3", "4", "6", "5", "2"]
    assert rows[3] == ["H3", "", "", "15", "10", "4"]
    flat = [c for r in rows[1:] for c in r[1:] if c]
    assert flat == "3 4 6 5 2 7 9 6 3 15 10 4 9 3 2".split()


def _grid_chars(out: str) -> str:
    rows = [ln for ln in out.splitlines() if ln.strip() and set(ln) <= set("@o.-| ")]
    return "".join(rows)


def test_show_ascii_marks_19_points_with_7_deep(capsys, h1_mask):
    assert main(["show", str(h1_mask)]) == 0
    out = capsys.readouterr().out
    grid = _grid_chars(out)
    assert grid.count("@") == 7
    assert grid.count("@") + grid.count("o") == 19
    assert "full-lines=15" in out


def test_show_h5_has_isolated_marks_only(capsys, engine):
    h5 = engine.catalog.of_type("H5")[0]
    assert main(["show", hex(h5.id)]) == 0
    out = capsys.readouterr().out
    grid = _grid_chars(out)
    assert grid.count("o") == 9
    assert grid.count("@") == 0
    assert "-" not in grid and "|" not in grid
    assert "across layers: none" in out


def test_show_rejects_unknown_ids(capsys):
    assert main(["show", "12345"]) == 2
    assert "unknown hyperplane id" in capsys.readouterr().err
    assert main(["show", "not-a-number"]) == 2
    capsys.readouterr()


def test_show_svg_requires_an_output_path(capsys, h1_mask):
    assert main(["show", str(h1_mask), "--format", "svg"]) == 2
    capsys.readouterr()


def test_show_svg_renders_a_figure(tmp_path, h1_mask):
    out = tmp_path / "h1.svg"
    assert main(["show", str(h1_mask), "--format", "svg", "--out", str(out)]) == 0
    body = out.read_text()
    assert "<svg" in body and "</svg>" in body


def test_export_hyperplanes_json(tmp_path):
    out = tmp_path / "h.json"
    assert main(["export", "hyperplanes", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert len(payload["hyperplanes"]) == 255
    assert [c["type"] for c in payload["classes"]] == ["H1", "H2", "H3", "H4", "H5"]
    assert payload["classes"][2]["element_order_profile"] == {
        "1": 1, "2": 7, "3": 2, "6": 2,
    }


def test_export_lines_csv(tmp_path):
    out = tmp_path / "lines.csv"
    assert main(["export", "lines", "--out", str(out)]) == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert len(rows) == 10796
    assert rows[0][:2] == ["index", "member_a"]


def test_export_graph_dot(tmp_path):
    out = tmp_path / "graph.dot"
    assert main(["export", "graph", "--out", str(out)]) == 0
    body = out.read_text()
    assert body.count("label=") == 27
    assert body.count(" -- ") == 81


def test_export_rejects_a_format_mismatch(tmp_path, capsys):
    out = tmp_path / "x"
    assert main(["export", "lines", "--format", "dot", "--out", str(out)]) == 2
    capsys.readouterr()


def test_export_io_failure_is_exit_3(capsys, tmp_path):
    target = tmp_path / "missing" / "graph.dot"
    assert main(["export", "graph", "--out", str(target)]) == 3
    err = capsys.readouterr().err
    assert "I/O FAILURE" in err and "graph.dot" in err


def test_exports_are_byte_deterministic(engine):
    first = export_blobs(engine)
    fresh = Engine()
    second = export_blobs(fresh)
    assert sorted(first) == sorted(second)
    for name in first:
        assert first[name] == second[name], name


def test_render_table_rejects_unknown_tables(engine):
    with pytest.raises(ValueError):
        render_table(engine, 7, "text")
