import math

import pytest

from chtriangle.scan import ScanRow, edge_report, fmt, orbit_rows, scan_csv, scan_grid, scan_svg, verdict_edges


def test_fmt_twelve_digits():
    assert fmt(math.pi) == "3.14159265359"
    assert fmt(-0.0) == "0"
    assert fmt(1e-20) == "1e-20"


def test_rows_sorted_regardless_of_input_order():
    rows = scan_grid([2.0, 0.5], [3.0, 1.0])
    assert [(r.m, r.alpha) for r in rows] == [(0.5, 1.0), (0.5, 3.0), (2.0, 1.0), (2.0, 3.0)]


def test_verdict_edges_midpoints():
    rows = [ScanRow(1.0, math.acos(c), v, 0, 0, 0) for c, v in [(-1.0, "D"), (-0.5, "D"), (0.0, "U"), (0.5, "N")]]
    assert verdict_edges(rows, "D") == {1.0: [pytest.approx(-0.25)]}
    assert verdict_edges(rows, "N") == {1.0: [pytest.approx(0.25)]}


def test_edge_report_separates_regions():
    rows = scan_grid([0.5, math.log(3)], [math.acos(c) for c in (-1.0, -0.6, -0.4, 0.0, 0.995)])
    report = {round(e["m"], 6): e for e in edge_report(rows)}
    assert report[0.5]["prop1_edge"] is None and report[0.5]["certificate_edges"] == []
    assert report[round(math.log(3), 6)]["prop1_edge"] == -0.5
    assert report[round(math.log(3), 6)]["certificate_edges"] == [pytest.approx(-0.5)]


def test_csv_and_svg_agree():
    rows = scan_grid([1.0, 2.0], [1.0, 2.0, 3.0])
    text = scan_csv(rows)
    assert text.count("\n") == 1 + len(rows)
    assert scan_svg(rows).count("<rect class=") == len(rows)


def test_orbit_rows_decompose():
    rows = orbit_rows(1.0, 0.0, 3)
    assert rows[0].word == "Id" and (rows[0].x, rows[0].y, rows[0].rep) == (0, 0, "Id")
    assert len(rows) == 1 + 2 + 4 + 6
