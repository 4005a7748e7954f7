"""
tests/test_exporter.py — Page tables, JSON/CSV export and check reports.

Tests: page grids with q descending, text rendering, stable JSON stamped
with the schema version, flat CSV export, comparison frames and the check
report summary.
"""

import json
import sys
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.checks import CheckResult
from src.comparison import ComparisonReport, EntryRecord
from src.exporter import (
    comparison_to_frame,
    dump_json,
    export_page_csv,
    export_page_json,
    export_report_json,
    format_check_report,
    page_to_dict,
    page_to_frame,
    page_to_records,
    render_page_text,
    render_report_text,
)
from src.spectral import INF, Page


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture
def page():
    return Page(r=2, dims={(0, 0): 1, (1, 0): 2, (0, 1): 1},
                differentials={(0, 1): np.array([[1, 0]], dtype=np.int64)}, trusted_degree=1, p=2)


@pytest.fixture
def report():
    return ComparisonReport(name="toy", instance={"degree": 1}, sides=["a", "b"], arrows=["f"],
                            entries=[EntryRecord("e1", [1, 1], [True]), EntryRecord("e2", [2, 2], [False])])


# ---------------------------------------------------------------------------
# Frames and text
# ---------------------------------------------------------------------------

class TestFrames:

    def test_grid_orientation(self, page):
        grid = page_to_frame(page)
        assert list(grid.index) == [1, 0]
        assert list(grid.columns) == [0, 1]
        assert grid.loc[0, 1] == 2
        assert grid.loc[1, 1] == 0

    def test_records(self, page):
        df = page_to_records(page)
        assert list(df.columns) == ["p", "q", "dim", "d_rank"]
        assert df.set_index(["p", "q"])["d_rank"].to_dict() == {(0, 0): -1, (0, 1): 1, (1, 0): -1}

    def test_render(self, page):
        text = render_page_text(page)
        assert text.startswith("E_2  (trusted through degree 1)")
        assert "q=1" in text and "p=1" in text
        assert "." in text

    def test_render_empty(self):
        assert render_page_text(Page(r=INF, dims={})) == "E_inf\n  (empty)"

    def test_comparison_frame(self, report):
        df = comparison_to_frame(report)
        assert list(df.columns) == ["index", "a", "b", "f iso"]
        assert df["f iso"].tolist() == [True, False]

    def test_report_text(self, report):
        text = render_report_text(report)
        assert "verdict: ✗ FALSE" in text
        assert "2 recorded, 1 with a non-invertible arrow" in text


# ---------------------------------------------------------------------------
# JSON and CSV
# ---------------------------------------------------------------------------

class TestExport:

    def test_page_to_dict(self, page):
        doc = page_to_dict(page)
        assert doc["r"] == "2"
        assert doc["entries"] == [[0, 0, 1], [0, 1, 1], [1, 0, 2]]
        assert doc["differential_ranks"] == [[0, 1, 1]]

    def test_dump_json_is_stable(self, tmp_path):
        path = tmp_path / "nested" / "run.json"
        first = dump_json({"b": 1, "a": [1, 2]}, path)
        second = dump_json({"a": [1, 2], "b": 1}, path)
        assert first == second
        assert json.loads(path.read_text())["schema"] == 1

    def test_page_json(self, page, tmp_path):
        text = export_page_json({"E2": page}, tmp_path / "pages.json", instance={"group": "C2"})
        doc = json.loads(text)
        assert doc["instance"] == {"group": "C2"}
        assert doc["pages"]["E2"]["trusted_degree"] == 1

    def test_report_json(self, report, tmp_path):
        doc = json.loads(export_report_json(report, tmp_path / "report.json"))
        assert doc["name"] == "toy"
        assert doc["verdict"] is False

    def test_csv(self, page, tmp_path):
        path = tmp_path / "pages.csv"
        export_page_csv({"E2": page, "E3": Page(r=3, dims={(0, 0): 1})}, path)
        df = pd.read_csv(path)
        assert list(df.columns) == ["page", "p", "q", "dim", "d_rank"]
        assert len(df) == 4
        assert set(df["page"]) == {"E2", "E3"}


# ---------------------------------------------------------------------------
# Check reports
# ---------------------------------------------------------------------------

class TestCheckReport:

    def test_summary(self, tmp_path):
        results = [
            CheckResult(name="ok", passed=True),
            CheckResult(name="bad", passed=False, module="hopf"),
            CheckResult(name="excused", passed=False, waived=True),
        ]
        path = tmp_path / "checks.txt"
        text = format_check_report(results, title="HOPF", output_path=path)
        assert "Checks:   3" in text
        assert "Failed:   1" in text
        assert "Waived:   1" in text
        assert "✗ FAIL" in text
        assert path.read_text() == text

    def test_empty(self):
        text = format_check_report([])
        assert "(no checks)" in text
        assert "✓ PASS" in text
