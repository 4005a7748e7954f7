"""
exporter.py — Export layer for page tables, comparison reports and checks

Outputs:
  - Aligned text: E_r page as a grid with q descending down the rows and p
    across the columns, the way spectral sequence charts are drawn
  - JSON: page tables and comparison reports, keys sorted and stamped with
    "schema": 1 so that the same run gives byte-identical files
  - CSV: flat (page, p, q, dim) for programmatic review
  - Check report (.txt): one line per CheckResult with a pass/fail summary

Usage:
  from src.exporter import render_page_text, export_report_json, format_check_report
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

import pandas as pd

from src.checks import CheckResult, failures
from src.comparison import ComparisonReport
from src.config import SCHEMA_VERSION
from src.linalg import rank
from src.spectral import Page, page_label

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Frames and text
# ---------------------------------------------------------------------------

def page_to_frame(page: Page) -> pd.DataFrame:
    """Dims of a page as a q × p grid, q descending; missing entries are 0."""
    if not page.dims:
        return pd.DataFrame()
    rows = [{"p": p, "q": q, "dim": v} for (p, q), v in page.dims.items()]
    df = pd.DataFrame(rows)
    grid = df.pivot_table(index="q", columns="p", values="dim", aggfunc="sum", fill_value=0)
    grid = grid.sort_index(ascending=False).sort_index(axis=1)
    return grid.astype(int)


def page_to_records(page: Page) -> pd.DataFrame:
    """Flat (p, q, dim, d_rank) rows; d_rank is -1 where d_r was not computed."""
    rows = []
    for (p, q), v in sorted(page.dims.items()):
        d = page.differentials.get((p, q))
        rows.append({"p": p, "q": q, "dim": v, "d_rank": -1 if d is None else rank(d, page.p)})
    return pd.DataFrame(rows, columns=["p", "q", "dim", "d_rank"])


def render_page_text(page: Page, title: Optional[str] = None) -> str:
    """Aligned text table of E_r dims; blank cells are zero."""
    header = title or f"E_{page_label(page.r)}"
    grid = page_to_frame(page)
    if grid.empty:
        return f"{header}\n  (empty)"
    shown = grid.astype(str).replace("0", ".")
    shown.index = [f"q={q}" for q in shown.index]
    shown.columns = [f"p={p}" for p in shown.columns]
    return f"{header}  (trusted through degree {page.trusted_degree})\n{shown.to_string()}"


def render_pages_text(pages: Mapping[str, Page]) -> str:
    return "\n\n".join(render_page_text(page, title=name) for name, page in pages.items())


def comparison_to_frame(report: ComparisonReport) -> pd.DataFrame:
    """One row per recorded entry: index, a dim column per side, a flag per arrow."""
    rows = []
    for rec in report.entries:
        row: Dict[str, Any] = {"index": rec.index}
        row.update({side: v for side, v in zip(report.sides, rec.dims)})
        row.update({f"{a} iso": ok for a, ok in zip(report.arrows, rec.arrows)})
        rows.append(row)
    columns = ["index"] + list(report.sides) + [f"{a} iso" for a in report.arrows]
    return pd.DataFrame(rows, columns=columns)


def render_report_text(report: ComparisonReport, max_rows: int = 40) -> str:
    df = comparison_to_frame(report)
    arrows = df[[f"{a} iso" for a in report.arrows]]
    broken = int((~arrows.all(axis=1)).sum()) if len(df) else 0
    sep = "=" * 70
    lines = [
        sep,
        f"  {report.name.upper()}  verdict: {'✓ TRUE' if report.verdict else '✗ FALSE'}",
        sep,
        f"  Instance:        {json.dumps(report.instance, sort_keys=True, default=str)}",
        f"  Trusted degree:  {report.trusted_degree}",
        f"  Entries:         {len(df)} recorded, {broken} with a non-invertible arrow",
        "",
    ]
    if len(df):
        lines.append(df.head(max_rows).to_string(index=False))
        if len(df) > max_rows:
            lines.append(f"  … {len(df) - max_rows} more")
    if report.pages:
        lines += ["", render_pages_text(report.pages)]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def page_to_dict(page: Page) -> Dict[str, Any]:
    records = page_to_records(page)
    return {
        "r": page_label(page.r),
        "trusted_degree": page.trusted_degree,
        "entries": [[int(p), int(q), int(v)] for p, q, v in records[["p", "q", "dim"]].itertuples(index=False)],
        "differential_ranks": [[int(p), int(q), int(k)] for p, q, k in
                               records[["p", "q", "d_rank"]].itertuples(index=False) if k >= 0],
    }


def dump_json(doc: Dict[str, Any], output_path: Path) -> str:
    """Write `doc` stamped with the schema version; returns the written text."""
    text = json.dumps({"schema": SCHEMA_VERSION, **doc}, sort_keys=True, indent=2) + "\n"
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w") as f:
        f.write(text)
    logger.info(f"JSON exported → {output_path}")
    return text


def export_page_json(pages: Mapping[str, Page], output_path: Path,
                     instance: Optional[Dict[str, Any]] = None) -> str:
    doc = {"instance": instance or {}, "pages": {name: page_to_dict(page) for name, page in pages.items()}}
    return dump_json(doc, output_path)


def export_report_json(report: Any, output_path: Path) -> str:
    """ComparisonReport (or anything with to_dict, or a plain dict) as JSON."""
    doc = report.to_dict() if hasattr(report, "to_dict") else dict(report)
    return dump_json(doc, output_path)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

def export_page_csv(pages: Mapping[str, Page], output_path: Path) -> None:
    """Flat CSV: page, p, q, dim, d_rank."""
    frames = []
    for name, page in pages.items():
        df = page_to_records(page)
        df.insert(0, "page", name)
        frames.append(df)
    out = pd.concat(frames, ignore_index=True) if frames else \
        pd.DataFrame(columns=["page", "p", "q", "dim", "d_rank"])
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    out.to_csv(output_path, index=False)
    logger.info(f"CSV exported → {output_path}")


# ---------------------------------------------------------------------------
# Check reports
# ---------------------------------------------------------------------------

def format_check_report(results: List[CheckResult], title: str = "CHECK REPORT",
                        output_path: Optional[Path] = None) -> str:
    """
    Render check records with a pass/fail summary; written to `output_path`
    when given.
    """
    failed = failures(results)
    waived = [r for r in results if r.waived and not r.passed]
    sep = "=" * 70
    status = "✓ PASS" if not failed else "✗ FAIL"
    lines = [
        sep,
        f"  {title}",
        sep,
        "",
        f"  Checks:   {len(results)}",
        f"  Failed:   {len(failed)}",
        f"  Waived:   {len(waived)}",
        f"  Status:   {status}",
        "",
        "─" * 70,
    ]
    lines += [f"  {r}" for r in results] or ["  (no checks)"]
    lines += ["", sep]
    text = "\n".join(lines)
    if output_path is not None:
        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w") as f:
            f.write(text)
        logger.info(f"Check report exported → {output_path}")
    return text
