"""Highlighted marking reports and collated result tables / figures."""

from __future__ import annotations

import csv
import html
import json
import logging
from pathlib import Path
from typing import Iterable, Sequence

from .evaluation import TABLE_HEADER, format_table, table_row
from .markup import KIND_COLORS, SpanKind, render_marked

logger = logging.getLogger(__name__)

_LEGEND = (
    (SpanKind.CORRECT, "correct"),
    (SpanKind.INCORRECT, "incorrect"),
    (SpanKind.IRRELEVANT, "irrelevant"),
    (SpanKind.OMISSION, "omitted from the response"),
)

_CSS = """
body { font-family: Georgia, serif; max-width: 48em; margin: 2em auto; line-height: 1.6; color: #222; }
h1 { font-size: 1.3em; } h2 { font-size: 1.05em; margin-bottom: .2em; }
.text { padding: .6em .8em; border: 1px solid #ddd; border-radius: 4px; background: #fafafa; }
.legend span { margin-right: 1.2em; padding: 0 .3em; }
"""


def render_marking_report(result, gold: str | None = None, response: str | None = None,
                          format: str = "ansi", title: str = "Marking report") -> str:
    """Color a :class:`~marking.model.MarkingResult` for a terminal or a browser.

    Response spans are green / red / yellow; omissions are blue over the gold
    answer.  The HTML form is one static document with inline styles only.
    """
    gold_view = result.gold_view
    resp_view = result.response_view
    if gold is not None and gold != gold_view.plain_text:
        raise ValueError("gold text does not match the marking result")
    if response is not None and response != resp_view.plain_text:
        raise ValueError("response text does not match the marking result")
    setting = result.setting.value
    if format == "ansi":
        return "\n".join([
            f"{title} [{setting}]",
            "Gold answer:",
            "  " + render_marked(gold_view, "ansi"),
            "Student response:",
            "  " + render_marked(resp_view, "ansi"),
        ])
    if format != "html":
        raise ValueError(f"unknown report format {format!r}")
    legend = "".join(
        f'<span style="background-color:{KIND_COLORS[k][1]}33;'
        f'border-bottom:2px solid {KIND_COLORS[k][1]}">{html.escape(label)}</span>'
        for k, label in _LEGEND
    )
    return (
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
        f"<title>{html.escape(title)}</title><style>{_CSS}</style></head><body>\n"
        f"<h1>{html.escape(title)}</h1><p>Label setting: <code>{html.escape(setting)}</code></p>\n"
        f'<div class="legend">{legend}</div>\n'
        f'<h2>Gold answer</h2><div class="text">{render_marked(gold_view, "html")}</div>\n'
        f'<h2>Student response</h2><div class="text">{render_marked(resp_view, "html")}</div>\n'
        "</body></html>\n"
    )


# ---------------------------------------------------------------------------
# run collation


def _report_files(paths: Iterable) -> list[Path]:
    out = []
    for p in map(Path, paths):
        if p.is_dir():
            out.extend(sorted(p.rglob("report.json")))
        else:
            out.append(p)
    return out


def load_run_reports(paths: Iterable) -> list[dict]:
    reports = []
    for path in _report_files(paths):
        with open(path, encoding="utf-8") as fh:
            reports.append(json.load(fh))
    return reports


_SETTING_ORDER = {"generic": 0, "con-focus": 1, "err-focus": 2}


def result_rows(reports: Sequence[dict]) -> list[dict]:
    """One row per run, keyed by (model, setting, stopwords, pairs)."""
    rows = []
    for rep in reports:
        spec = rep["spec"]
        metrics = rep.get("metrics") or {}
        rows.append({
            "model": spec["encoder"],
            "setting": spec["setting"],
            "stopwords": bool(spec["rm_stopwords"]),
            "pairs": bool(spec["dip"]),
            "precision": metrics.get("precision"),
            "recall": metrics.get("recall"),
            "f1": metrics.get("f1"),
            "accuracy": metrics.get("accuracy"),
            "status": rep.get("status", "ok"),
            "seed": rep.get("seed"),
        })
    rows.sort(key=lambda r: (r["model"], _SETTING_ORDER.get(r["setting"], 9), not r["stopwords"], not r["pairs"]))
    return rows


def table_rows(rows: Sequence[dict]) -> list[tuple]:
    return [table_row(r["model"], r["setting"], r["stopwords"], r["pairs"], r) for r in rows]


def write_results_table(rows: Sequence[dict], path, delimiter: str = "\t") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter=delimiter)
        writer.writerow([*TABLE_HEADER, "Status"])
        for r, t in zip(rows, table_rows(rows)):
            writer.writerow([*t, r["status"]])
    return path


def plot_results(rows: Sequence[dict], path, metric: str = "f1") -> Path | None:
    """Grouped bars of ``metric`` per label setting, one bar per condition."""
    rows = [r for r in rows if r.get(metric) is not None]
    if not rows:
        return None
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    settings = sorted({r["setting"] for r in rows}, key=lambda s: _SETTING_ORDER.get(s, 9))
    conditions = sorted({(r["model"], r["stopwords"], r["pairs"]) for r in rows},
                        key=lambda c: (c[0], not c[1], not c[2]))
    width = 0.8 / len(conditions)
    rc = {"font.size": 9, "axes.spines.top": False, "axes.spines.right": False, "figure.dpi": 120}
    with plt.rc_context(rc):
        fig, ax = plt.subplots(figsize=(max(4.0, 1.6 * len(settings) + 0.3 * len(conditions)), 3.2))
        for k, cond in enumerate(conditions):
            xs, ys = [], []
            for i, s in enumerate(settings):
                match = [r for r in rows if (r["model"], r["stopwords"], r["pairs"]) == cond and r["setting"] == s]
                if match:
                    xs.append(i - 0.4 + (k + 0.5) * width)
                    ys.append(match[0][metric])
            label = f"{cond[0]} sw={'Y' if cond[1] else 'N'} dip={'Y' if cond[2] else 'N'}"
            ax.bar(xs, ys, width=width * 0.95, label=label)
        ax.set_xticks(range(len(settings)))
        ax.set_xticklabels(settings)
        ax.set_ylim(0, 1)
        ax.set_ylabel(metric.upper() if metric == "f1" else metric.capitalize())
        ax.legend(fontsize=7, frameon=False, loc="upper left", ncol=2)
        fig.tight_layout()
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path)
        plt.close(fig)
    return path


def collate(paths: Iterable, out_dir, figure: bool = True) -> dict:
    """Collect run reports into ``results.tsv``, ``results.txt`` and ``results_f1.png``.

    Pure function of the report files: re-running overwrites identical output.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = result_rows(load_run_reports(paths))
    table = write_results_table(rows, out_dir / "results.tsv")
    text = format_table([(*t, r["status"]) for r, t in zip(rows, table_rows(rows))], (*TABLE_HEADER, "Status"))
    (out_dir / "results.txt").write_text(text + "\n", encoding="utf-8")
    fig = plot_results(rows, out_dir / "results_f1.png") if figure else None
    return {"rows": rows, "table": table, "text": text, "figure": fig}
