"""Turn an evaluation result into exports: plot data, canonical JSON,
CSV tables, a printable HTML report, and a ZIP bundle.

All machine-readable exports are canonical: floats carry at most 12
significant digits, JSON keys are sorted, CSV uses comma separators with
'.' decimals and LF line endings. Re-exporting the same result is
byte-identical, and regenerating measures.csv from result.json
reproduces it exactly.
"""

import io
import json
import zipfile
from dataclasses import dataclass
from typing import Optional

from .errors import ArchiveWriteFailure
from .evaluate import EvaluationResult, RuleEvaluation

# Coverage channels everywhere: correct hits are blue, incorrect orange.
CORRECT_COLOR = "#1f77b4"
INCORRECT_COLOR = "#ff7f0e"

# Fixed timestamp so archives are reproducible.
_ZIP_DATE = (1980, 1, 1, 0, 0, 0)

ZIP_ENTRIES = (
    "report.html",
    "measures.csv",
    "coverage.csv",
    "scatter.svg",
    "pyramid.svg",
    "result.json",
)

MEASURES_HEADER = "id,tp,fp,fn,tn,tpr,fpr,confidence,wracc_raw,wracc_norm"
COVERAGE_HEADER = "example_index,rule_id,degree,channel"


def canonical_float(value: float) -> float:
    """Round to 12 significant digits; idempotent, so re-encoding a
    decoded export changes nothing."""
    return float(f"{value:.12g}")


def format_float(value: float) -> str:
    """The 12-significant-digit text form used in CSV cells."""
    return f"{canonical_float(value):.12g}"


@dataclass(frozen=True)
class ScatterPoint:
    rule_id: int
    x: float  # fpr * 100
    y: float  # tpr * 100
    low_quality: bool  # strictly below the diagonal: tpr < fpr


@dataclass(frozen=True)
class ScatterPlotData:
    """Per-rule dots on FPr/TPr percent axes; (0, 100) is the ideal
    corner and the region below the diagonal marks poor rules."""

    points: tuple[ScatterPoint, ...]
    diagonal_region: str = "y<=x"


@dataclass(frozen=True)
class PyramidRow:
    rule_id: int
    tpr: float
    fpr: float


@dataclass(frozen=True)
class PyramidPlotData:
    rows: tuple[PyramidRow, ...]


def scatter_data(result: EvaluationResult) -> ScatterPlotData:
    """One point per rule at (fpr*100, tpr*100). A rule is flagged
    low-quality only when tpr is strictly below fpr; the diagonal itself
    is unflagged."""
    points = tuple(
        ScatterPoint(
            rule_id=ev.rule.id,
            x=ev.quality.fpr * 100.0,
            y=ev.quality.tpr * 100.0,
            low_quality=ev.quality.tpr < ev.quality.fpr,
        )
        for ev in result.rules
    )
    return ScatterPlotData(points=points)


def pyramid_data(result: EvaluationResult) -> PyramidPlotData:
    """One mirrored bar pair per rule, in ascending id order."""
    rows = tuple(
        PyramidRow(rule_id=ev.rule.id, tpr=ev.quality.tpr, fpr=ev.quality.fpr)
        for ev in sorted(result.rules, key=lambda ev: ev.rule.id)
    )
    return PyramidPlotData(rows=rows)


def _condition_texts(evaluation: RuleEvaluation):
    from .rules import condition_text

    return [condition_text(c) for c in evaluation.rule.antecedent]


def _rule_document(evaluation: RuleEvaluation) -> dict:
    table = evaluation.table
    quality = evaluation.quality
    return {
        "id": evaluation.rule.id,
        "name": evaluation.rule.display_name,
        "antecedent": evaluation.antecedent_text,
        "conditions": _condition_texts(evaluation),
        "consequent": evaluation.rule.consequent,
        "table": {
            "tp": table.tp,
            "fp": table.fp,
            "fn": table.fn,
            "tn": table.tn,
            "positives": table.positives,
            "negatives": table.negatives,
            "total": table.total,
        },
        "measures": {
            "tpr": canonical_float(quality.tpr),
            "fpr": canonical_float(quality.fpr),
            "confidence": canonical_float(quality.confidence),
            "wracc_raw": canonical_float(quality.wracc_raw),
            "wracc_norm": canonical_float(quality.wracc_norm),
        },
    }


def result_document(result: EvaluationResult) -> dict:
    """The full export document; the JSON, CSV, and HTML exports are all
    derived from this structure."""
    data = result.dataset
    attributes = [
        {
            "name": attr.name,
            "kind": attr.kind,
            "range": list(attr.range) if attr.range else None,
            "values": list(attr.values) if attr.values else None,
            "role": attr.role,
        }
        for attr in data.attributes
    ]
    scatter = scatter_data(result)
    pyramid = pyramid_data(result)
    return {
        "dataset": {
            "relation": data.relation_name,
            "example_count": len(data.examples),
            "target": data.target.name,
            # Array of pairs keeps the declared class order under
            # sorted-key JSON encoding.
            "class_distribution": [
                {"value": value, "count": count}
                for value, count in result.summary.class_distribution.items()
            ],
            "attributes": attributes,
            "range_warning_count": len(data.range_warnings),
        },
        "algorithm": {
            "name": result.ruleset.algorithm_name,
            "dialect": result.ruleset.dialect,
            "num_labels": result.ruleset.num_labels,
        },
        "rules": [_rule_document(ev) for ev in result.rules],
        "coverage": [
            {
                "example_index": entry.example_index,
                "rule_id": entry.rule_id,
                "degree": canonical_float(entry.degree),
                "channel": "correct" if entry.correct else "incorrect",
            }
            for entry in result.coverage.entries()
        ],
        "scatter": {
            "diagonal_region": scatter.diagonal_region,
            "points": [
                {
                    "rule_id": p.rule_id,
                    "x": canonical_float(p.x),
                    "y": canonical_float(p.y),
                    "low_quality": p.low_quality,
                }
                for p in scatter.points
            ],
        },
        "pyramid": {
            "rows": [
                {
                    "rule_id": r.rule_id,
                    "tpr": canonical_float(r.tpr),
                    "fpr": canonical_float(r.fpr),
                }
                for r in pyramid.rows
            ]
        },
    }


def export_json(result: EvaluationResult) -> bytes:
    """Canonical JSON bytes: sorted keys, 12-significant-digit floats,
    byte-stable across runs."""
    document = result_document(result)
    return (json.dumps(document, sort_keys=True, indent=2) + "\n").encode("utf-8")


def measures_csv(result: EvaluationResult) -> bytes:
    """One row per rule with contingency counts and quality measures."""
    return measures_csv_from_document(result_document(result))


def measures_csv_from_document(document: dict) -> bytes:
    """Regenerate measures.csv from a parsed result.json document; used
    by the exporter itself so both paths are byte-identical."""
    lines = [MEASURES_HEADER]
    for rule in document["rules"]:
        table = rule["table"]
        m = rule["measures"]
        lines.append(
            ",".join(
                [
                    str(rule["id"]),
                    str(table["tp"]),
                    str(table["fp"]),
                    str(table["fn"]),
                    str(table["tn"]),
                    format_float(m["tpr"]),
                    format_float(m["fpr"]),
                    format_float(m["confidence"]),
                    format_float(m["wracc_raw"]),
                    format_float(m["wracc_norm"]),
                ]
            )
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def coverage_csv(result: EvaluationResult) -> bytes:
    """Covered (example, rule) pairs with degree and correct/incorrect
    channel, ordered by example index then rule id."""
    lines = [COVERAGE_HEADER]
    for entry in result.coverage.entries():
        lines.append(
            ",".join(
                [
                    str(entry.example_index),
                    str(entry.rule_id),
                    format_float(entry.degree),
                    "correct" if entry.correct else "incorrect",
                ]
            )
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def _escape(text: str) -> str:
    return (
        str(text)
        .replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _inline_svg(svg: bytes) -> str:
    """Strip the XML prolog so the chart can be embedded in HTML."""
    text = svg.decode("utf-8")
    start = text.find("<svg")
    return text[start:] if start >= 0 else text


def _rule_dot_svg(evaluation: RuleEvaluation) -> str:
    """Small standalone dot plot for one rule: percent axes, red region
    below the diagonal, single blue point."""
    size = 220
    pad = 30
    span = size - 2 * pad
    x = pad + evaluation.quality.fpr * span
    y = size - pad - evaluation.quality.tpr * span
    return (
        f'<svg viewBox="0 0 {size} {size}" width="{size}" height="{size}" '
        'xmlns="http://www.w3.org/2000/svg" role="img">'
        f'<rect x="{pad}" y="{pad}" width="{span}" height="{span}" '
        'fill="white" stroke="#444"/>'
        f'<polygon points="{pad},{size - pad} {size - pad},{pad} '
        f'{size - pad},{size - pad}" fill="#d62728" fill-opacity="0.25"/>'
        f'<line x1="{pad}" y1="{size - pad}" x2="{size - pad}" y2="{pad}" '
        'stroke="#d62728" stroke-dasharray="4 3"/>'
        f'<circle cx="{x:.2f}" cy="{y:.2f}" r="5" fill="{CORRECT_COLOR}"/>'
        f'<text x="{size / 2}" y="{size - 6}" text-anchor="middle" '
        'font-size="11">FPr (%)</text>'
        f'<text x="12" y="{size / 2}" text-anchor="middle" font-size="11" '
        f'transform="rotate(-90 12 {size / 2})">TPr (%)</text>'
        "</svg>"
    )


def _measures_rows_html(result: EvaluationResult) -> str:
    rows = []
    for ev in result.rules:
        m = ev.quality
        rows.append(
            "<tr>"
            f'<td><a href="#rule-{ev.rule.id}">{_escape(ev.rule.display_name)}</a></td>'
            f"<td>{_escape(ev.antecedent_text)}</td>"
            f"<td>{_escape(ev.rule.consequent)}</td>"
            f"<td>{format_float(m.tpr)}</td>"
            f"<td>{format_float(m.fpr)}</td>"
            f"<td>{format_float(m.confidence)}</td>"
            f"<td>{format_float(m.wracc_norm)}</td>"
            "</tr>"
        )
    return "\n".join(rows)


def _covered_rows_html(result: EvaluationResult, evaluation: RuleEvaluation) -> str:
    fuzzy = result.dialect == "fuzzy"
    entries = result.coverage.by_rule.get(evaluation.rule.id, ())
    target = result.dataset.target_index
    rows = []
    for entry in entries:
        example = result.dataset.examples[entry.example_index]
        cells = ", ".join("?" if v is None else str(v) for v in example.values)
        channel = "correct" if entry.correct else "incorrect"
        degree = f"<td>[{format_float(entry.degree)}]</td>" if fuzzy else ""
        rows.append(
            f'<tr class="{channel}">'
            f"<td>{entry.example_index}</td>"
            f"<td>{_escape(cells)}</td>"
            f"<td>{_escape(str(example.values[target]))}</td>"
            f"{degree}"
            "</tr>"
        )
    return "\n".join(rows)


def _rule_section_html(result: EvaluationResult, evaluation: RuleEvaluation) -> str:
    table = evaluation.table
    m = evaluation.quality
    fuzzy = result.dialect == "fuzzy"
    degree_header = "<th>Degree</th>" if fuzzy else ""
    return f"""
<section class="rule" id="rule-{evaluation.rule.id}">
<h2>{_escape(evaluation.rule.display_name)}</h2>
<p class="rule-text">IF {_escape(evaluation.antecedent_text)} THEN {_escape(evaluation.rule.consequent)}</p>
<div class="row">
<table class="contingency">
<tr><th></th><th>Positives</th><th>Negatives</th></tr>
<tr><th>Covered</th><td class="correct">{table.tp}</td><td class="incorrect">{table.fp}</td></tr>
<tr><th>Not covered</th><td>{table.fn}</td><td>{table.tn}</td></tr>
</table>
<table class="measures">
<tr><th>TPr</th><td>{format_float(m.tpr)}</td></tr>
<tr><th>FPr</th><td>{format_float(m.fpr)}</td></tr>
<tr><th>Conf</th><td>{format_float(m.confidence)}</td></tr>
<tr><th>WRAcc (raw)</th><td>{format_float(m.wracc_raw)}</td></tr>
<tr><th>WRAcc (norm)</th><td>{format_float(m.wracc_norm)}</td></tr>
</table>
{_rule_dot_svg(evaluation)}
</div>
<h3>Covered examples</h3>
<table class="covered">
<tr><th>Index</th><th>Values</th><th>Class</th>{degree_header}</tr>
{_covered_rows_html(result, evaluation)}
</table>
</section>
"""


def report_html(
    result: EvaluationResult,
    scatter_svg: Optional[bytes] = None,
    pyramid_svg: Optional[bytes] = None,
) -> bytes:
    """Self-contained printable report: overview table, charts, and one
    section per rule. Pass the rendered chart SVGs to embed them."""
    summary = result.summary
    distribution = ", ".join(
        f"{_escape(value)}: {count}"
        for value, count in summary.class_distribution.items()
    )
    num_labels = result.ruleset.num_labels
    labels_note = f", {num_labels} labels" if num_labels is not None else ""
    charts = ""
    if scatter_svg or pyramid_svg:
        parts = []
        if scatter_svg:
            parts.append(f'<figure>{_inline_svg(scatter_svg)}<figcaption>TPr/FPr dispersion</figcaption></figure>')
        if pyramid_svg:
            parts.append(f'<figure>{_inline_svg(pyramid_svg)}<figcaption>TPr and FPr per rule</figcaption></figure>')
        charts = '<div class="row charts">' + "".join(parts) + "</div>"
    sections = "\n".join(_rule_section_html(result, ev) for ev in result.rules)
    html = f"""<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>Rule evaluation report: {_escape(summary.relation_name)}</title>
<style>
body {{ font-family: Georgia, serif; margin: 2rem auto; max-width: 60rem; color: #222; }}
h1, h2, h3 {{ font-family: Helvetica, Arial, sans-serif; }}
table {{ border-collapse: collapse; margin: 0.5rem 0; }}
th, td {{ border: 1px solid #999; padding: 0.25rem 0.6rem; text-align: left; }}
th {{ background: #eee; }}
.row {{ display: flex; gap: 1.5rem; align-items: flex-start; flex-wrap: wrap; }}
td.correct {{ background: {CORRECT_COLOR}; color: white; }}
td.incorrect {{ background: {INCORRECT_COLOR}; color: white; }}
tr.correct td {{ background: #e8f1f8; }}
tr.incorrect td {{ background: #fdf0e2; }}
.legend span {{ padding: 0 0.4rem; color: white; }}
figure {{ margin: 0; }}
figure svg {{ max-width: 100%; height: auto; }}
@media print {{ section.rule {{ page-break-inside: avoid; }} }}
</style>
</head>
<body>
<h1>Rule evaluation report</h1>
<p>Dataset <strong>{_escape(summary.relation_name)}</strong>: {summary.example_count} examples,
target <strong>{_escape(summary.target_name)}</strong> ({distribution}).</p>
<p>Algorithm <strong>{_escape(result.ruleset.algorithm_name)}</strong>
({result.ruleset.dialect}{labels_note}), {len(result.rules)} rules.</p>
<p class="legend">Coverage channels:
<span style="background:{CORRECT_COLOR}">correct</span>
<span style="background:{INCORRECT_COLOR}">incorrect</span></p>
<h2>Rules</h2>
<table class="overview">
<tr><th>Rule</th><th>Antecedent</th><th>Consequent</th><th>TPr</th><th>FPr</th><th>Conf</th><th>WRAcc</th></tr>
{_measures_rows_html(result)}
</table>
{charts}
{sections}
</body>
</html>
"""
    return html.encode("utf-8")


def export_report_zip(result: EvaluationResult) -> bytes:
    """The full report bundle with exactly the six declared entries and a
    fixed timestamp on each."""
    from .figures import render_pyramid_svg, render_scatter_svg

    scatter_svg = render_scatter_svg(scatter_data(result))
    pyramid_svg = render_pyramid_svg(pyramid_data(result))
    entries = {
        "report.html": report_html(result, scatter_svg, pyramid_svg),
        "measures.csv": measures_csv(result),
        "coverage.csv": coverage_csv(result),
        "scatter.svg": scatter_svg,
        "pyramid.svg": pyramid_svg,
        "result.json": export_json(result),
    }
    buffer = io.BytesIO()
    with zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as archive:
        for name in ZIP_ENTRIES:
            info = zipfile.ZipInfo(name, date_time=_ZIP_DATE)
            info.compress_type = zipfile.ZIP_DEFLATED
            archive.writestr(info, entries[name])
    return buffer.getvalue()


def write_report_zip(result: EvaluationResult, path) -> None:
    """Write the bundle to disk; I/O problems surface as
    ArchiveWriteFailure."""
    payload = export_report_zip(result)
    try:
        with open(path, "wb") as handle:
            handle.write(payload)
    except OSError as exc:
        raise ArchiveWriteFailure(f"cannot write archive {path}: {exc}") from exc
