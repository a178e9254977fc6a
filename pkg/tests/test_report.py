"""Export tests: plot data, canonical JSON, CSV dialect, HTML report,
and the ZIP bundle manifest."""

import io
import json
import random
import zipfile

import pytest

from rulebench.dataset import parse_dataset
from rulebench.evaluate import (
    ContingencyTable,
    EvaluationResult,
    QualityMeasures,
    evaluate_session,
)
from rulebench.report import (
    COVERAGE_HEADER,
    MEASURES_HEADER,
    ZIP_ENTRIES,
    canonical_float,
    coverage_csv,
    export_json,
    export_report_zip,
    format_float,
    measures_csv,
    measures_csv_from_document,
    pyramid_data,
    report_html,
    result_document,
    scatter_data,
)
from rulebench.rules import RuleSet, bind_rules, parse_rules


def _result_with_measures(measure_rows, iris_text):
    """Build an EvaluationResult whose per-rule measures are the given
    (tpr, fpr) pairs, by patching a real result's evaluations."""
    from dataclasses import replace

    data = parse_dataset(iris_text)
    base = evaluate_session(
        data,
        parse_rules(
            "@algorithm apriorisd\nGENERATED RULE 0\n"
            "    Variable petalLength in [1.0, 1.9]\n    Consequent: Iris-setosa\n"
        ),
    )
    template = base.rules[0]
    evaluations = []
    for i, (tpr, fpr) in enumerate(measure_rows):
        quality = QualityMeasures(
            tpr=tpr, fpr=fpr, confidence=0.5, wracc_raw=0.0, wracc_norm=0.5
        )
        rule = replace(template.rule, id=i, display_name=f"GENERATED RULE {i}")
        evaluations.append(replace(template, rule=rule, quality=quality))
    return replace(base, rules=tuple(evaluations))


def test_scatter_points_and_flags(iris_text):
    result = _result_with_measures([(1.0, 0.0), (0.2, 0.6), (0.5, 0.5)], iris_text)
    data = scatter_data(result)
    assert data.diagonal_region == "y<=x"
    assert len(data.points) == 3
    ideal, low, boundary = data.points
    assert (ideal.x, ideal.y, ideal.low_quality) == (0.0, 100.0, False)
    assert (low.x, low.y, low.low_quality) == (60.0, 20.0, True)
    assert (boundary.x, boundary.y, boundary.low_quality) == (50.0, 50.0, False)
    for point in data.points:
        assert 0.0 <= point.x <= 100.0
        assert 0.0 <= point.y <= 100.0


def test_pyramid_rows_in_id_order(iris_text):
    result = _result_with_measures([(1.0, 0.0)], iris_text)
    rows = pyramid_data(result).rows
    assert [(r.rule_id, r.tpr, r.fpr) for r in rows] == [(0, 1.0, 0.0)]

    shuffled = (
        "@algorithm apriorisd\n"
        "GENERATED RULE 2\n    Variable petalLength in [1.0, 1.9]\n    Consequent: Iris-setosa\n"
        "GENERATED RULE 0\n    Variable petalLength in [4.9, 6.9]\n    Consequent: Iris-virginica\n"
        "GENERATED RULE 1\n    Variable petalWidth in [1.0, 1.7]\n    Consequent: Iris-versicolor\n"
    )
    result = evaluate_session(parse_dataset(iris_text), parse_rules(shuffled))
    assert [r.rule_id for r in pyramid_data(result).rows] == [0, 1, 2]


def test_pyramid_empty_for_zero_rules(two_row_dataset_text):
    data = parse_dataset(two_row_dataset_text)
    empty_rules = RuleSet(algorithm_name="none", dialect="crisp", rules=())
    result = evaluate_session(data, empty_rules)
    assert pyramid_data(result).rows == ()
    assert scatter_data(result).points == ()


def test_canonical_float_is_idempotent():
    rng = random.Random(5)
    for _ in range(500):
        value = rng.uniform(-1e6, 1e6) * 10 ** rng.randint(-12, 12)
        once = canonical_float(value)
        assert canonical_float(once) == once
        assert format_float(once) == format_float(canonical_float(once))


def test_export_json_is_canonical_and_stable(iris_setosa_result):
    first = export_json(iris_setosa_result)
    second = export_json(iris_setosa_result)
    assert first == second
    document = json.loads(first)
    recoded = (json.dumps(document, sort_keys=True, indent=2) + "\n").encode()
    assert recoded == first
    assert document["rules"][0]["consequent"] == "Iris-setosa"
    assert document["algorithm"] == {
        "name": "nmeef",
        "dialect": "fuzzy",
        "num_labels": 3,
    }
    assert document["dataset"]["example_count"] == 150
    assert [c["value"] for c in document["dataset"]["class_distribution"]] == [
        "Iris-setosa",
        "Iris-versicolor",
        "Iris-virginica",
    ]


def test_export_json_empty_ruleset(two_row_dataset_text):
    data = parse_dataset(two_row_dataset_text)
    result = evaluate_session(
        data, RuleSet(algorithm_name="none", dialect="crisp", rules=())
    )
    document = json.loads(export_json(result))
    assert document["rules"] == []
    assert document["coverage"] == []


def test_measures_csv_dialect(iris_setosa_result):
    payload = measures_csv(iris_setosa_result)
    text = payload.decode("utf-8")
    assert "\r" not in text
    lines = text.split("\n")
    assert lines[0] == MEASURES_HEADER
    assert lines[0] == "id,tp,fp,fn,tn,tpr,fpr,confidence,wracc_raw,wracc_norm"
    assert len(lines) == 3 and lines[2] == ""  # header + 1 rule + trailing LF
    row = lines[1].split(",")
    assert row[:5] == ["0", "50", "11", "0", "89"]
    assert row[6] == "0.11"


def test_measures_csv_round_trips_through_json(iris_setosa_result):
    document = json.loads(export_json(iris_setosa_result))
    assert measures_csv_from_document(document) == measures_csv(iris_setosa_result)


def test_coverage_csv_channels(iris_setosa_result):
    text = coverage_csv(iris_setosa_result).decode("utf-8")
    lines = text.strip().split("\n")
    assert lines[0] == COVERAGE_HEADER
    table = iris_setosa_result.rules[0].table
    assert len(lines) - 1 == table.tp + table.fp
    channels = [line.split(",")[3] for line in lines[1:]]
    assert channels.count("correct") == table.tp
    assert channels.count("incorrect") == table.fp
    indices = [int(line.split(",")[0]) for line in lines[1:]]
    assert indices == sorted(indices)


def test_zip_manifest_and_determinism(iris_setosa_result):
    first = export_report_zip(iris_setosa_result)
    second = export_report_zip(iris_setosa_result)
    assert first == second
    with zipfile.ZipFile(io.BytesIO(first)) as archive:
        assert tuple(archive.namelist()) == ZIP_ENTRIES
        for info in archive.infolist():
            assert info.date_time == (1980, 1, 1, 0, 0, 0)
        assert archive.read("measures.csv") == measures_csv(iris_setosa_result)
        assert archive.read("result.json") == export_json(iris_setosa_result)
        assert archive.read("coverage.csv") == coverage_csv(iris_setosa_result)
        assert archive.read("scatter.svg").lstrip().startswith(b"<?xml")
        assert archive.read("pyramid.svg").lstrip().startswith(b"<?xml")
        assert b"<!DOCTYPE html>" in archive.read("report.html")


def test_zip_for_zero_rule_session(two_row_dataset_text):
    data = parse_dataset(two_row_dataset_text)
    result = evaluate_session(
        data, RuleSet(algorithm_name="none", dialect="crisp", rules=())
    )
    payload = export_report_zip(result)
    with zipfile.ZipFile(io.BytesIO(payload)) as archive:
        assert tuple(archive.namelist()) == ZIP_ENTRIES
        html = archive.read("report.html").decode("utf-8")
        assert "0 rules" in html


def test_report_html_fuzzy_shows_degree_column(iris_setosa_result):
    html = report_html(iris_setosa_result).decode("utf-8")
    assert "<!DOCTYPE html>" in html
    assert 'id="rule-0"' in html
    assert "<th>Degree</th>" in html
    assert "[0.864406779661]" in html
    assert "#1f77b4" in html and "#ff7f0e" in html
    assert "Iris-setosa" in html


def test_report_html_crisp_omits_degree_column(iris_text, crisp_rules_path):
    result = evaluate_session(
        parse_dataset(iris_text), parse_rules(crisp_rules_path.read_text())
    )
    html = report_html(result).decode("utf-8")
    assert "<th>Degree</th>" not in html
    assert 'id="rule-2"' in html


def test_report_html_escapes_markup():
    data = parse_dataset(
        "@relation t\n@attribute x real [0, 1]\n"
        "@attribute c {a<b, plain}\n@data\n0.5, a<b\n"
    )
    rules = parse_rules(
        "@algorithm cn2sd\nGENERATED RULE 0\n"
        "    Variable x in [0, 1]\n    Consequent: a<b\n"
    )
    html = report_html(evaluate_session(data, rules)).decode("utf-8")
    assert "a<b" not in html.replace("a&lt;b", "")


def test_every_rule_appears_once_in_document(iris_text, fuzzy_rules_path):
    result = evaluate_session(
        parse_dataset(iris_text), parse_rules(fuzzy_rules_path.read_text())
    )
    document = result_document(result)
    ids = [r["id"] for r in document["rules"]]
    assert ids == sorted(set(ids)) == [0, 1, 2]
    scatter_ids = [p["rule_id"] for p in document["scatter"]["points"]]
    pyramid_ids = [r["rule_id"] for r in document["pyramid"]["rows"]]
    assert sorted(scatter_ids) == ids
    assert pyramid_ids == ids


def test_figures_render_stable_svg(iris_setosa_result):
    from rulebench.figures import render_pyramid_svg, render_scatter_svg

    scatter = render_scatter_svg(scatter_data(iris_setosa_result))
    pyramid = render_pyramid_svg(pyramid_data(iris_setosa_result))
    assert scatter.lstrip().startswith(b"<?xml")
    assert pyramid.lstrip().startswith(b"<?xml")
    assert b"FPr" in scatter and b"TPr" in scatter
    assert render_scatter_svg(scatter_data(iris_setosa_result)) == scatter
    assert render_pyramid_svg(pyramid_data(iris_setosa_result)) == pyramid
