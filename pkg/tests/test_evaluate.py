"""Evaluation core tests: membership, firing, contingency, measures,
coverage views, and brute-force equivalence on random inputs."""

import random

import oracle
import pytest

from conftest import EDGE_DEGREE, IRIS_ORACLE
from rulebench.dataset import parse_dataset
from rulebench.errors import UnknownClass
from rulebench.evaluate import (
    ContingencyTable,
    contingency,
    coverage_matrix,
    covers,
    evaluate_session,
    firing_degree,
    measures,
    membership,
)
from rulebench.rules import (
    Condition,
    FuzzyLabel,
    NumericInterval,
    Rule,
    RuleSet,
    TriangularLabel,
    bind_rules,
    parse_rules,
)

TOL = 1e-9

SETOSA_TRIANGLE = TriangularLabel(0, -1.95, 1.0, 3.95)


def crisp_ruleset(rules):
    return RuleSet(algorithm_name="adhoc", dialect="crisp", rules=tuple(rules))


def fuzzy_ruleset(rules, num_labels=3):
    return RuleSet(
        algorithm_name="adhoc", dialect="fuzzy", rules=tuple(rules), num_labels=num_labels
    )


def interval_rule(rule_id, attr, lo, hi, consequent, lo_closed=True, hi_closed=True):
    condition = Condition(attr, NumericInterval(lo, hi, lo_closed, hi_closed))
    return Rule(rule_id, (condition,), consequent, f"GENERATED RULE {rule_id}")


# -- membership -------------------------------------------------------------


def test_membership_peak_outside_and_edge():
    assert membership(1.0, SETOSA_TRIANGLE) == 1.0
    assert membership(5.0, SETOSA_TRIANGLE) == 0.0
    assert membership(-1.95, SETOSA_TRIANGLE) == 0.0
    assert membership(3.95, SETOSA_TRIANGLE) == 0.0
    assert membership(1.4, SETOSA_TRIANGLE) == pytest.approx(EDGE_DEGREE, abs=TOL)
    assert membership(0.0, SETOSA_TRIANGLE) == pytest.approx(1.95 / 2.95, abs=TOL)


def test_membership_shoulders():
    left = TriangularLabel(0, 0.0, 0.0, 1.0)
    assert membership(0.0, left) == 1.0
    assert membership(0.5, left) == pytest.approx(0.5, abs=TOL)
    assert membership(1.0, left) == 0.0
    right = TriangularLabel(1, 0.0, 1.0, 1.0)
    assert membership(1.0, right) == 1.0
    assert membership(0.5, right) == pytest.approx(0.5, abs=TOL)
    assert membership(0.0, right) == 0.0


def test_membership_property_sweep():
    rng = random.Random(1234)
    for _ in range(1000):
        a = rng.uniform(-50, 50)
        c = a + rng.uniform(0.1, 40)
        b = rng.uniform(a, c)
        label = TriangularLabel(0, a, b, c)
        x = rng.uniform(a - 10, c + 10)
        degree = membership(x, label)
        assert 0.0 <= degree <= 1.0
        assert membership(b, label) == 1.0
        if x <= a or x >= c:
            assert degree == 0.0
        assert degree == pytest.approx(oracle.triangle_degree(x, a, b, c), abs=TOL)
        # Monotone on both sides of the peak.
        step = rng.uniform(0.0, 1.0)
        if x < b:
            assert membership(min(x + step, b), label) >= degree - TOL
        if x > b:
            assert membership(max(x - step, b), label) >= degree - TOL


# -- firing degree and coverage --------------------------------------------


def test_firing_degree_published_row(two_row_dataset_text, setosa_rules_text):
    data = parse_dataset(two_row_dataset_text)
    bound = bind_rules(parse_rules(setosa_rules_text), data)
    assert firing_degree(bound.bound_rules[0], data.examples[0]) == pytest.approx(
        EDGE_DEGREE, abs=TOL
    )
    assert covers(bound.bound_rules[0], data.examples[0])


def test_firing_degree_crisp_containment(two_row_dataset_text):
    data = parse_dataset(two_row_dataset_text)
    rules = crisp_ruleset([interval_rule(0, "sepalWidth", 2.0, 4.4, "Iris-setosa")])
    bound = bind_rules(rules, data)
    assert firing_degree(bound.bound_rules[0], data.examples[0]) == 1.0


def test_firing_degree_is_min_over_conditions(two_row_dataset_text):
    data = parse_dataset(two_row_dataset_text)
    rule = Rule(
        0,
        (
            Condition("petalLength", FuzzyLabel(SETOSA_TRIANGLE)),
            Condition("sepalWidth", FuzzyLabel(TriangularLabel(1, 3.0, 3.5, 4.0))),
        ),
        "Iris-setosa",
        "GENERATED RULE 0",
    )
    bound = bind_rules(fuzzy_ruleset([rule]), data)
    # Row 0: petalLength degree 0.8644..., sepalWidth at its peak 3.5 -> 1.
    assert firing_degree(bound.bound_rules[0], data.examples[0]) == pytest.approx(
        EDGE_DEGREE, abs=TOL
    )
    # Row 1: sepalWidth 3.0 sits on the triangle edge -> degree 0.
    assert firing_degree(bound.bound_rules[0], data.examples[1]) == 0.0
    assert not covers(bound.bound_rules[0], data.examples[1])


def test_missing_cell_contributes_zero():
    data = parse_dataset(
        "@relation t\n@attribute x real [0, 1]\n@attribute c {a, b}\n@data\n?, a\n"
    )
    rules = crisp_ruleset([interval_rule(0, "x", 0.0, 1.0, "a")])
    bound = bind_rules(rules, data)
    assert firing_degree(bound.bound_rules[0], data.examples[0]) == 0.0
    assert not covers(bound.bound_rules[0], data.examples[0])


# -- contingency ------------------------------------------------------------


def test_contingency_empty_and_full_coverage(iris_text):
    data = parse_dataset(iris_text)
    nothing = bind_rules(
        crisp_ruleset([interval_rule(0, "petalLength", 100.0, 200.0, "Iris-setosa")]),
        data,
    )
    assert contingency(nothing.bound_rules[0], data) == ContingencyTable(0, 0, 50, 100)
    everything = bind_rules(
        crisp_ruleset([interval_rule(0, "petalLength", 0.0, 100.0, "Iris-setosa")]),
        data,
    )
    assert contingency(everything.bound_rules[0], data) == ContingencyTable(50, 100, 0, 0)


def test_contingency_published_rule_on_iris(iris_setosa_result):
    table = iris_setosa_result.rules[0].table
    assert (table.tp, table.fp, table.fn, table.tn) == (
        IRIS_ORACLE["tp"],
        IRIS_ORACLE["fp"],
        IRIS_ORACLE["fn"],
        IRIS_ORACLE["tn"],
    )
    assert table.positives == 50
    assert table.negatives == 100
    assert table.total == 150


# -- measures ---------------------------------------------------------------


def test_measures_exact_rule():
    q = measures(ContingencyTable(50, 0, 0, 100))
    assert q.tpr == 1.0
    assert q.fpr == 0.0
    assert q.confidence == 1.0
    assert q.wracc_raw == pytest.approx(2.0 / 9.0, abs=TOL)
    assert q.wracc_norm == pytest.approx(1.0, abs=TOL)


def test_measures_empty_rule():
    q = measures(ContingencyTable(0, 0, 50, 100))
    assert (q.tpr, q.fpr, q.confidence, q.wracc_raw) == (0.0, 0.0, 0.0, 0.0)
    assert q.wracc_norm == pytest.approx(0.5, abs=TOL)


def test_measures_cover_all_rule():
    q = measures(ContingencyTable(50, 100, 0, 0))
    assert q.tpr == 1.0
    assert q.fpr == 1.0
    assert q.confidence == pytest.approx(1.0 / 3.0, abs=TOL)
    assert q.wracc_raw == pytest.approx(0.0, abs=TOL)
    assert q.wracc_norm == pytest.approx(0.5, abs=TOL)


def test_measures_degenerate_class_splits():
    assert measures(ContingencyTable(0, 3, 0, 7)).wracc_norm == 0.5  # P = 0
    assert measures(ContingencyTable(3, 0, 7, 0)).wracc_norm == 0.5  # N = 0
    assert measures(ContingencyTable(0, 0, 0, 0)).wracc_norm == 0.5  # empty data


def test_measures_identities_random_tables():
    rng = random.Random(777)
    for _ in range(1000):
        tp, fp, fn, tn = (rng.randint(0, 30) for _ in range(4))
        if tp + fp + fn + tn == 0:
            tp = 1
        table = ContingencyTable(tp, fp, fn, tn)
        q = measures(table)
        P, N, T = table.positives, table.negatives, table.total
        assert T == tp + fp + fn + tn
        for value in (q.tpr, q.fpr, q.confidence, q.wracc_norm):
            assert -TOL <= value <= 1.0 + TOL
        if P and N:
            extreme = P * N / T**2
            assert -extreme - TOL <= q.wracc_raw <= extreme + TOL
        if P:
            assert q.tpr == pytest.approx(tp / P, abs=TOL)
        if N:
            assert q.fpr == pytest.approx(fp / N, abs=TOL)
        if tp + fp:
            assert q.confidence == pytest.approx(tp / (tp + fp), abs=TOL)


def test_measures_invariant_under_count_scaling():
    rng = random.Random(2024)
    for _ in range(200):
        tp, fp, fn, tn = (rng.randint(0, 12) for _ in range(4))
        if tp + fp + fn + tn == 0:
            fn = 1
        k = rng.randint(2, 9)
        q1 = measures(ContingencyTable(tp, fp, fn, tn))
        q2 = measures(ContingencyTable(k * tp, k * fp, k * fn, k * tn))
        assert q1.tpr == pytest.approx(q2.tpr, abs=TOL)
        assert q1.fpr == pytest.approx(q2.fpr, abs=TOL)
        assert q1.confidence == pytest.approx(q2.confidence, abs=TOL)
        assert q1.wracc_raw == pytest.approx(q2.wracc_raw, abs=TOL)
        assert q1.wracc_norm == pytest.approx(q2.wracc_norm, abs=TOL)


# -- coverage matrix --------------------------------------------------------


def test_coverage_views_are_consistent(iris_setosa_result):
    matrix = iris_setosa_result.coverage
    flat_by_example = sorted(
        (e.example_index, e.rule_id, e.degree, e.correct)
        for group in matrix.by_example.values()
        for e in group
    )
    flat_by_rule = sorted(
        (e.example_index, e.rule_id, e.degree, e.correct)
        for group in matrix.by_rule.values()
        for e in group
    )
    assert flat_by_example == flat_by_rule
    table = iris_setosa_result.rules[0].table
    entries = matrix.by_rule[0]
    assert len(entries) == table.tp + table.fp
    assert sum(1 for e in entries if e.correct) == table.tp
    assert sum(1 for e in entries if not e.correct) == table.fp
    assert all(e.degree > 0.0 for e in entries)


def test_coverage_structural_small_case():
    data = parse_dataset(
        "@relation t\n@attribute x real [0, 10]\n@attribute c {a, b}\n"
        "@data\n1.0, a\n2.0, a\n9.0, b\n"
    )
    bound = bind_rules(crisp_ruleset([interval_rule(0, "x", 0.0, 5.0, "a")]), data)
    matrix = coverage_matrix(bound, data)
    assert sorted(matrix.by_example) == [0, 1]
    assert len(matrix.by_rule[0]) == 2
    assert all(e.correct for e in matrix.by_rule[0])
    assert all(e.degree == 1.0 for e in matrix.by_rule[0])


def test_zero_rules_give_empty_views(two_row_dataset_text):
    data = parse_dataset(two_row_dataset_text)
    bound = bind_rules(crisp_ruleset([]), data)
    matrix = coverage_matrix(bound, data)
    assert matrix.by_example == {}
    assert matrix.by_rule == {}
    assert matrix.entries() == []


# -- evaluate_session -------------------------------------------------------


def test_session_on_two_row_dataset(two_row_dataset_text, setosa_rules_text):
    data = parse_dataset(two_row_dataset_text)
    rules = parse_rules(setosa_rules_text)
    result = evaluate_session(data, rules)
    assert len(result.rules) == 1
    table = result.rules[0].table
    assert table.total == 2
    assert table.positives == 2
    assert (table.tp, table.fp, table.fn, table.tn) == (2, 0, 0, 0)
    q = result.rules[0].quality
    assert (q.tpr, q.fpr, q.confidence) == (1.0, 0.0, 1.0)
    assert q.wracc_raw == 0.0
    assert q.wracc_norm == 0.5  # single-class data carries no information
    assert result.summary.example_count == 2
    assert result.summary.class_distribution["Iris-setosa"] == 2


def test_session_binding_error_propagates(two_row_dataset_text, setosa_rules_text):
    data = parse_dataset(two_row_dataset_text)
    rules = parse_rules(setosa_rules_text.replace("Iris-setosa", "Iris-bogus"))
    with pytest.raises(UnknownClass):
        evaluate_session(data, rules)


def test_duplicated_rule_gets_identical_measures(iris_text, setosa_rules_text):
    data = parse_dataset(iris_text)
    doubled = setosa_rules_text + (
        "GENERATED RULE 1\n"
        "    Antecedent\n"
        "        Variable petalLength = Label 0 (-1.95 1.0 3.95)\n"
        "    Consecuent: Iris-setosa\n"
    )
    result = evaluate_session(data, parse_rules(doubled))
    assert len(result.rules) == 2
    assert result.rules[0].table == result.rules[1].table
    assert result.rules[0].quality == result.rules[1].quality


def test_session_orders_rules_by_id(iris_text):
    text = (
        "@algorithm apriorisd\n"
        "GENERATED RULE 3\n    Variable petalLength in [1.0, 1.9]\n    Consequent: Iris-setosa\n"
        "GENERATED RULE 1\n    Variable petalLength in [4.9, 6.9]\n    Consequent: Iris-virginica\n"
    )
    result = evaluate_session(parse_dataset(iris_text), parse_rules(text))
    assert [ev.rule.id for ev in result.rules] == [1, 3]


def test_rule_evaluation_lookup(iris_setosa_result):
    assert iris_setosa_result.rule_evaluation(0) is not None
    assert iris_setosa_result.rule_evaluation(7) is None


# -- dialect agreement and random brute force -------------------------------


def _random_dataset(rng):
    n_attrs = rng.randint(1, 3)
    lines = ["@relation rnd"]
    for i in range(n_attrs):
        lines.append(f"@attribute x{i} real [0, 10]")
    lines.append("@attribute c {a, b}")
    lines.append("@data")
    for _ in range(rng.randint(1, 10)):
        cells = []
        for _ in range(n_attrs):
            cells.append("?" if rng.random() < 0.08 else str(round(rng.uniform(0, 10), 3)))
        cells.append(rng.choice("ab"))
        lines.append(", ".join(cells))
    return "\n".join(lines) + "\n", n_attrs


def test_crisp_and_fuzzy_agree_on_open_interval_support():
    rng = random.Random(99)
    for _ in range(50):
        text, n_attrs = _random_dataset(rng)
        data = parse_dataset(text)
        attr = f"x{rng.randrange(n_attrs)}"
        a = round(rng.uniform(0, 5), 3)
        c = round(a + rng.uniform(0.5, 5), 3)
        b = round(rng.uniform(a, c), 3)
        fuzzy_rule = Rule(
            0,
            (Condition(attr, FuzzyLabel(TriangularLabel(0, a, b, c))),),
            "a",
            "GENERATED RULE 0",
        )
        crisp_rule = interval_rule(0, attr, a, c, "a", lo_closed=False, hi_closed=False)
        fuzzy_bound = bind_rules(fuzzy_ruleset([fuzzy_rule]), data)
        crisp_bound = bind_rules(crisp_ruleset([crisp_rule]), data)
        assert contingency(fuzzy_bound.bound_rules[0], data) == contingency(
            crisp_bound.bound_rules[0], data
        )


def test_brute_force_equivalence_random_sessions():
    rng = random.Random(4242)
    for _ in range(40):
        text, n_attrs = _random_dataset(rng)
        data = parse_dataset(text)
        rules = []
        oracle_rules = []
        for rule_id in range(rng.randint(1, 5)):
            attr = f"x{rng.randrange(n_attrs)}"
            consequent = rng.choice("ab")
            if rng.random() < 0.5:
                a = round(rng.uniform(-2, 8), 3)
                c = round(a + rng.uniform(0.5, 6), 3)
                b = round(rng.uniform(a, c), 3)
                rules.append(
                    Rule(
                        rule_id,
                        (Condition(attr, FuzzyLabel(TriangularLabel(0, a, b, c))),),
                        consequent,
                        f"GENERATED RULE {rule_id}",
                    )
                )
                oracle_rules.append(([{"attr": attr, "triangle": (a, b, c)}], consequent))
            else:
                lo = round(rng.uniform(-2, 8), 3)
                hi = round(lo + rng.uniform(0.0, 6), 3)
                rules.append(interval_rule(rule_id, attr, lo, hi, consequent))
                oracle_rules.append(
                    ([{"attr": attr, "interval": (lo, hi, True, True)}], consequent)
                )
        ruleset = fuzzy_ruleset(rules)
        bound = bind_rules(ruleset, data)
        for bound_rule, (conds, consequent) in zip(bound.bound_rules, oracle_rules):
            got = contingency(bound_rule, data)
            want = oracle.count_table(conds, consequent, text)
            assert (got.tp, got.fp, got.fn, got.tn) == want
        matrix = coverage_matrix(bound, data)
        got_pairs = sorted(
            (e.rule_id, e.example_index, round(e.degree, 9), e.correct)
            for e in matrix.entries()
        )
        want_pairs = sorted(
            (r, i, round(degree, 9), correct)
            for r, i, degree, correct in oracle.coverage_pairs(oracle_rules, text)
        )
        assert got_pairs == want_pairs
