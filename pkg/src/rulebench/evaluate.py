"""Rule evaluation: membership degrees, firing, coverage, contingency
tables, and quality measures.

Conventions (all divide-by-zero cases are total):
  - fuzzy conjunction uses the minimum t-norm;
  - a rule covers an example iff its firing degree is strictly positive;
  - contingency counts are crisp integers even for fuzzy rules;
  - a condition on a missing cell contributes degree 0;
  - tpr = 0 when there are no positives, fpr = 0 when there are no
    negatives, confidence = 0 when nothing is covered, and the normalized
    unusualness is 0.5 when the class split is degenerate.
"""

from dataclasses import dataclass
from typing import Optional

from .dataset import Dataset, Example
from .rules import (
    BoundRule,
    BoundRuleSet,
    CategoricalEquals,
    FuzzyLabel,
    NumericInterval,
    Rule,
    RuleSet,
    TriangularLabel,
    bind_rules,
    rule_text,
)


def membership(x: float, label: TriangularLabel) -> float:
    """Degree of x in the triangular label (a, b, c); 1 at the peak b,
    0 outside the open support (a, c)."""
    if x == label.b:
        return 1.0
    if x <= label.a or x >= label.c:
        return 0.0
    if x < label.b:
        return (x - label.a) / (label.b - label.a)
    return (label.c - x) / (label.c - label.b)


def _condition_degree(test, cell) -> float:
    if cell is None:
        return 0.0
    if isinstance(test, FuzzyLabel):
        return membership(cell, test.label)
    if isinstance(test, CategoricalEquals):
        return 1.0 if cell == test.value else 0.0
    return 1.0 if test.contains(cell) else 0.0


def firing_degree(rule: BoundRule, example: Example) -> float:
    """Conjunction degree of the rule on the example: minimum over
    condition degrees. Crisp conditions contribute 0 or 1, so the minimum
    reduces to all-conditions-hold for crisp rules."""
    degree = 1.0
    for condition in rule.conditions:
        degree = min(degree, _condition_degree(condition.test, example.values[condition.attribute_index]))
        if degree == 0.0:
            return 0.0
    return degree


def covers(rule: BoundRule, example: Example) -> bool:
    """True iff the firing degree is strictly positive."""
    return firing_degree(rule, example) > 0.0


@dataclass(frozen=True)
class ContingencyTable:
    """Coverage-by-class partition of the dataset for one rule."""

    tp: int  # covered, class matches the consequent
    fp: int  # covered, class differs
    fn: int  # not covered, class matches
    tn: int  # not covered, class differs

    @property
    def positives(self) -> int:
        return self.tp + self.fn

    @property
    def negatives(self) -> int:
        return self.fp + self.tn

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class QualityMeasures:
    tpr: float
    fpr: float
    confidence: float
    wracc_raw: float
    wracc_norm: float


def contingency(rule: BoundRule, data: Dataset) -> ContingencyTable:
    """Count covered/uncovered examples split by consequent class.

    Degrees affect only whether an example is covered, never fractional
    counts.
    """
    tp = fp = fn = tn = 0
    target_index = data.target_index
    for example in data.examples:
        covered = firing_degree(rule, example) > 0.0
        positive = example.values[target_index] == rule.consequent
        if covered and positive:
            tp += 1
        elif covered:
            fp += 1
        elif positive:
            fn += 1
        else:
            tn += 1
    return ContingencyTable(tp=tp, fp=fp, fn=fn, tn=tn)


def measures(table: ContingencyTable) -> QualityMeasures:
    """Derive the four quality measures from a contingency table.

    The raw unusualness is coverage times the gap between rule precision
    and the class prior; its normalized form maps the analytic range
    [-P*N/T^2, P*N/T^2] affinely onto [0, 1].
    """
    positives = table.positives
    negatives = table.negatives
    total = table.total
    covered = table.tp + table.fp

    tpr = table.tp / positives if positives else 0.0
    fpr = table.fp / negatives if negatives else 0.0
    confidence = table.tp / covered if covered else 0.0
    if covered:
        wracc_raw = (covered / total) * (table.tp / covered - positives / total)
    else:
        wracc_raw = 0.0
    if positives == 0 or negatives == 0:
        wracc_norm = 0.5
    else:
        extreme = positives * negatives / total**2
        wracc_norm = (wracc_raw + extreme) / (2.0 * extreme)
        wracc_norm = min(1.0, max(0.0, wracc_norm))
    return QualityMeasures(
        tpr=tpr,
        fpr=fpr,
        confidence=confidence,
        wracc_raw=wracc_raw,
        wracc_norm=wracc_norm,
    )


@dataclass(frozen=True)
class CoverageEntry:
    """One covered (rule, example) pair; degree is 1 for crisp rules."""

    rule_id: int
    example_index: int
    degree: float
    correct: bool


@dataclass(frozen=True)
class CoverageMatrix:
    """The same covered pairs indexed both ways.

    by_example and by_rule hold exactly the same entries; keys with no
    covered pairs are absent.
    """

    by_example: dict[int, tuple[CoverageEntry, ...]]
    by_rule: dict[int, tuple[CoverageEntry, ...]]

    def entries(self) -> list[CoverageEntry]:
        """All entries, ordered by (example_index, rule_id)."""
        flat = [entry for group in self.by_example.values() for entry in group]
        flat.sort(key=lambda e: (e.example_index, e.rule_id))
        return flat


def coverage_matrix(rules: BoundRuleSet, data: Dataset) -> CoverageMatrix:
    """All (rule, example) pairs with positive firing degree, both views."""
    by_example: dict[int, list[CoverageEntry]] = {}
    by_rule: dict[int, list[CoverageEntry]] = {}
    target_index = data.target_index
    for rule in rules.bound_rules:
        for example in data.examples:
            degree = firing_degree(rule, example)
            if degree <= 0.0:
                continue
            entry = CoverageEntry(
                rule_id=rule.id,
                example_index=example.index,
                degree=degree,
                correct=example.values[target_index] == rule.consequent,
            )
            by_example.setdefault(example.index, []).append(entry)
            by_rule.setdefault(rule.id, []).append(entry)
    return CoverageMatrix(
        by_example={k: tuple(v) for k, v in sorted(by_example.items())},
        by_rule={k: tuple(v) for k, v in sorted(by_rule.items())},
    )


@dataclass(frozen=True)
class DatasetSummary:
    relation_name: str
    example_count: int
    target_name: str
    class_distribution: dict[str, int]


@dataclass(frozen=True)
class RuleEvaluation:
    rule: Rule
    antecedent_text: str
    table: ContingencyTable
    quality: QualityMeasures


@dataclass(frozen=True)
class EvaluationResult:
    """Everything downstream consumers need: per-rule tables and measures,
    the coverage matrix, and a dataset summary."""

    dataset: Dataset
    ruleset: RuleSet
    bound: BoundRuleSet
    summary: DatasetSummary
    rules: tuple[RuleEvaluation, ...]
    coverage: CoverageMatrix

    @property
    def dialect(self) -> str:
        return self.ruleset.dialect

    def rule_evaluation(self, rule_id: int) -> Optional[RuleEvaluation]:
        for evaluation in self.rules:
            if evaluation.rule.id == rule_id:
                return evaluation
        return None


def evaluate_session(data: Dataset, rules: RuleSet) -> EvaluationResult:
    """Bind the rules to the dataset and evaluate every rule.

    Deterministic for fixed inputs: rules are reported in ascending id
    order. Binding errors propagate unchanged.
    """
    bound = bind_rules(rules, data)
    evaluations = []
    for bound_rule in sorted(bound.bound_rules, key=lambda r: r.id):
        table = contingency(bound_rule, data)
        evaluations.append(
            RuleEvaluation(
                rule=bound_rule.rule,
                antecedent_text=rule_text(bound_rule.rule),
                table=table,
                quality=measures(table),
            )
        )
    return EvaluationResult(
        dataset=data,
        ruleset=rules,
        bound=bound,
        summary=DatasetSummary(
            relation_name=data.relation_name,
            example_count=len(data.examples),
            target_name=data.target.name,
            class_distribution=data.class_distribution(),
        ),
        rules=tuple(evaluations),
        coverage=coverage_matrix(bound, data),
    )
