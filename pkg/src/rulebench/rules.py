"""Rule-file parsing and binding.

Reads the output of fuzzy and crisp rule-discovery algorithms without
requiring any adaptation of their code: unknown lines inside a rule block
are skipped (and recorded), both "Consecuent:" and "Consequent:" spellings
are accepted, and the dialect comes from a user-editable algorithm
registry with a fuzzy fallback cue.

Grammar, one rule block per "GENERATED RULE k":

    @algorithm <name>
    Number of labels: <n>           (fuzzy files)
    GENERATED RULE 0
        Antecedent
            Variable <attr> = Label <k>  (<a> <b> <c>)   fuzzy label
            Variable <attr> = <value>                    categorical equality
            Variable <attr> in [<lo>, <hi>]              numeric interval
        Consecuent: <class>
"""

import re
from dataclasses import dataclass
from typing import Optional, Union

from .dataset import Dataset
from .errors import (
    DomainViolation,
    EmptyRuleSet,
    MalformedCondition,
    MissingAlgorithmHeader,
    TypeMismatch,
    UnknownAttribute,
    UnknownClass,
    UnknownDialect,
)


@dataclass(frozen=True)
class TriangularLabel:
    """Linguistic label with a triangular membership function (a, b, c)."""

    label_index: int
    a: float
    b: float
    c: float


@dataclass(frozen=True)
class FuzzyLabel:
    label: TriangularLabel


@dataclass(frozen=True)
class CategoricalEquals:
    value: str


@dataclass(frozen=True)
class NumericInterval:
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    def contains(self, x: float) -> bool:
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above and below


ConditionTest = Union[FuzzyLabel, CategoricalEquals, NumericInterval]


@dataclass(frozen=True)
class Condition:
    attribute_name: str
    test: ConditionTest


@dataclass(frozen=True)
class Rule:
    id: int
    antecedent: tuple[Condition, ...]
    consequent: str
    display_name: str


@dataclass(frozen=True)
class RuleSet:
    algorithm_name: str
    dialect: str  # "fuzzy" | "crisp"
    rules: tuple[Rule, ...]
    num_labels: Optional[int] = None  # fuzzy only
    skipped_lines: tuple[tuple[int, str], ...] = ()  # (line, text) pairs


class AlgorithmRegistry:
    """Maps algorithm names to dialects; lookups are case-insensitive.

    Registry files are line-oriented: ``<algorithm-name> <fuzzy|crisp>``,
    with '#' comments and blank lines ignored.
    """

    DEFAULT_ENTRIES = {
        "nmeef": "fuzzy",
        "nmeefsd": "fuzzy",
        "mesdif": "fuzzy",
        "sdiga": "fuzzy",
        "apriorisd": "crisp",
        "cn2sd": "crisp",
        "sdmap": "crisp",
    }

    def __init__(self, entries=None):
        self._entries = dict(self.DEFAULT_ENTRIES if entries is None else entries)

    @classmethod
    def from_text(cls, text: str) -> "AlgorithmRegistry":
        entries = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2 or parts[1].lower() not in ("fuzzy", "crisp"):
                raise ValueError(
                    f"bad registry entry on line {lineno}: {raw.strip()!r} "
                    "(expected '<algorithm-name> <fuzzy|crisp>')"
                )
            entries[parts[0].lower()] = parts[1].lower()
        return cls(entries)

    @classmethod
    def from_file(cls, path) -> "AlgorithmRegistry":
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    def dialect_of(self, algorithm_name: str) -> Optional[str]:
        return self._entries.get(algorithm_name.lower())

    def entries(self) -> dict[str, str]:
        return dict(self._entries)


_ALGORITHM_RE = re.compile(r"@algorithm\s+(\S+)\s*$", re.IGNORECASE)
_NUM_LABELS_RE = re.compile(r"number\s+of\s+labels\s*:\s*(\S+)\s*$", re.IGNORECASE)
_RULE_HEADER_RE = re.compile(r"generated\s+rule\s+(\d+)\s*$", re.IGNORECASE)
_ANTECEDENT_RE = re.compile(r"antecedent\s*$", re.IGNORECASE)
_CONSEQUENT_RE = re.compile(r"conse[cq]uent\s*:\s*(.*)$", re.IGNORECASE)
_FUZZY_COND_RE = re.compile(
    r"variable\s+(\S+)\s*=\s*label\s+(\d+)\s*"
    r"\(\s*([^\s()]+)\s+([^\s()]+)\s+([^\s()]+)\s*\)\s*$",
    re.IGNORECASE,
)
_LABEL_VALUE_RE = re.compile(r"label\b", re.IGNORECASE)
_INTERVAL_COND_RE = re.compile(
    r"variable\s+(\S+)\s+in\s+\[\s*([^,\]]+?)\s*,\s*([^,\]]+?)\s*\]\s*$",
    re.IGNORECASE,
)
_EQUALS_COND_RE = re.compile(r"variable\s+(\S+)\s*=\s*(.+?)\s*$", re.IGNORECASE)


def _parse_float(token, line):
    try:
        return float(token)
    except ValueError:
        raise MalformedCondition(f"bad number {token!r}", line=line) from None


def _parse_condition(line_text, lineno, dialect):
    match = _FUZZY_COND_RE.match(line_text)
    if match:
        if dialect == "crisp":
            raise MalformedCondition("fuzzy label in a crisp rule file", line=lineno)
        a = _parse_float(match.group(3), lineno)
        b = _parse_float(match.group(4), lineno)
        c = _parse_float(match.group(5), lineno)
        if not (a <= b <= c) or not a < c:
            raise MalformedCondition(
                f"label vertices must satisfy a <= b <= c and a < c, got ({a}, {b}, {c})",
                line=lineno,
            )
        label = TriangularLabel(label_index=int(match.group(2)), a=a, b=b, c=c)
        return Condition(attribute_name=match.group(1), test=FuzzyLabel(label))
    match = _INTERVAL_COND_RE.match(line_text)
    if match:
        lo = _parse_float(match.group(2), lineno)
        hi = _parse_float(match.group(3), lineno)
        if lo > hi:
            raise MalformedCondition(f"interval has lo > hi: [{lo}, {hi}]", line=lineno)
        return Condition(attribute_name=match.group(1), test=NumericInterval(lo=lo, hi=hi))
    match = _EQUALS_COND_RE.match(line_text)
    if match:
        value = match.group(2)
        if _LABEL_VALUE_RE.match(value):
            # "Label ..." that did not parse as a full label condition above.
            raise MalformedCondition(f"bad label condition: {line_text!r}", line=lineno)
        return Condition(attribute_name=match.group(1), test=CategoricalEquals(value))
    raise MalformedCondition(f"unparseable condition: {line_text!r}", line=lineno)


class _RuleBuilder:
    def __init__(self, rule_id, display_name, lineno):
        self.rule_id = rule_id
        self.display_name = display_name
        self.lineno = lineno
        self.conditions: list[Condition] = []
        self.consequent = None

    def add_condition(self, condition, lineno):
        if any(c.attribute_name == condition.attribute_name for c in self.conditions):
            raise MalformedCondition(
                f"rule {self.rule_id} tests attribute {condition.attribute_name!r} twice",
                line=lineno,
            )
        self.conditions.append(condition)

    def finish(self):
        if self.consequent is None:
            raise MalformedCondition(
                f"rule {self.rule_id} has no consequent", line=self.lineno
            )
        if not self.conditions:
            raise MalformedCondition(
                f"rule {self.rule_id} has an empty antecedent", line=self.lineno
            )
        return Rule(
            id=self.rule_id,
            antecedent=tuple(self.conditions),
            consequent=self.consequent,
            display_name=self.display_name,
        )


def parse_rules(text: str, registry: Optional[AlgorithmRegistry] = None) -> RuleSet:
    """Parse an algorithm output file into a RuleSet.

    The first non-blank line must be ``@algorithm <name>``. The dialect is
    resolved from the registry; unregistered algorithms fall back to fuzzy
    iff a "Number of labels:" line is present. Unknown lines inside rule
    blocks are skipped and recorded in RuleSet.skipped_lines.
    """
    if registry is None:
        registry = AlgorithmRegistry()

    algorithm = None
    num_labels = None
    raw_lines = text.splitlines()

    # First pass: algorithm name and the dialect cue, so condition parsing
    # below knows the dialect up front.
    for lineno, raw in enumerate(raw_lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if algorithm is None:
            match = _ALGORITHM_RE.match(line)
            if not match:
                raise MissingAlgorithmHeader(
                    "rules file must start with '@algorithm <name>'", line=lineno
                )
            algorithm = match.group(1)
            continue
        match = _NUM_LABELS_RE.match(line)
        if match:
            try:
                parsed = int(match.group(1))
            except ValueError:
                raise MalformedCondition(
                    f"bad label count {match.group(1)!r}", line=lineno
                ) from None
            if parsed < 2:
                raise MalformedCondition(
                    f"label count must be at least 2, got {parsed}", line=lineno
                )
            num_labels = parsed

    if algorithm is None:
        raise MissingAlgorithmHeader("rules file must start with '@algorithm <name>'")

    dialect = registry.dialect_of(algorithm)
    if dialect is None:
        if num_labels is not None:
            dialect = "fuzzy"
        else:
            raise UnknownDialect(
                f"algorithm {algorithm!r} is not in the registry and the file "
                "carries no 'Number of labels:' cue"
            )
    if dialect == "fuzzy" and num_labels is None:
        raise MalformedCondition(
            f"fuzzy algorithm {algorithm!r} requires a 'Number of labels:' line"
        )

    rules: list[Rule] = []
    skipped: list[tuple[int, str]] = []
    seen_ids: set[int] = set()
    builder = None
    past_header = False
    for lineno, raw in enumerate(raw_lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if not past_header:
            past_header = True  # the @algorithm line, validated above
            continue
        if _NUM_LABELS_RE.match(line):
            continue
        match = _RULE_HEADER_RE.match(line)
        if match:
            if builder is not None:
                rules.append(builder.finish())
            rule_id = int(match.group(1))
            if rule_id in seen_ids:
                raise MalformedCondition(f"duplicate rule id {rule_id}", line=lineno)
            seen_ids.add(rule_id)
            builder = _RuleBuilder(rule_id, line, lineno)
            continue
        if builder is None:
            skipped.append((lineno, line))
            continue
        if _ANTECEDENT_RE.match(line):
            continue
        match = _CONSEQUENT_RE.match(line)
        if match:
            value = match.group(1).strip()
            if not value:
                raise MalformedCondition(
                    f"rule {builder.rule_id} has an empty consequent", line=lineno
                )
            if builder.consequent is not None:
                raise MalformedCondition(
                    f"rule {builder.rule_id} has two consequents", line=lineno
                )
            builder.consequent = value
            continue
        if line.lower().startswith("variable"):
            builder.add_condition(_parse_condition(line, lineno, dialect), lineno)
            continue
        skipped.append((lineno, line))
    if builder is not None:
        rules.append(builder.finish())

    if not rules:
        raise EmptyRuleSet(f"no rule blocks in the {algorithm!r} rules file")

    return RuleSet(
        algorithm_name=algorithm,
        dialect=dialect,
        rules=tuple(rules),
        num_labels=num_labels if dialect == "fuzzy" else None,
        skipped_lines=tuple(skipped),
    )


# Binding: resolve rule conditions against a dataset schema.

@dataclass(frozen=True)
class BoundCondition:
    attribute_index: int
    attribute_name: str
    test: ConditionTest


@dataclass(frozen=True)
class BoundRule:
    rule: Rule
    conditions: tuple[BoundCondition, ...]
    consequent_index: int  # position in the target's declared values

    @property
    def id(self) -> int:
        return self.rule.id

    @property
    def consequent(self) -> str:
        return self.rule.consequent


@dataclass(frozen=True)
class BoundRuleSet:
    ruleset: RuleSet
    dataset: Dataset
    bound_rules: tuple[BoundRule, ...]


def _bind_condition(condition: Condition, data: Dataset) -> BoundCondition:
    try:
        index = data.attribute_index(condition.attribute_name)
    except KeyError:
        raise UnknownAttribute(
            f"condition names unknown attribute {condition.attribute_name!r}"
        ) from None
    attribute = data.attributes[index]
    if attribute.role != "input":
        raise UnknownAttribute(
            f"attribute {condition.attribute_name!r} is the output attribute; "
            "conditions must test input attributes"
        )
    test = condition.test
    if isinstance(test, CategoricalEquals):
        if attribute.is_numeric:
            raise TypeMismatch(
                f"categorical test on numeric attribute {attribute.name!r}"
            )
        if test.value not in attribute.values:
            raise DomainViolation(
                f"condition value {test.value!r} not in declared set "
                f"of attribute {attribute.name!r}"
            )
    elif not attribute.is_numeric:
        kind = "fuzzy label" if isinstance(test, FuzzyLabel) else "numeric interval"
        raise TypeMismatch(f"{kind} on categorical attribute {attribute.name!r}")
    return BoundCondition(attribute_index=index, attribute_name=attribute.name, test=test)


def bind_rules(rules: RuleSet, data: Dataset) -> BoundRuleSet:
    """Resolve every condition and consequent of a RuleSet against a Dataset."""
    bound = []
    target_values = data.class_values
    for rule in rules.rules:
        conditions = tuple(_bind_condition(c, data) for c in rule.antecedent)
        if rule.consequent not in target_values:
            raise UnknownClass(
                f"consequent {rule.consequent!r} of rule {rule.id} is not a value "
                f"of target attribute {data.target.name!r}"
            )
        bound.append(
            BoundRule(
                rule=rule,
                conditions=conditions,
                consequent_index=target_values.index(rule.consequent),
            )
        )
    return BoundRuleSet(ruleset=rules, dataset=data, bound_rules=tuple(bound))


def condition_text(condition: Condition) -> str:
    """Human-readable rendering of one condition."""
    test = condition.test
    if isinstance(test, FuzzyLabel):
        t = test.label
        return (
            f"{condition.attribute_name} = Label {t.label_index} "
            f"({t.a:g}, {t.b:g}, {t.c:g})"
        )
    if isinstance(test, CategoricalEquals):
        return f"{condition.attribute_name} = {test.value}"
    lo_b = "[" if test.lo_closed else "("
    hi_b = "]" if test.hi_closed else ")"
    return f"{condition.attribute_name} in {lo_b}{test.lo:g}, {test.hi:g}{hi_b}"


def rule_text(rule: Rule) -> str:
    """The whole antecedent as text: conditions joined with AND."""
    return " AND ".join(condition_text(c) for c in rule.antecedent)
