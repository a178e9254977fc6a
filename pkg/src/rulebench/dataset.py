"""KEEL-format dataset parsing.

Recognizes the @relation/@attribute/@inputs/@outputs/@data dialect with
real, integer, and categorical attributes. Parsed datasets are immutable
and safe to share across threads.
"""

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import (
    DomainViolation,
    MalformedHeader,
    NoCategoricalTarget,
    RowArityMismatch,
    SchemaMismatch,
)

Cell = Union[float, str, None]  # number, category string, or missing

_ATTRIBUTE_RE = re.compile(r"([^\s{]+)\s*(.*)$", re.DOTALL)
_NUMERIC_SPEC_RE = re.compile(r"(real|integer)\s*(?:\[(.*)\])?\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class Attribute:
    """One column of the schema."""

    name: str
    kind: str  # "real" | "integer" | "categorical"
    range: Optional[tuple[float, float]] = None  # numeric kinds, advisory
    values: Optional[tuple[str, ...]] = None  # categorical kinds, declared order
    role: str = "input"  # "input" | "output"

    @property
    def is_numeric(self):
        return self.kind in ("real", "integer")


@dataclass(frozen=True)
class Example:
    """One data row; values follow the attribute order."""

    values: tuple[Cell, ...]
    index: int


@dataclass(frozen=True)
class RangeWarning:
    """Numeric cell outside its attribute's declared range (accepted, flagged)."""

    row: int  # 0-based example index, stable under re-serialization
    attribute: str
    value: float


@dataclass(frozen=True)
class Dataset:
    relation_name: str
    attributes: tuple[Attribute, ...]
    examples: tuple[Example, ...]
    target_index: int
    range_warnings: tuple[RangeWarning, ...] = field(default=())

    @property
    def target(self) -> Attribute:
        return self.attributes[self.target_index]

    @property
    def class_values(self) -> tuple[str, ...]:
        return self.target.values

    def class_distribution(self) -> dict[str, int]:
        """Example count per target value, in declared value order."""
        counts = {value: 0 for value in self.target.values}
        for example in self.examples:
            label = example.values[self.target_index]
            if label is not None:
                counts[label] += 1
        return counts

    def attribute_index(self, name: str) -> int:
        for i, attribute in enumerate(self.attributes):
            if attribute.name == name:
                return i
        raise KeyError(name)


def _parse_number(token, context, line):
    try:
        return float(token)
    except ValueError:
        raise MalformedHeader(f"bad number {token!r} in {context}", line=line) from None


def _parse_attribute(rest, line):
    match = _ATTRIBUTE_RE.match(rest.strip())
    if not match or not match.group(1):
        raise MalformedHeader("bad @attribute syntax", line=line)
    name, spec = match.group(1), match.group(2).strip()
    if spec.startswith("{"):
        if not spec.endswith("}"):
            raise MalformedHeader(f"unterminated value set for attribute {name!r}", line=line)
        values = [v.strip() for v in spec[1:-1].split(",")]
        values = [v for v in values if v]
        if not values:
            raise MalformedHeader(f"attribute {name!r} declares no values", line=line)
        if len(set(values)) != len(values):
            raise MalformedHeader(f"attribute {name!r} declares duplicate values", line=line)
        return Attribute(name=name, kind="categorical", values=tuple(values))
    match = _NUMERIC_SPEC_RE.match(spec)
    if not match:
        raise MalformedHeader(f"bad attribute syntax for {name!r}: {spec!r}", line=line)
    kind = match.group(1).lower()
    bounds = None
    if match.group(2) is not None:
        parts = match.group(2).split(",")
        if len(parts) != 2:
            raise MalformedHeader(f"bad range for attribute {name!r}", line=line)
        lo = _parse_number(parts[0].strip(), f"range of {name!r}", line)
        hi = _parse_number(parts[1].strip(), f"range of {name!r}", line)
        if lo > hi:
            raise MalformedHeader(f"range of attribute {name!r} has min > max", line=line)
        bounds = (lo, hi)
    return Attribute(name=name, kind=kind, range=bounds)


def _parse_name_list(rest, attributes, directive, line):
    names = [n.strip() for n in rest.split(",") if n.strip()]
    known = {a.name for a in attributes}
    for name in names:
        if name not in known:
            raise MalformedHeader(f"{directive} names unknown attribute {name!r}", line=line)
    return names


def _parse_cell(token, attribute, line, row, warnings):
    token = token.strip()
    if token in ("?", ""):
        return None
    if attribute.kind == "categorical":
        if token not in attribute.values:
            raise DomainViolation(
                f"value {token!r} not in declared set of attribute {attribute.name!r}",
                line=line,
            )
        return token
    try:
        value = float(token)
    except ValueError:
        raise DomainViolation(
            f"value {token!r} is not numeric for attribute {attribute.name!r}",
            line=line,
        ) from None
    if attribute.range is not None and not attribute.range[0] <= value <= attribute.range[1]:
        warnings.append(RangeWarning(row=row, attribute=attribute.name, value=value))
    return value


def parse_dataset(text: str) -> Dataset:
    """Parse a full KEEL .dat file into a Dataset.

    Header directives are recognized case-insensitively; '%' lines are
    comments. Out-of-range numeric cells are accepted and recorded in
    Dataset.range_warnings. Missing cells are "?" or empty.
    """
    relation = None
    attributes: list[Attribute] = []
    inputs = None
    outputs = None
    examples: list[Example] = []
    warnings: list[RangeWarning] = []
    in_data = False
    saw_data = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        lowered = line.lower()
        if lowered.startswith("@"):
            directive, _, rest = line.partition(" ")
            directive = directive.lower()
            if in_data:
                raise MalformedHeader(f"directive {directive!r} after @data", line=lineno)
            if directive == "@relation":
                if relation is not None:
                    raise MalformedHeader("duplicate @relation", line=lineno)
                relation = rest.strip()
                if not relation:
                    raise MalformedHeader("@relation without a name", line=lineno)
            elif directive == "@attribute":
                attribute = _parse_attribute(rest, lineno)
                if any(a.name == attribute.name for a in attributes):
                    raise MalformedHeader(
                        f"duplicate attribute name {attribute.name!r}", line=lineno
                    )
                attributes.append(attribute)
            elif directive == "@inputs":
                inputs = _parse_name_list(rest, attributes, "@inputs", lineno)
            elif directive == "@outputs":
                outputs = _parse_name_list(rest, attributes, "@outputs", lineno)
                if len(outputs) != 1:
                    raise MalformedHeader("@outputs must name exactly one attribute", line=lineno)
            elif directive == "@data":
                if not attributes:
                    raise MalformedHeader(
                        "@data before any @attribute declaration", line=lineno
                    )
                saw_data = True
                in_data = True
            else:
                raise MalformedHeader(f"unknown directive {directive!r}", line=lineno)
            continue
        if not in_data:
            raise MalformedHeader(f"unexpected text before @data: {line!r}", line=lineno)
        cells = line.split(",")
        if len(cells) != len(attributes):
            raise RowArityMismatch(
                f"row has {len(cells)} cells, schema has {len(attributes)} attributes",
                line=lineno,
            )
        values = tuple(
            _parse_cell(cell, attribute, lineno, len(examples), warnings)
            for cell, attribute in zip(cells, attributes)
        )
        examples.append(Example(values=values, index=len(examples)))

    if relation is None:
        raise MalformedHeader("missing @relation")
    if not attributes:
        raise MalformedHeader("no @attribute declarations")
    if not saw_data:
        raise MalformedHeader("missing @data section")

    if outputs is not None:
        target_index = next(i for i, a in enumerate(attributes) if a.name == outputs[0])
    else:
        target_index = len(attributes) - 1
    if inputs is not None and attributes[target_index].name in inputs:
        raise MalformedHeader(
            f"attribute {attributes[target_index].name!r} listed as both input and output"
        )

    target = attributes[target_index]
    if target.kind != "categorical":
        raise NoCategoricalTarget(f"output attribute {target.name!r} is {target.kind}")
    attributes[target_index] = Attribute(
        name=target.name, kind=target.kind, values=target.values, role="output"
    )

    return Dataset(
        relation_name=relation,
        attributes=tuple(attributes),
        examples=tuple(examples),
        target_index=target_index,
        range_warnings=tuple(warnings),
    )


def _schema(dataset: Dataset):
    return tuple(
        (a.name, a.kind, a.range, a.values, a.role) for a in dataset.attributes
    )


def parse_dataset_pair(train_text: str, test_text: str) -> Dataset:
    """Parse train and test files and concatenate their rows.

    Schemas must match exactly: names, kinds, ranges, roles, and the
    declared order of categorical values.
    """
    train = parse_dataset(train_text)
    test = parse_dataset(test_text)
    if _schema(train) != _schema(test):
        raise SchemaMismatch(
            "train and test files declare different attribute schemas"
        )
    examples = list(train.examples)
    for example in test.examples:
        examples.append(Example(values=example.values, index=len(examples)))
    offset = len(train.examples)
    shifted = tuple(
        RangeWarning(row=w.row + offset, attribute=w.attribute, value=w.value)
        for w in test.range_warnings
    )
    return Dataset(
        relation_name=train.relation_name,
        attributes=train.attributes,
        examples=tuple(examples),
        target_index=train.target_index,
        range_warnings=train.range_warnings + shifted,
    )


def _format_value(value: Cell, attribute: Attribute) -> str:
    if value is None:
        return "?"
    if attribute.kind == "categorical":
        return value
    if attribute.kind == "integer" and float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def serialize_dataset(dataset: Dataset) -> str:
    """Render a Dataset back to KEEL text; re-parsing yields an equal Dataset."""
    lines = [f"@relation {dataset.relation_name}"]
    for attribute in dataset.attributes:
        if attribute.kind == "categorical":
            lines.append(f"@attribute {attribute.name} {{{', '.join(attribute.values)}}}")
        elif attribute.range is not None:
            lo, hi = attribute.range
            lines.append(f"@attribute {attribute.name} {attribute.kind} [{lo!r}, {hi!r}]")
        else:
            lines.append(f"@attribute {attribute.name} {attribute.kind}")
    input_names = [a.name for i, a in enumerate(dataset.attributes) if i != dataset.target_index]
    if input_names:
        lines.append(f"@inputs {', '.join(input_names)}")
    lines.append(f"@outputs {dataset.target.name}")
    lines.append("@data")
    for example in dataset.examples:
        lines.append(
            ", ".join(
                _format_value(value, attribute)
                for value, attribute in zip(example.values, dataset.attributes)
            )
        )
    return "\n".join(lines) + "\n"
