"""Workbench for evaluating supervised descriptive rules against
class-labeled datasets: parsers, quality measures, coverage analysis,
report exports, and a local HTTP service.
"""

from .dataset import (
    Attribute,
    Dataset,
    Example,
    RangeWarning,
    parse_dataset,
    parse_dataset_pair,
    serialize_dataset,
)
from .errors import (
    ArchiveWriteFailure,
    DomainViolation,
    EmptyRuleSet,
    MalformedCondition,
    MalformedHeader,
    MissingAlgorithmHeader,
    NoCategoricalTarget,
    ParseError,
    RowArityMismatch,
    RulebenchError,
    SchemaMismatch,
    TypeMismatch,
    UnknownAttribute,
    UnknownClass,
    UnknownDialect,
)
from .evaluate import (
    ContingencyTable,
    CoverageEntry,
    CoverageMatrix,
    EvaluationResult,
    QualityMeasures,
    RuleEvaluation,
    contingency,
    coverage_matrix,
    covers,
    evaluate_session,
    firing_degree,
    measures,
    membership,
)
from .report import (
    PyramidPlotData,
    ScatterPlotData,
    coverage_csv,
    export_json,
    export_report_zip,
    measures_csv,
    pyramid_data,
    report_html,
    result_document,
    scatter_data,
)
from .rules import (
    AlgorithmRegistry,
    BoundRuleSet,
    CategoricalEquals,
    Condition,
    FuzzyLabel,
    NumericInterval,
    Rule,
    RuleSet,
    TriangularLabel,
    bind_rules,
    parse_rules,
)
from .server import make_server

__version__ = "0.1.0"

__all__ = [
    "AlgorithmRegistry",
    "ArchiveWriteFailure",
    "Attribute",
    "BoundRuleSet",
    "CategoricalEquals",
    "Condition",
    "ContingencyTable",
    "CoverageEntry",
    "CoverageMatrix",
    "Dataset",
    "DomainViolation",
    "EmptyRuleSet",
    "EvaluationResult",
    "Example",
    "FuzzyLabel",
    "MalformedCondition",
    "MalformedHeader",
    "MissingAlgorithmHeader",
    "NoCategoricalTarget",
    "NumericInterval",
    "ParseError",
    "PyramidPlotData",
    "QualityMeasures",
    "RangeWarning",
    "RowArityMismatch",
    "Rule",
    "RuleEvaluation",
    "RuleSet",
    "RulebenchError",
    "ScatterPlotData",
    "SchemaMismatch",
    "TriangularLabel",
    "TypeMismatch",
    "UnknownAttribute",
    "UnknownClass",
    "UnknownDialect",
    "bind_rules",
    "contingency",
    "coverage_csv",
    "coverage_matrix",
    "covers",
    "evaluate_session",
    "export_json",
    "export_report_zip",
    "firing_degree",
    "make_server",
    "measures",
    "measures_csv",
    "membership",
    "parse_dataset",
    "parse_dataset_pair",
    "parse_rules",
    "pyramid_data",
    "report_html",
    "result_document",
    "scatter_data",
    "serialize_dataset",
    "__version__",
]
