"""Exception hierarchy shared by the parsers, the binder, and the exporters."""


class RulebenchError(Exception):
    """Base class for all rulebench errors."""


class ParseError(RulebenchError):
    """Input-file error, optionally pinned to a 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)


# Dataset file errors.

class MalformedHeader(ParseError):
    """Unknown directive or bad syntax in a dataset header."""


class RowArityMismatch(ParseError):
    """Data row whose cell count differs from the attribute count."""


class DomainViolation(ParseError):
    """Cell or condition value outside its attribute's declared domain."""


class NoCategoricalTarget(ParseError):
    """The output attribute is numeric; rule consequents need class labels."""


class SchemaMismatch(RulebenchError):
    """Train and test files declare different attribute schemas."""


# Rules file errors.

class MissingAlgorithmHeader(ParseError):
    """Rules file does not start with an @algorithm line."""


class UnknownDialect(RulebenchError):
    """Algorithm not in the registry and no dialect cue in the file."""


class MalformedCondition(ParseError):
    """Unparseable or contradictory rule content."""


class EmptyRuleSet(RulebenchError):
    """Rules file contains no rule blocks."""


# Binding errors.

class UnknownAttribute(RulebenchError):
    """Condition names an attribute the dataset does not provide as input."""


class UnknownClass(RulebenchError):
    """Rule consequent is not a value of the target attribute."""


class TypeMismatch(RulebenchError):
    """Condition test kind is incompatible with the attribute kind."""


# Export errors.

class ArchiveWriteFailure(RulebenchError):
    """Report archive could not be written."""
