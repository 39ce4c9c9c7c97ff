"""
Exception hierarchy
===================
Every error raised on purpose by the package derives from
ChainAlgebraError, so callers (the CLI in particular) can tell library
failures apart from programming errors. Each subclass also derives from
the closest builtin so plain ``except ValueError`` keeps working.
"""


class ChainAlgebraError(Exception):
    """Base class for all package errors."""


class DomainError(ChainAlgebraError, ValueError):
    """An element, tuple or code lies outside the chain it is used with."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class ConstructionError(ChainAlgebraError, ValueError):
    """A value object (chain, table, ordering, g-map) failed validation."""


class PreconditionError(ChainAlgebraError, ValueError):
    """An operation was called on an input that lacks a required property."""

    def __init__(self, message, property_name=None):
        super().__init__(message)
        self.property_name = property_name


class UnsupportedArityError(PreconditionError):
    """The renderer only draws binary and ternary operations."""


class StructureError(ChainAlgebraError, ValueError):
    """A derived relation is not a linear order."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ResourceGuardError(ChainAlgebraError, RuntimeError):
    """A scan would exceed its configured size guard."""

    def __init__(self, message, estimate=None, bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.bound = bound


class NopParseError(ChainAlgebraError, ValueError):
    """A NOP file could not be parsed; line and column are 1-based."""

    def __init__(self, message, line=None, column=None):
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(location + message)
        self.line = line
        self.column = column


class UnknownNameError(ChainAlgebraError, LookupError):
    """A gallery entry or suite name is not registered."""

    def __init__(self, kind, name, choices):
        self.kind = kind
        self.name = name
        self.choices = tuple(choices)
        super().__init__(
            f"unknown {kind} {name!r}; valid names: {', '.join(self.choices)}"
        )

    def __str__(self):
        # LookupError would otherwise repr() the message like KeyError does
        return self.args[0]


class ConfigError(ChainAlgebraError, ValueError):
    """The YAML configuration holds an invalid value."""
