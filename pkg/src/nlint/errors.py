"""Exception and warning types shared across the toolkit."""

from __future__ import annotations


class RecordLengthError(ValueError):
    """A fixed-width line-list record does not have the required length."""


class FieldParseError(ValueError):
    """A numeric field inside a fixed-width record could not be decoded."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateError(ValueError):
    """A parameter combination makes the requested quantity undefined."""


class FitError(RuntimeError):
    """A fringe model fit failed to converge or produced an unusable result."""


class ConfigError(ValueError):
    """A run configuration is malformed; the message carries the field path."""


class AmbiguityWarning(UserWarning):
    """A visibility inversion landed where both algebraic roots are plausible."""


class ModelRegimeWarning(UserWarning):
    """Parameters strain the small-signal approximations of the model."""
