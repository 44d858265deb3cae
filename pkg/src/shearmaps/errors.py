"""Typed exceptions shared across the package."""


class ShearmapsError(Exception):
    """Base class for all package errors."""


class DomainError(ShearmapsError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NormalizationError(ShearmapsError, ValueError):
    """A disk function violates the normalization g(0) = g'(0) = 0."""


class UnsupportedRepresentationError(ShearmapsError, TypeError):
    """A coefficient-based operation was applied to a closed-form function
    without coefficient access."""


class OverflowRefusalError(ShearmapsError, ArithmeticError):
    """Plain evaluation was refused because the value's log-magnitude exceeds
    the double-precision overflow threshold."""


class ConfigError(ShearmapsError, ValueError):
    """A scan or CLI configuration is invalid."""


class UncertifiedMapError(ShearmapsError, ValueError):
    """An operation requiring a certified map received an uncertified one."""
