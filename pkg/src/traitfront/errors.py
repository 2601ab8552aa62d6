"""Shared exception types with the exit-code contract used by the CLI."""


class TraitfrontError(Exception):
    """Base class for all package errors."""

    exit_code = 3


class ConfigError(TraitfrontError):
    """Invalid configuration: unknown/missing key or violated constraint."""

    exit_code = 2


class DomainError(TraitfrontError):
    """Arguments outside a function's mathematical domain."""

    exit_code = 2


class NumericalError(TraitfrontError):
    """Instability, NaN/Inf, or non-convergence in a solver."""

    exit_code = 3


class FrontOutOfDomainError(NumericalError):
    """A requested level crossing does not exist inside the grid.

    Usually means the domain is too small for the requested final time; the
    configuration guard exists to catch this before the run.
    """
