"""Exception hierarchy shared across the package.

CLI exit codes: ValidationError and DataError map to 2, IdentifiabilityError
to 3, anything else escaping to 1.
"""

from __future__ import annotations


class HierMarketError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(HierMarketError, ValueError):
    """A configuration document or parameter set failed validation.

    Carries an optional source line for line-anchored CLI messages.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DataError(HierMarketError, ValueError):
    """Input data (panel, CSV, series) is malformed or degenerate."""


class ShapeError(HierMarketError, ValueError):
    """Array dimensions are inconsistent with the declared model sizes."""


class DomainError(HierMarketError, ValueError):
    """A numeric parameter lies outside its admissible domain."""


class SingularDataError(DataError):
    """A required variance or design quantity is exactly degenerate."""


class IdentifiabilityError(HierMarketError, ValueError):
    """A regression design cannot identify the requested coefficients.

    ``blocks`` names the collinear or missing regressor blocks.
    """

    def __init__(self, message: str, blocks: list[str] | None = None):
        self.blocks = blocks or []
        super().__init__(message)


class SampleSizeError(DataError):
    """Too few observations for the requested estimator."""


class UndefinedVarianceError(DataError):
    """A statistic requiring nonzero variance was applied to a constant series."""
