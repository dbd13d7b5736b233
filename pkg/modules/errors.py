# modules/errors.py

from typing import Optional, Sequence

import numpy as np


class EpnToolkitError(Exception):
    """
    Base class for every error raised by the toolkit.
    The command line maps subclasses of ValidationError to exit status 1
    and subclasses of NumericError to exit status 2.
    """

    exit_status = 1


class ValidationError(EpnToolkitError):
    """Bad input: dimensions, block lists, selectors, parameter ranges."""

    exit_status = 1


class InvalidDimensionError(ValidationError):
    pass


class InvalidBlockError(ValidationError):
    pass


class DimensionMismatchError(ValidationError):
    pass


class ClassificationRequiredError(ValidationError):
    """Raised when an operation needs the decomposition a matrix was assembled from."""


class ResourceGuardError(ValidationError):
    pass


class InvalidParameterError(ValidationError):
    pass


class UnknownSelectorError(ValidationError):
    """
    Raised when a decomposition selector does not resolve.

    :param message: Human-readable description.
    :param valid_selectors: Rendered list of selectors valid for the requested N.
    """

    def __init__(self, message: str, valid_selectors: Sequence[str] = ()):
        super().__init__(message)
        self.valid_selectors = list(valid_selectors)


class NumericError(EpnToolkitError):
    exit_status = 2


class NumericFailureError(NumericError):
    """
    Eigensolver or linear solver failure.

    :param message: Description of the failure.
    :param matrix: The matrix the solver was applied to.
    """

    def __init__(self, message: str, matrix: Optional[np.ndarray] = None):
        super().__init__(message)
        self.matrix = matrix


class CertificationError(NumericError):
    """
    A certificate could not be built.

    :param message: Description of the failure.
    :param diagnostics: Free-form numbers explaining where the construction broke down.
    """

    def __init__(self, message: str, diagnostics: Optional[dict] = None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class MetricUnavailableError(CertificationError):
    """No positive-definite metric exists: the spectrum is complex or degenerate."""
