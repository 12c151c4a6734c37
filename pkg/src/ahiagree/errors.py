"""Exception hierarchy and the explicit Undefined marker.

Statistics that cannot be computed for a given sample (a class absent from
the data, a zero denominator, ...) are reported as :class:`Undefined` values
rather than NaN or silent zeros, so reports can distinguish "not computable"
from "computed as zero".
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Undefined:
    """Marker for a statistic that has no defined value on this input."""

    reason: str

    def __bool__(self) -> bool:
        return False


class AhiAgreeError(Exception):
    """Base class for all errors raised by this package."""


class InputError(AhiAgreeError):
    """Invalid paired-data input. ``row`` is 1-based when applicable."""

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class EmptyInput(InputError):
    pass


class ColumnCount(InputError):
    pass


class NonNumeric(InputError):
    pass


class NegativeValue(InputError):
    pass


class TooFewRows(InputError):
    pass


class ConfigError(AhiAgreeError):
    """Invalid analysis configuration (thresholds, ranking extremes, ...)."""


class AnalysisError(AhiAgreeError):
    """A single analysis cannot run on this sample.

    The report layer degrades the affected section to Undefined instead of
    failing the whole bundle.
    """


class ZeroVariance(AnalysisError):
    pass


class Degenerate(AnalysisError):
    pass


class AllZeroDifferences(AnalysisError):
    pass


class AllExcluded(AnalysisError):
    pass


class ClassAbsent(AnalysisError):
    pass


class SingleClass(AnalysisError):
    pass


class DataWarning(UserWarning):
    """Non-fatal data oddity (implausibly large AHI, excluded pairs, ...)."""
