"""Parsing and validation of two-column paired AHI data.

Canonical input is delimited text (CSV or TSV): one row per subject, column
one the reference AHI, column two the AHI measured by the device under test.
Values are non-negative decimal reals with "." as the decimal separator; a
decimal comma is rejected rather than guessed at.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    ColumnCount,
    DataWarning,
    EmptyInput,
    NegativeValue,
    NonNumeric,
    TooFewRows,
)

#: AHI above this is physiologically implausible; warned about, not rejected.
SANITY_BOUND = 200.0

#: Minimum number of rows parse_pairs accepts.
MIN_ROWS = 3


@dataclass(frozen=True)
class PairedSample:
    """Validated parallel vectors of reference and measured AHI values.

    ``labels`` holds optional per-row identifiers (opaque strings).
    ``column_names`` names the two data columns for display, taken from the
    CSV header when one is present.
    """

    reference: np.ndarray
    measured: np.ndarray
    labels: tuple[str, ...] | None = None
    column_names: tuple[str, str] = ("reference", "measured")

    def __post_init__(self):
        ref = np.asarray(self.reference, dtype=np.float64)
        res = np.asarray(self.measured, dtype=np.float64)
        if ref.ndim != 1 or res.ndim != 1:
            raise ValueError("reference and measured must be 1-dimensional")
        if len(ref) != len(res):
            raise ValueError(
                f"length mismatch: {len(ref)} reference vs {len(res)} measured"
            )
        if len(ref) == 0:
            raise ValueError("sample is empty")
        for name, vec in (("reference", ref), ("measured", res)):
            if not np.all(np.isfinite(vec)):
                raise ValueError(f"{name} values must be finite")
            if np.any(vec < 0):
                raise ValueError(f"{name} values must be non-negative")
        if self.labels is not None:
            if len(self.labels) != len(ref):
                raise ValueError("labels length does not match data length")
            object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.column_names) != 2 or not all(
            isinstance(c, str) and c for c in self.column_names
        ):
            raise ValueError("column_names must be two non-empty strings")
        ref.flags.writeable = False
        res.flags.writeable = False
        object.__setattr__(self, "reference", ref)
        object.__setattr__(self, "measured", res)
        object.__setattr__(self, "column_names", tuple(self.column_names))

    @property
    def n(self) -> int:
        return len(self.reference)

    def differences(self) -> np.ndarray:
        """measured - reference, the device-error sign convention used everywhere."""
        return self.measured - self.reference


def _parse_cell(cell: str, row: int) -> float:
    text = cell.strip()
    try:
        value = float(text)
    except ValueError:
        raise NonNumeric(f"row {row}: cannot parse {text!r} as a number", row=row) from None
    if not math.isfinite(value):
        raise NonNumeric(f"row {row}: {text!r} is not a finite number", row=row)
    return value


def _looks_numeric(cell: str) -> bool:
    try:
        float(cell.strip())
    except ValueError:
        return False
    return True


def _sniff_delimiter(line: str) -> str:
    return "\t" if "\t" in line else ","


def parse_pairs(
    raw: str,
    *,
    delimiter: str | None = ",",
    header: bool | str = "auto",
    swap_columns: bool = False,
) -> PairedSample:
    """Parse delimited text into a :class:`PairedSample`.

    Parameters
    ----------
    raw : str
        The document text (UTF-8 already decoded).
    delimiter : str or None
        Cell separator; ``None`` sniffs tab-vs-comma from the first data line.
    header : bool or "auto"
        Whether the first non-blank row is a header.  ``"auto"`` treats it as
        a header iff either cell fails to parse as a number, so an all-numeric
        first row is never swallowed.
    swap_columns : bool
        If true, column one is the measured value and column two the reference.

    Raises
    ------
    EmptyInput, ColumnCount, NonNumeric, NegativeValue, TooFewRows
        All with 1-based row numbers where applicable.
    """
    # (1-based physical row, line) with blank lines skipped
    rows = [
        (i, line)
        for i, line in enumerate(raw.splitlines(), start=1)
        if line.strip()
    ]
    if not rows:
        raise EmptyInput("no data rows found")

    if delimiter is None:
        delimiter = _sniff_delimiter(rows[0][1])

    first_cells = [c.strip() for c in rows[0][1].split(delimiter)]
    if header == "auto":
        has_header = not all(_looks_numeric(c) for c in first_cells[:2])
    else:
        has_header = bool(header)
    column_names = ("reference", "measured")
    if has_header:
        if len(first_cells) == 2 and all(first_cells):
            column_names = (first_cells[0], first_cells[1])
            if swap_columns:
                column_names = (column_names[1], column_names[0])
        rows = rows[1:]
    if not rows:
        raise EmptyInput("no data rows found below the header")

    reference: list[float] = []
    measured: list[float] = []
    for rownum, line in rows:
        cells = line.split(delimiter)
        if len(cells) != 2:
            raise ColumnCount(
                f"row {rownum}: expected 2 columns, found {len(cells)}", row=rownum
            )
        a = _parse_cell(cells[0], rownum)
        b = _parse_cell(cells[1], rownum)
        if swap_columns:
            a, b = b, a
        for value in (a, b):
            if value < 0:
                raise NegativeValue(
                    f"row {rownum}: AHI must be non-negative, got {value}", row=rownum
                )
            if value > SANITY_BOUND:
                warnings.warn(
                    f"row {rownum}: AHI {value} exceeds {SANITY_BOUND} events/hour, "
                    "which is physiologically implausible",
                    DataWarning,
                    stacklevel=2,
                )
        reference.append(a)
        measured.append(b)

    if len(reference) < MIN_ROWS:
        raise TooFewRows(
            f"need at least {MIN_ROWS} data rows, found {len(reference)}"
        )
    return PairedSample(
        np.array(reference), np.array(measured), column_names=column_names
    )


def to_csv(sample: PairedSample, *, delimiter: str = ",") -> str:
    """Serialize a sample back to delimited text, losslessly (repr floats)."""
    lines = [sample.column_names[0] + delimiter + sample.column_names[1]]
    for r, m in zip(sample.reference, sample.measured):
        lines.append(f"{float(r)!r}{delimiter}{float(m)!r}")
    return "\n".join(lines) + "\n"
