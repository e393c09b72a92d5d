"""CSV ingestion and calendar plumbing for series files.

Reads FRED-style CSVs (header row, ISO-8601 date column, decimal
values), tolerates missing-value markers only at the ends of the span,
and infers the calendar (annual/quarterly/monthly/daily) from the date
spacing unless told otherwise.
"""

from __future__ import annotations

import csv
import datetime as dt
import warnings
from dataclasses import dataclass

import numpy as np

from .series import (
    DataError,
    DateIndex,
    ParseError,
    PeriodIndex,
    TimeSeries,
    UnsupportedError,
)

__all__ = ["CsvSpec", "read_csv", "write_csv", "monthly_to_quarterly"]

_FREQ_NAMES = {"annual": 1, "quarterly": 4, "monthly": 12}


@dataclass(frozen=True)
class CsvSpec:
    """How to interpret a series CSV.

    value_column None means the second column; frequency "auto" infers
    the calendar from the date spacing. Rows whose value matches a
    missing marker are dropped at the ends of the span only.
    """

    date_column: str = "DATE"
    value_column: str | None = None
    frequency: str = "auto"
    missing_markers: frozenset[str] = frozenset({".", "NA", ""})


def _infer_frequency(dates: list[dt.date]) -> int | None:
    """Periods per year from the spacing, or None for daily/irregular."""
    if len(dates) < 2:
        return None
    months = [d.year * 12 + d.month for d in dates]
    steps = {b - a for a, b in zip(months, months[1:])}
    if len(steps) != 1:
        return None
    if not all(d.day == dates[0].day for d in dates):
        return None
    step = steps.pop()
    return {12: 1, 3: 4, 1: 12}.get(step)


def _period_start(date: dt.date, freq: int) -> tuple[int, int]:
    if freq == 1:
        return date.year, 1
    if freq == 4:
        return date.year, (date.month - 1) // 3 + 1
    return date.year, date.month


def read_csv(path: str, spec: CsvSpec | None = None) -> TimeSeries:
    """Parse a series file; interior gaps are an error, end gaps are trimmed."""
    spec = spec or CsvSpec()
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        folded = [h.casefold() for h in header]
        if spec.date_column.casefold() not in folded:
            raise ParseError(f"{path}: no {spec.date_column!r} column in header {header}")
        date_col = folded.index(spec.date_column.casefold())
        if spec.value_column is not None:
            if spec.value_column.casefold() not in folded:
                raise ParseError(f"{path}: no {spec.value_column!r} column in header {header}")
            value_col = folded.index(spec.value_column.casefold())
        else:
            if len(header) < 2:
                raise ParseError(f"{path}: need at least two columns, got {header}")
            value_col = 1

        rows: list[tuple[dt.date, float | None]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                date = dt.date.fromisoformat(row[date_col].strip())
            except (ValueError, IndexError) as exc:
                raise ParseError(f"{path}:{lineno}: bad date {row!r}: {exc}") from None
            raw = row[value_col].strip() if value_col < len(row) else ""
            if raw in spec.missing_markers:
                rows.append((date, None))
                continue
            try:
                rows.append((date, float(raw)))
            except ValueError:
                raise ParseError(f"{path}:{lineno}: bad value {raw!r}") from None

    lo = 0
    hi = len(rows)
    while lo < hi and rows[lo][1] is None:
        lo += 1
    while hi > lo and rows[hi - 1][1] is None:
        hi -= 1
    rows = rows[lo:hi]
    if not rows:
        raise DataError(f"{path}: no usable observations")
    gaps = [d.isoformat() for d, v in rows if v is None]
    if gaps:
        raise DataError(f"{path}: missing values inside the span at " + ", ".join(gaps))

    dates = [d for d, _ in rows]
    values = np.array([v for _, v in rows], dtype=float)
    for a, b in zip(dates, dates[1:]):
        if not a < b:
            raise ParseError(f"{path}: dates not strictly increasing at {b.isoformat()}")

    if spec.frequency == "auto":
        freq = _infer_frequency(dates)
    elif spec.frequency in _FREQ_NAMES:
        freq = _FREQ_NAMES[spec.frequency]
    elif spec.frequency == "daily":
        freq = None
    else:
        raise UnsupportedError(f"unknown frequency {spec.frequency!r}")

    label = header[value_col]
    if freq is None:
        return TimeSeries(values, DateIndex(tuple(dates)), label=label)
    year, sub = _period_start(dates[0], freq)
    return TimeSeries(values, PeriodIndex(year, sub, freq), label=label)


def write_csv(s: TimeSeries, path: str, value_name: str | None = None) -> None:
    """Write a series as DATE,VALUE rows; read_csv round-trips the result."""
    name = value_name or (s.label if s.label else "VALUE")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["DATE", name])
        for i in range(1, s.n + 1):
            writer.writerow([s.period_date(i).isoformat(), repr(float(s.values[i - 1]))])


def monthly_to_quarterly(s: TimeSeries, how: str = "mean") -> TimeSeries:
    """Aggregate a monthly series to full quarters; partial quarters drop.

    how is "mean" (quarterly average) or "last" (end-of-quarter value).
    """
    if how not in ("mean", "last"):
        raise ValueError(f"unknown aggregation {how!r}")
    if not (isinstance(s.index, PeriodIndex) and s.index.freq == 12):
        raise DataError("quarterly aggregation needs a monthly series")
    year, month = s.index.stamp(1)
    lead = (3 - (month - 1) % 3) % 3  # months until the first full quarter
    usable = s.n - lead
    trail = usable % 3
    if usable < 3:
        raise DataError("no full quarter in the series")
    if lead or trail:
        warnings.warn(f"dropping {lead} leading and {trail} trailing months"
                      " outside full quarters", stacklevel=2)
    block = s.values[lead : lead + usable - trail].reshape(-1, 3)
    values = block.mean(axis=1) if how == "mean" else block[:, 2]
    y0, m0 = s.index.stamp(1 + lead)
    return TimeSeries(values, PeriodIndex(y0, (m0 - 1) // 3 + 1, 4), label=s.label)
