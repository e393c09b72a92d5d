"""Core value types and elementwise transforms for univariate time series.

Everything here is immutable after construction and purely functional:
transforms return new :class:`TimeSeries` objects and never mutate inputs,
so all types are safe to share across threads.

Conventions used throughout the package:

* positions within a series are 1-based (position ``i`` is ``y_i``),
* a break index is the LAST position of the earlier segment, so a
  segmentation with breaks ``(b1, ..., bm)`` has segments
  ``[1..b1], [b1+1..b2], ..., [bm+1..T]``.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

__all__ = [
    "DataError",
    "AlignmentError",
    "ParseError",
    "UnsupportedError",
    "PeriodIndex",
    "DateIndex",
    "TimeSeries",
    "Segmentation",
    "segmentation_from_breaks",
    "log_transform",
    "deflate",
    "returns",
    "fit_ar1",
]


class DataError(Exception):
    """The data cannot support the requested operation (CLI exit code 1)."""


class AlignmentError(DataError):
    """Two series do not line up period-for-period."""


class ParseError(DataError):
    """A file could not be parsed into a series."""


class UnsupportedError(Exception):
    """Explicitly unsupported option combination, never a silent fallback."""


_VALID_FREQS = (1, 4, 12)


@dataclass(frozen=True)
class PeriodIndex:
    """Regular calendar index with ``freq`` evenly spaced periods per year.

    Position ``i`` (1-based) maps to the period ``(start_year, start_sub)``
    advanced by ``i - 1`` steps; all date arithmetic is exact integer
    arithmetic on the absolute period number ``year * freq + (sub - 1)``.

    freq is periods per year: 1 annual, 4 quarterly, 12 monthly. Daily
    data uses :class:`DateIndex` with explicit dates instead.
    """

    start_year: int
    start_sub: int = 1
    freq: int = 1

    def __post_init__(self) -> None:
        if self.freq not in _VALID_FREQS:
            raise ValueError(f"frequency must be one of {_VALID_FREQS}, got {self.freq}")
        if not 1 <= self.start_sub <= self.freq:
            raise ValueError(f"start_sub must be in 1..{self.freq}, got {self.start_sub}")

    def _abs(self) -> int:
        return self.start_year * self.freq + (self.start_sub - 1)

    def stamp(self, i: int) -> tuple[int, int]:
        """(year, sub-period) of 1-based position ``i``."""
        year, sub0 = divmod(self._abs() + (i - 1), self.freq)
        return year, sub0 + 1

    def position(self, year: int, sub: int = 1) -> int:
        """1-based position of the period (year, sub); may fall outside the series."""
        return (year * self.freq + (sub - 1)) - self._abs() + 1

    def shifted(self, k: int) -> "PeriodIndex":
        """Index starting ``k`` periods later."""
        year, sub = self.stamp(1 + k)
        return PeriodIndex(year, sub, self.freq)

    def label(self, i: int) -> str:
        year, sub = self.stamp(i)
        if self.freq == 1:
            return str(year)
        if self.freq == 4:
            return f"{year}Q{sub}"
        return f"{year}-{sub:02d}"

    def date(self, i: int) -> dt.date:
        """First calendar day of the period at position ``i``."""
        year, sub = self.stamp(i)
        month = {1: 1, 4: 3 * (sub - 1) + 1, 12: sub}[self.freq]
        return dt.date(year, month, 1)


@dataclass(frozen=True)
class DateIndex:
    """Explicit, strictly increasing calendar dates (daily/irregular data)."""

    dates: tuple[dt.date, ...]

    def __post_init__(self) -> None:
        for a, b in zip(self.dates, self.dates[1:]):
            if not a < b:
                raise DataError(f"dates must be strictly increasing, got {a} before {b}")

    def stamp(self, i: int) -> dt.date:
        return self.dates[i - 1]

    def shifted(self, k: int) -> "DateIndex":
        return DateIndex(self.dates[k:])

    def label(self, i: int) -> str:
        return self.dates[i - 1].isoformat()

    def date(self, i: int) -> dt.date:
        return self.dates[i - 1]


Index = Union[PeriodIndex, DateIndex]


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Ordered finite real observations with a time index.

    values must be finite (no missing values inside the span) and length
    at least 1; a :class:`DateIndex` must carry one stamp per value.
    """

    values: np.ndarray
    index: Index
    label: str = ""

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1:
            raise DataError(f"series values must be one-dimensional, got shape {arr.shape}")
        if arr.size < 1:
            raise DataError("series must contain at least one observation")
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            raise DataError(f"non-finite value at position {bad[0] + 1}")
        if isinstance(self.index, DateIndex) and len(self.index.dates) != arr.size:
            raise DataError(
                f"index has {len(self.index.dates)} stamps for {arr.size} values"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    def period_label(self, i: int) -> str:
        """Human-readable stamp of 1-based position ``i``."""
        return self.index.label(i)

    def period_date(self, i: int) -> dt.date:
        return self.index.date(i)

    def window(self, i: int, j: int) -> "TimeSeries":
        """Sub-series of positions ``i..j`` (1-based, inclusive)."""
        if not 1 <= i <= j <= self.n:
            raise DataError(f"window [{i}, {j}] outside series of length {self.n}")
        return TimeSeries(self.values[i - 1 : j], self.index.shifted(i - 1), self.label)

    def with_values(self, values: np.ndarray, drop_first: int = 0,
                    label: str | None = None) -> "TimeSeries":
        """Same calendar (optionally advanced) with new values."""
        return TimeSeries(values, self.index.shifted(drop_first),
                          self.label if label is None else label)


def log_transform(s: TimeSeries) -> TimeSeries:
    """Elementwise natural log; requires strictly positive values."""
    bad = np.flatnonzero(s.values <= 0.0)
    if bad.size:
        i = int(bad[0]) + 1
        raise DataError(
            f"log requires positive values; got {s.values[bad[0]]} at position {i}"
            f" ({s.period_label(i)})"
        )
    return s.with_values(np.log(s.values), label=f"log({s.label})" if s.label else "log")


def deflate(nominal: TimeSeries, deflator: TimeSeries,
            base: int | tuple[int, int] | None = None) -> TimeSeries:
    """Divide a nominal series by a price deflator, rescaled to a base period.

    Both series must share a regular calendar (same frequency) and the
    deflator must cover the nominal span period-for-period; the deflator
    may be longer. The deflator is rescaled so its value at ``base``
    equals 1: ``base`` is a (year, sub) period, a year (the mean over
    that year's periods, e.g. ``base=2009`` for an index with base year
    2009), or None for the first aligned period.
    """
    if not (isinstance(nominal.index, PeriodIndex) and isinstance(deflator.index, PeriodIndex)):
        raise AlignmentError("deflation requires regular calendar indexes on both series")
    if nominal.index.freq != deflator.index.freq:
        raise AlignmentError(
            f"frequency mismatch: nominal has {nominal.index.freq} periods/year,"
            f" deflator has {deflator.index.freq}"
        )
    off = deflator.index.position(*nominal.index.stamp(1))
    missing = [nominal.period_label(i) for i in range(1, nominal.n + 1)
               if not 1 <= off + i - 1 <= deflator.n]
    if missing:
        raise AlignmentError("deflator is missing periods: " + ", ".join(missing))
    aligned = deflator.values[off - 1 : off - 1 + nominal.n]

    if base is None:
        base_value = float(aligned[0])
    elif isinstance(base, tuple):
        pos = deflator.index.position(base[0], base[1])
        if not 1 <= pos <= deflator.n:
            raise AlignmentError(f"base period {base} not covered by the deflator")
        base_value = float(deflator.values[pos - 1])
    else:
        freq = deflator.index.freq
        positions = [deflator.index.position(int(base), q) for q in range(1, freq + 1)]
        if not all(1 <= p <= deflator.n for p in positions):
            raise AlignmentError(f"base year {base} not fully covered by the deflator")
        base_value = float(np.mean([deflator.values[p - 1] for p in positions]))

    if np.any(aligned <= 0.0) or base_value <= 0.0:
        raise DataError("deflator values must be strictly positive")
    out = nominal.values / (aligned / base_value)
    return nominal.with_values(out, label=f"{nominal.label} (real)" if nominal.label else "real")


def returns(s: TimeSeries, kind: str = "log_return") -> TimeSeries:
    """Log returns r_i = log(y_i) - log(y_{i-1}); output length T - 1.

    kind "abs_log_return" takes absolute values (volatility proxy).
    """
    if kind not in ("log_return", "abs_log_return"):
        raise ValueError(f"unknown returns kind {kind!r}")
    if s.n < 2:
        raise DataError("returns require at least two observations")
    logs = log_transform(s).values
    r = np.diff(logs)
    if kind == "abs_log_return":
        r = np.abs(r)
    tag = "abs log returns" if kind == "abs_log_return" else "log returns"
    return s.with_values(r, drop_first=1, label=f"{s.label} {tag}".strip())


def fit_ar1(s: TimeSeries) -> tuple[float, float]:
    """Least-squares fit of y_i on (1, y_{i-1}); returns (intercept, rho)."""
    if s.n < 3:
        raise DataError("AR(1) fit requires at least three observations")
    x = s.values[:-1]
    y = s.values[1:]
    xbar = x.mean()
    sxx = float(((x - xbar) ** 2).sum())
    if sxx == 0.0:
        raise DataError("degenerate AR(1) fit: lagged values have zero variance")
    rho = float(((x - xbar) * (y - y.mean())).sum() / sxx)
    intercept = float(y.mean() - rho * xbar)
    return intercept, rho


@dataclass(frozen=True, eq=False)
class Segmentation:
    """A partition of 1..n into contiguous regimes with per-regime means.

    breaks are 1-based, each the last index of its segment; by convention
    the partition is bounded by 0 and n. segment_means has one entry per
    segment (num_breaks + 1 of them) and rss_total is the aggregate
    within-segment sum of squares.

    criterion_trace carries method-specific diagnostics as (key, value)
    pairs: (m, BIC) for the dynamic-programming search, (break, statistic)
    for wild binary segmentation, (break, p-value) for the divisive
    energy method.
    """

    n: int
    breaks: tuple[int, ...]
    segment_means: tuple[float, ...]
    rss_total: float
    method: str
    min_len: int
    criterion_trace: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self) -> None:
        bs = tuple(int(b) for b in self.breaks)
        object.__setattr__(self, "breaks", bs)
        edges = (0,) + bs + (self.n,)
        for a, b in zip(edges, edges[1:]):
            if not a < b:
                raise ValueError(f"breaks must be strictly increasing inside 1..{self.n - 1}")
            if b - a < self.min_len:
                raise ValueError(
                    f"segment ({a}, {b}] shorter than the configured minimum {self.min_len}"
                )
        if len(self.segment_means) != len(bs) + 1:
            raise ValueError("need exactly one mean per segment")

    @property
    def num_breaks(self) -> int:
        return len(self.breaks)

    def bounds(self) -> tuple[tuple[int, int], ...]:
        """Segments as 1-based inclusive (start, end) pairs."""
        edges = (0,) + self.breaks + (self.n,)
        return tuple((a + 1, b) for a, b in zip(edges, edges[1:]))

    def validate(self, values: Sequence[float], rtol: float = 1e-10) -> None:
        """Recompute means and RSS from raw values; raise if stored fields drift."""
        v = np.asarray(values, dtype=float)
        if v.size != self.n:
            raise ValueError(f"expected {self.n} values, got {v.size}")
        rss = 0.0
        for (a, b), mean in zip(self.bounds(), self.segment_means):
            seg = v[a - 1 : b]
            m = float(seg.mean())
            if not math.isclose(m, mean, rel_tol=rtol, abs_tol=1e-12):
                raise ValueError(f"stored mean {mean} for segment [{a}, {b}] differs from {m}")
        for (a, b), mean in zip(self.bounds(), self.segment_means):
            seg = v[a - 1 : b]
            rss += float(((seg - seg.mean()) ** 2).sum())
        if not math.isclose(rss, self.rss_total, rel_tol=rtol, abs_tol=1e-9):
            raise ValueError(f"stored RSS {self.rss_total} differs from recomputed {rss}")


def segmentation_from_breaks(values: Sequence[float], breaks: Sequence[int],
                             method: str, min_len: int,
                             trace: Sequence[tuple[float, float]] | None = None,
                             ) -> Segmentation:
    """Build a Segmentation by computing means and RSS from raw values.

    Means and RSS come from left-to-right cumulative sums so repeated
    calls are bit-identical.
    """
    v = np.asarray(values, dtype=float)
    n = v.size
    cum = np.concatenate(([0.0], np.cumsum(v)))
    cumsq = np.concatenate(([0.0], np.cumsum(v * v)))
    edges = (0,) + tuple(int(b) for b in sorted(breaks)) + (n,)
    means = []
    rss = 0.0
    eps = float(np.finfo(float).eps)
    for a, b in zip(reversed(edges[:-1]), reversed(edges[1:])):
        ssum = cum[b] - cum[a]
        qsum = cumsq[b] - cumsq[a]
        length = b - a
        means.append(ssum / length)
        seg_rss = qsum - ssum * ssum / length
        if seg_rss <= 16.0 * eps * length * qsum:
            seg_rss = 0.0  # rounding residue on a constant segment
        rss = seg_rss + rss
    means.reverse()
    return Segmentation(
        n=n,
        breaks=tuple(int(b) for b in sorted(breaks)),
        segment_means=tuple(float(m) for m in means),
        rss_total=float(rss),
        method=method,
        min_len=min_len,
        criterion_trace=None if trace is None else tuple((float(a), float(b)) for a, b in trace),
    )
