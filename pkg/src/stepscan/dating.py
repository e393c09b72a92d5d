"""Optimal least-squares dating of multiple level shifts.

The fitted model is a step function: given m breaks, each segment gets
its sample mean and the objective is the aggregate residual sum of
squares. For a fixed m the global minimizer over all partitions with
segments of at least min_len observations is found by a Bellman
recursion over per-segment RSS values; the number of breaks is chosen
by the Bayesian Information Criterion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .series import Segmentation, TimeSeries

__all__ = [
    "RssTriangle",
    "build_rss_triangle",
    "optimal_breaks",
    "select_breaks_bic",
    "fitted_step",
    "bic_value",
]

# Above this length the per-segment RSS table is not materialized and
# every rss(i, j) is computed from cumulants on demand (identical
# results, bounded memory). Packed storage needs n*(n+1)/2 doubles.
MATERIALIZE_LIMIT = 4000

_EPS = float(np.finfo(float).eps)


def _clamped_rss(qsum, ssum, lens):
    """qsum - ssum^2/len with rounding residue snapped to exact zero.

    The cumulant difference leaves O(len * eps * qsum) of noise on
    segments with no variation; anything below that scale is zero.
    """
    raw = qsum - ssum * ssum / lens
    return np.where(raw <= 16.0 * _EPS * lens * qsum, 0.0, raw)


@dataclass(frozen=True, eq=False)
class RssTriangle:
    """Residual sums of squares rss(i, j) for contiguous spans of a series.

    rss(i, j) = sum_{k=i..j} y_k^2 - (sum y_k)^2 / (j - i + 1), clamped
    at zero against rounding. Queries are O(1) either from the packed
    upper-triangular table or straight from the cumulative sums.
    """

    n: int
    min_len: int
    cum: np.ndarray
    cumsq: np.ndarray
    table: np.ndarray | None = field(default=None, repr=False)

    def _offset(self, i: int) -> int:
        # Row i (1-based) holds j = i..n contiguously.
        return (i - 1) * self.n - (i - 1) * (i - 2) // 2

    def rss(self, i: int, j: int) -> float:
        """RSS of the span [i..j], 1-based inclusive."""
        if not 1 <= i <= j <= self.n:
            raise ValueError(f"span [{i}, {j}] outside 1..{self.n}")
        if self.table is not None:
            return float(self.table[self._offset(i) + (j - i)])
        ssum = self.cum[j] - self.cum[i - 1]
        qsum = self.cumsq[j] - self.cumsq[i - 1]
        return float(_clamped_rss(qsum, ssum, j - i + 1))

    def rss_row(self, i: int, j_lo: int, j_hi: int) -> np.ndarray:
        """Vector of rss(i, j) for j = j_lo..j_hi."""
        if self.table is not None:
            off = self._offset(i)
            return self.table[off + (j_lo - i) : off + (j_hi - i) + 1]
        return self._row_from_cumulants(i, j_lo, j_hi)

    def _row_from_cumulants(self, i: int, j_lo: int, j_hi: int) -> np.ndarray:
        js = np.arange(j_lo, j_hi + 1)
        ssum = self.cum[js] - self.cum[i - 1]
        qsum = self.cumsq[js] - self.cumsq[i - 1]
        return _clamped_rss(qsum, ssum, js - i + 1)

    def rss_tail(self) -> np.ndarray:
        """rss(a, n) for every start a = 1..n, from cumulants."""
        starts = np.arange(1, self.n + 1)
        ssum = self.cum[self.n] - self.cum[starts - 1]
        qsum = self.cumsq[self.n] - self.cumsq[starts - 1]
        return _clamped_rss(qsum, ssum, self.n - starts + 1)

    def segment_mean(self, i: int, j: int) -> float:
        return float((self.cum[j] - self.cum[i - 1]) / (j - i + 1))


def build_rss_triangle(s: TimeSeries | np.ndarray, min_len: int,
                       materialize_limit: int = MATERIALIZE_LIMIT) -> RssTriangle:
    """Precompute segment RSS cumulants (and, for modest n, the full table)."""
    v = s.values if isinstance(s, TimeSeries) else np.asarray(s, dtype=float)
    n = v.size
    if not 1 <= min_len <= n:
        raise ValueError(f"min_len must be in 1..{n}, got {min_len}")
    cum = np.concatenate(([0.0], np.cumsum(v)))
    cumsq = np.concatenate(([0.0], np.cumsum(v * v)))
    table = None
    if n <= materialize_limit:
        table = np.empty(n * (n + 1) // 2)
        pos = 0
        for i in range(1, n + 1):
            js = np.arange(i, n + 1)
            ssum = cum[js] - cum[i - 1]
            qsum = cumsq[js] - cumsq[i - 1]
            row = _clamped_rss(qsum, ssum, js - i + 1)
            table[pos : pos + row.size] = row
            pos += row.size
    return RssTriangle(n=n, min_len=min_len, cum=cum, cumsq=cumsq, table=table)


def _suffix_costs(tri: RssTriangle, jmax: int) -> np.ndarray:
    """D[j, a] = minimal RSS of splitting [a..n] into j segments.

    Entries are +inf where no admissible split exists. Segment RSS
    values accumulate right to left (rss(first) + rest), which fixes the
    floating-point summation order for exact comparisons.
    """
    n, h = tri.n, tri.min_len
    D = np.full((jmax + 1, n + 2), np.inf)
    tail = tri.rss_tail()
    last_start = n - h + 1
    D[1, 1 : last_start + 1] = tail[:last_start]
    for j in range(2, jmax + 1):
        b_hi = n - (j - 1) * h
        for a in range(1, n - j * h + 2):
            b_lo = a + h - 1
            vals = tri.rss_row(a, b_lo, b_hi) + D[j - 1, b_lo + 1 : b_hi + 2]
            D[j, a] = vals.min()
    return D


def _reconstruct(tri: RssTriangle, D: np.ndarray, m: int) -> list[int]:
    """Break positions for the m-break optimum, smallest lexicographic on ties."""
    n, h = tri.n, tri.min_len
    breaks: list[int] = []
    a = 1
    for j in range(m + 1, 1, -1):
        b_lo = a + h - 1
        b_hi = n - (j - 1) * h
        vals = tri.rss_row(a, b_lo, b_hi) + D[j - 1, b_lo + 1 : b_hi + 2]
        b = b_lo + int(np.argmin(vals))  # first minimum = smallest break
        breaks.append(b)
        a = b + 1
    return breaks


def _segmentation(tri: RssTriangle, breaks: list[int],
                  trace: list[tuple[float, float]] | None = None) -> Segmentation:
    edges = [0] + breaks + [tri.n]
    means = [tri.segment_mean(a + 1, b) for a, b in zip(edges, edges[1:])]
    rss = 0.0
    for a, b in zip(reversed(edges[:-1]), reversed(edges[1:])):
        rss = tri.rss(a + 1, b) + rss
    return Segmentation(
        n=tri.n,
        breaks=tuple(breaks),
        segment_means=tuple(means),
        rss_total=float(rss),
        method="dp",
        min_len=tri.min_len,
        criterion_trace=None if trace is None else tuple(trace),
    )


def optimal_breaks(tri: RssTriangle, m: int) -> Segmentation:
    """Globally RSS-minimal partition with exactly m breaks.

    Ties between partitions with equal RSS go to the lexicographically
    smallest break vector.
    """
    if m < 0:
        raise ValueError(f"number of breaks must be nonnegative, got {m}")
    if (m + 1) * tri.min_len > tri.n:
        raise ValueError(
            f"{m} breaks with min_len {tri.min_len} do not fit into {tri.n} observations"
        )
    if m == 0:
        return _segmentation(tri, [])
    D = _suffix_costs(tri, m + 1)
    return _segmentation(tri, _reconstruct(tri, D, m))


def bic_value(n: int, rss: float, m: int) -> float:
    """BIC of an m-break fit: n log(RSS/n) + (2m + 2) log n.

    The parameter count is m + 1 segment means, m break dates and one
    variance; additive constants are dropped since only the argmin is
    used. RSS = 0 maps to -inf so noiseless fits always win.
    """
    penalty = (2 * m + 2) * math.log(n)
    if rss <= 0.0:
        return float("-inf")
    return n * math.log(rss / n) + penalty


def select_breaks_bic(tri: RssTriangle, max_m: int) -> Segmentation:
    """Best segmentation over m = 0..max_m by BIC; ties go to smaller m.

    The returned Segmentation carries the full (m, BIC) trace.
    """
    if max_m < 0:
        raise ValueError(f"max_m must be nonnegative, got {max_m}")
    if (max_m + 1) * tri.min_len > tri.n:
        raise ValueError(
            f"max_m = {max_m} infeasible: {max_m + 1} segments of at least"
            f" {tri.min_len} observations do not fit into {tri.n}"
        )
    D = _suffix_costs(tri, max_m + 1)
    rss_by_m = D[1:, 1]  # D[m+1, 1] is the m-break optimum over the full span
    trace = [(float(m), bic_value(tri.n, float(rss_by_m[m]), m)) for m in range(max_m + 1)]
    best_m = min(range(max_m + 1), key=lambda m: (trace[m][1], m))
    breaks = [] if best_m == 0 else _reconstruct(tri, D, best_m)
    return _segmentation(tri, breaks, trace)


def fitted_step(s: TimeSeries, seg: Segmentation) -> TimeSeries:
    """Per-segment means replicated over each segment, for plots/reports."""
    if seg.n != s.n:
        raise ValueError(f"segmentation covers {seg.n} observations, series has {s.n}")
    out = np.empty(s.n)
    for (a, b), mean in zip(seg.bounds(), seg.segment_means):
        out[a - 1 : b] = mean
    return s.with_values(out, label=f"{s.label} (step fit)".strip())
