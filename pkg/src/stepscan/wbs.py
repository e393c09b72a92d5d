"""Wild binary segmentation for mean shifts.

Weighted two-sample CUSUM statistics are evaluated on many random
subintervals; the series is split recursively at the strongest
statistic until nothing exceeds a universal threshold. Randomizing the
intervals lets short spells between nearby breaks dominate some draw,
which plain binary segmentation can miss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .series import DataError, Segmentation, TimeSeries, segmentation_from_breaks

__all__ = ["WbsConfig", "interval_cusum", "wbs_segment", "mad_scale"]


@dataclass(frozen=True)
class WbsConfig:
    """Tuning knobs for wild binary segmentation.

    threshold_constant scales the universal threshold
    C * sigma * sqrt(2 log T); max_breaks keeps only the strongest
    breaks when set. All randomness flows from seed.
    """

    num_intervals: int = 5000
    threshold_constant: float = 1.3
    max_breaks: int | None = None
    seed: int = 0
    min_len: int = 2

    def __post_init__(self) -> None:
        if self.num_intervals < 0:
            raise ValueError("num_intervals must be nonnegative")
        if self.threshold_constant <= 0.0:
            raise ValueError("threshold_constant must be positive")
        if self.min_len < 2:
            raise ValueError("min_len must be at least 2")


def mad_scale(values: np.ndarray) -> float:
    """Noise-level estimate: MAD of first differences / (sqrt(2) * 0.6745).

    Differencing removes the piecewise-constant signal except at the
    breaks, which the median absorbs.
    """
    d = np.diff(np.asarray(values, dtype=float))
    if d.size == 0:
        return 0.0
    mad = float(np.median(np.abs(d - np.median(d))))
    return mad / (math.sqrt(2.0) * 0.6745)


def _scan(cum: np.ndarray, starts: np.ndarray, ends: np.ndarray,
          los: np.ndarray, his: np.ndarray) -> tuple[int, float, int]:
    """Strongest weighted CUSUM over all (interval, split) pairs.

    cum is the series cumulative sum with a leading zero. For each
    interval [s..e] the candidate splits b run over [lo..hi]; b is the
    last index of the left part. Ties go to the smallest b, then the
    smallest interval start. Returns (b, stat, start).
    """
    lens = his - los + 1
    ids = np.repeat(np.arange(starts.size), lens)
    offsets = np.cumsum(lens) - lens
    b = np.arange(int(lens.sum())) - offsets[ids] + los[ids]
    s = starts[ids]
    e = ends[ids]
    n = e - s + 1
    nl = b - s + 1
    nr = e - b
    left = cum[b] - cum[s - 1]
    right = cum[e] - cum[b]
    # mean-difference form of the weighted CUSUM; identical to the
    # two-term definition but exactly zero on constant stretches
    x = np.sqrt(nl * nr / n) * (left / nl - right / nr)
    absx = np.abs(x)
    vmax = float(absx.max())
    tied = np.flatnonzero(absx == vmax)
    pick = tied[np.lexsort((s[tied], b[tied]))[0]]
    return int(b[pick]), vmax, int(s[pick])


def interval_cusum(values: np.ndarray, s: int, e: int) -> tuple[int, float]:
    """Best split of the span [s..e] (1-based, inclusive) by weighted CUSUM.

    X(b) = sqrt((e-b)/(n(b-s+1))) * sum(y[s..b])
         - sqrt((b-s+1)/(n(e-b))) * sum(y[b+1..e]),  n = e - s + 1.
    Returns the b with the largest |X(b)| (smallest b on ties) and that
    maximum.
    """
    v = np.asarray(values, dtype=float)
    if not 1 <= s < e <= v.size:
        raise DataError(f"degenerate interval [{s}, {e}] for {v.size} observations")
    cum = np.concatenate(([0.0], np.cumsum(v)))
    b, stat, _ = _scan(cum, np.array([s]), np.array([e]),
                       np.array([s]), np.array([e - 1]))
    return b, stat


def _draw_intervals(n: int, count: int, min_len: int,
                    rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """count distinct intervals [s..e] with e - s + 1 >= 2*min_len, uniform."""
    span = 2 * min_len
    max_start = n - span + 1
    if max_start < 1 or count == 0:
        return np.empty(0, dtype=int), np.empty(0, dtype=int)
    per_start = n - span + 2 - np.arange(1, max_start + 1)  # choices of e per s
    cum = np.cumsum(per_start)
    total = int(cum[-1])
    if count >= total:
        ranks = np.arange(total)
    else:
        ranks = rng.choice(total, size=count, replace=False)
    s_idx = np.searchsorted(cum, ranks, side="right")
    before = np.where(s_idx > 0, cum[s_idx - 1], 0)
    starts = s_idx + 1
    ends = starts + span - 1 + (ranks - before)
    return starts.astype(int), ends.astype(int)


def wbs_segment(s: TimeSeries, cfg: WbsConfig = WbsConfig()) -> Segmentation:
    """Segment a series by wild binary segmentation.

    Draws cfg.num_intervals random subintervals once, then recursively
    splits at the strongest CUSUM statistic among the drawn intervals
    inside the current segment (the segment itself is always a
    candidate, so num_intervals = 0 degenerates to plain binary
    segmentation). Splitting stops when the best statistic falls at or
    below C * sigma * sqrt(2 log T). Breaks keep min_len distance from
    the edges of the segment being split; with max_breaks set, only the
    strongest breaks survive.
    """
    v = s.values
    n = s.n
    if n < 2 * cfg.min_len:
        raise DataError(f"need at least {2 * cfg.min_len} observations, got {n}")
    rng = np.random.default_rng(cfg.seed)
    starts, ends = _draw_intervals(n, cfg.num_intervals, cfg.min_len, rng)
    sigma = mad_scale(v)
    threshold = cfg.threshold_constant * sigma * math.sqrt(2.0 * math.log(n))
    # Cumulative-sum rounding leaves O(n^1.5 * eps * |y|) of noise in the
    # statistic on constant stretches; never split on that.
    eps = float(np.finfo(float).eps)
    stat_floor = 4.0 * eps * n ** 1.5 * float(np.max(np.abs(v)))
    threshold = max(threshold, stat_floor)
    cum = np.concatenate(([0.0], np.cumsum(v)))

    found: list[tuple[int, float]] = []
    stack: list[tuple[int, int]] = [(1, n)]
    while stack:
        lo, hi = stack.pop()
        cand_lo = lo + cfg.min_len - 1
        cand_hi = hi - cfg.min_len
        if cand_lo > cand_hi:
            continue
        inside = (starts >= lo) & (ends <= hi)
        seg_s = np.concatenate((starts[inside], [lo]))
        seg_e = np.concatenate((ends[inside], [hi]))
        los = np.maximum(seg_s, cand_lo)
        his = np.minimum(seg_e - 1, cand_hi)
        ok = los <= his
        if not np.any(ok):
            continue
        b, stat, _ = _scan(cum, seg_s[ok], seg_e[ok], los[ok], his[ok])
        if stat > threshold:
            found.append((b, stat))
            stack.append((b + 1, hi))
            stack.append((lo, b))

    if cfg.max_breaks is not None and len(found) > cfg.max_breaks:
        found.sort(key=lambda t: (-t[1], t[0]))
        found = found[: cfg.max_breaks]
    found.sort(key=lambda t: t[0])
    return segmentation_from_breaks(
        v, [b for b, _ in found], method="wbs", min_len=cfg.min_len,
        trace=[(float(b), stat) for b, stat in found],
    )
