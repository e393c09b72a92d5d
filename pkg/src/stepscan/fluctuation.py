"""Residual-based fluctuation processes and level-stability tests.

Under the hypothesis of a constant level, scaled partial sums of
recursive residuals behave like a Brownian motion and scaled partial
sums of OLS residuals like a Brownian bridge; a level shift shows up as
excessive fluctuation of these paths. This module builds the paths
(Rec-CUSUM, OLS-CUSUM and MOSUM variants), estimates the variance used
for scaling (plain or long-run), and turns path extremes into
significance statements via boundary-crossing probabilities of the
limiting processes.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .series import DataError, TimeSeries, UnsupportedError

__all__ = [
    "VarianceEstimate",
    "FluctuationProcess",
    "TestResult",
    "recursive_residuals",
    "ols_residuals",
    "plain_variance",
    "long_run_variance",
    "auto_bandwidth",
    "build_process",
    "mosum_process",
    "sup_abs_test",
    "brownian_bridge_sup_pvalue",
    "brownian_bridge_sup_quantile",
    "brownian_motion_crossing_probability",
    "REC_CUSUM_LAMBDA",
]

# Classical two-sided crossing constants for the linear boundary
# +/- lambda * (1 + 2t) of a standard Brownian motion; verified against
# brownian_motion_crossing_probability in the test suite.
REC_CUSUM_LAMBDA: dict[float, float] = {
    0.01: 1.143,
    0.05: 0.948,
    0.10: 0.850,
}


@dataclass(frozen=True)
class VarianceEstimate:
    """A variance used to scale a fluctuation process.

    kind "plain" is the sample variance of the OLS residuals with
    divisor T - 1; kind "long_run" is the Bartlett-kernel estimate that
    remains consistent under serial dependence. clamped flags the floor
    applied when the long-run sum lands at or below zero.
    """

    value: float
    kind: str = "plain"
    kernel: str | None = None
    bandwidth: int | None = None
    clamped: bool = False

    def __post_init__(self) -> None:
        if self.value < 0.0:
            raise ValueError(f"variance must be nonnegative, got {self.value}")


@dataclass(frozen=True, eq=False)
class FluctuationProcess:
    """A scaled partial- or moving-sum path on [0, 1].

    path[k] sits at time t = k / nobs. OLS-CUSUM paths start and end at
    exactly zero; Rec-CUSUM paths start at zero and carry nobs - 1
    increments; MOSUM paths hold moving sums of OLS residuals over a
    window of floor(bandwidth * nobs) observations.
    """

    path: np.ndarray
    kind: str
    scale: VarianceEstimate
    nobs: int
    bandwidth: float | None = None

    def __post_init__(self) -> None:
        arr = np.asarray(self.path, dtype=float).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "path", arr)

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.path.size) / self.nobs


@dataclass(frozen=True)
class TestResult:
    """Outcome of a boundary-crossing significance check.

    p_value is None exactly for MOSUM crossing checks, where only a
    user-supplied critical value is available; for the sup tests,
    crossed is equivalent to p_value < level.
    """

    statistic: float
    p_value: float | None
    crossed: bool
    boundary: str
    level: float


def recursive_residuals(s: TimeSeries) -> np.ndarray:
    """One-step-ahead prediction errors from the growing-sample mean.

    e_i = y_i - mean(y_1..y_{i-1}) for i = 2..T; output length T - 1.
    """
    if s.n < 2:
        raise DataError("recursive residuals require at least two observations")
    v = s.values
    grow_means = np.cumsum(v)[:-1] / np.arange(1, s.n)
    return v[1:] - grow_means


def ols_residuals(s: TimeSeries) -> np.ndarray:
    """Deviations from the grand mean; length T, sums to zero."""
    if s.n < 2:
        raise DataError("residuals require at least two observations")
    return s.values - s.values.mean()


def plain_variance(s: TimeSeries) -> VarianceEstimate:
    """Sample variance of the OLS residuals, divisor T - 1."""
    e = ols_residuals(s)
    return VarianceEstimate(value=float(e @ e / (s.n - 1)), kind="plain")


def auto_bandwidth(n: int) -> int:
    """Default Bartlett truncation lag, floor(4 * (T/100)^(2/9))."""
    return int(4.0 * (n / 100.0) ** (2.0 / 9.0))


def long_run_variance(s: TimeSeries, bandwidth: int | str = "auto") -> VarianceEstimate:
    """Bartlett-kernel long-run variance of the demeaned series.

    omega^2 = gamma_0 + 2 * sum_{j=1..l} (1 - j/(l+1)) * gamma_j, with
    gamma_j the lag-j autocovariance using divisor T. The Bartlett
    weights make the estimate nonnegative by construction; values at or
    below 1e-12 * gamma_0 are floored there and flagged via clamped.
    """
    if s.n < 4:
        raise DataError("long-run variance requires at least four observations")
    lag = auto_bandwidth(s.n) if bandwidth == "auto" else int(bandwidth)
    if not 0 <= lag <= s.n - 2:
        raise ValueError(f"bandwidth must be in [0, {s.n - 2}], got {lag}")
    x = s.values - s.values.mean()
    n = s.n
    gamma0 = float(x @ x / n)
    total = gamma0
    for j in range(1, lag + 1):
        gamma_j = float(x[:-j] @ x[j:] / n)
        total += 2.0 * (1.0 - j / (lag + 1.0)) * gamma_j
    clamped = False
    if total <= 0.0:
        total, clamped = gamma0, True
    elif total < 1e-12 * gamma0:
        total, clamped = 1e-12 * gamma0, True
    return VarianceEstimate(value=total, kind="long_run", kernel="bartlett",
                            bandwidth=lag, clamped=clamped)


def _scaled(residuals: np.ndarray, scale: VarianceEstimate, n: int,
            cumulative: bool) -> np.ndarray:
    sd = math.sqrt(scale.value)
    if sd == 0.0:
        # A zero scale is only meaningful when there is nothing to scale.
        if np.any(residuals != 0.0):
            raise DataError("degenerate scale: zero variance with nonzero residuals")
        k = residuals.size + 1 if cumulative else residuals.size
        return np.zeros(k)
    if cumulative:
        return np.concatenate(([0.0], np.cumsum(residuals))) / (sd * math.sqrt(n))
    return residuals / (sd * math.sqrt(n))


def build_process(s: TimeSeries, kind: str,
                  scale: VarianceEstimate | None = None) -> FluctuationProcess:
    """Cumulative-sum fluctuation process of recursive or OLS residuals.

    path[k] = sum of the first k residuals / (sigma * sqrt(T)), with
    path[0] = 0. scale defaults to the plain variance estimate.
    """
    if kind not in ("rec_cusum", "ols_cusum"):
        raise ValueError(f"unknown process kind {kind!r}")
    if scale is None:
        scale = plain_variance(s)
    resid = recursive_residuals(s) if kind == "rec_cusum" else ols_residuals(s)
    path = _scaled(resid, scale, s.n, cumulative=True)
    if kind == "ols_cusum":
        path[-1] = 0.0  # residuals sum to zero by construction; pin rounding
    return FluctuationProcess(path=path, kind=kind, scale=scale, nobs=s.n)


def mosum_process(s: TimeSeries, bandwidth_fraction: float,
                  scale: VarianceEstimate | None = None) -> FluctuationProcess:
    """Moving sums of OLS residuals over a window of floor(h * T) points."""
    if not 0.0 < bandwidth_fraction <= 1.0:
        raise ValueError(f"bandwidth fraction must be in (0, 1], got {bandwidth_fraction}")
    h = int(bandwidth_fraction * s.n)
    if h < 2:
        raise DataError(f"MOSUM window of {h} observations is too small")
    if scale is None:
        scale = plain_variance(s)
    e = ols_residuals(s)
    cum = np.concatenate(([0.0], np.cumsum(e)))
    sums = cum[h:] - cum[:-h]
    path = _scaled(sums, scale, s.n, cumulative=False)
    return FluctuationProcess(path=path, kind="mosum", scale=scale, nobs=s.n,
                              bandwidth=bandwidth_fraction)


def brownian_bridge_sup_pvalue(x: float) -> float:
    """P(sup |B0(t)| > x) by the alternating exponential series.

    Terms are added until they drop below 1e-12; the result is exact to
    that tolerance and equals 1 at x <= 0.
    """
    if x <= 0.0:
        return 1.0
    total = 0.0
    sign = 1.0
    for k in range(1, 100000):
        term = math.exp(-2.0 * k * k * x * x)
        if term < 1e-12:
            break
        total += sign * term
        sign = -sign
    return min(max(2.0 * total, 0.0), 1.0)


@functools.lru_cache(maxsize=64)
def brownian_bridge_sup_quantile(level: float) -> float:
    """The constant c with P(sup |B0| > c) = level, by bisection."""
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must be in (0, 1), got {level}")
    lo, hi = 1e-8, 10.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if brownian_bridge_sup_pvalue(mid) > level:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _norm_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def brownian_motion_crossing_probability(lam: float) -> float:
    """P(standard BM leaves +/- lam*(1+2t) somewhere on [0, 1]).

    Two-sided version of the classical linear-boundary crossing formula,
    2 * (1 - Phi(3 lam) + exp(-4 lam^2) Phi(lam)).
    """
    if lam <= 0.0:
        return 1.0
    one_sided = 1.0 - _norm_cdf(3.0 * lam) + math.exp(-4.0 * lam * lam) * _norm_cdf(lam)
    return min(max(2.0 * one_sided, 0.0), 1.0)


def sup_abs_test(process: FluctuationProcess, level: float = 0.05,
                 critical: float | None = None) -> TestResult:
    """Significance of the largest excursion of a fluctuation process.

    * ols_cusum: statistic max|path|, p-value from the Brownian-bridge
      sup distribution, boundary a constant at the level's quantile.
    * rec_cusum: statistic is the smallest boundary multiple touched,
      max |path_k| / (1 + 2 t_k); p-value from the analytic
      linear-boundary crossing probability. Only levels 0.01/0.05/0.10
      carry tabulated boundary constants; others are rejected.
    * mosum: no p-value is available; the verdict is a crossing check of
      max|path| against a caller-supplied critical value.
    """
    if not 0.0 < level <= 0.5:
        raise ValueError(f"level must be in (0, 0.5], got {level}")

    if process.kind == "ols_cusum":
        stat = float(np.max(np.abs(process.path)))
        p = brownian_bridge_sup_pvalue(stat)
        bound = brownian_bridge_sup_quantile(level)
        return TestResult(statistic=stat, p_value=p, crossed=p < level,
                          boundary=f"|path| = {bound:.4f} (constant, Brownian bridge sup)",
                          level=level)

    if process.kind == "rec_cusum":
        if level not in REC_CUSUM_LAMBDA:
            raise UnsupportedError(
                f"rec_cusum boundaries are tabulated for levels"
                f" {sorted(REC_CUSUM_LAMBDA)}, not {level}"
            )
        lam_level = REC_CUSUM_LAMBDA[level]
        ratios = np.abs(process.path) / (1.0 + 2.0 * process.times)
        stat = float(np.max(ratios))
        p = brownian_motion_crossing_probability(stat)
        return TestResult(statistic=stat, p_value=p, crossed=p < level,
                          boundary=f"+/- {lam_level} * (1 + 2t) (Brownian motion crossing)",
                          level=level)

    if process.kind == "mosum":
        if critical is None:
            raise UnsupportedError(
                "MOSUM significance needs a caller-supplied critical value;"
                " no p-value approximation is implemented"
            )
        stat = float(np.max(np.abs(process.path)))
        return TestResult(statistic=stat, p_value=None, crossed=stat > critical,
                          boundary=f"+/- {critical} (user-supplied constant)", level=level)

    raise UnsupportedError(f"no test implemented for process kind {process.kind!r}")
