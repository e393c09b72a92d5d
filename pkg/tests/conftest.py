from __future__ import annotations

import itertools
import pathlib

import numpy as np
import pytest
from hypothesis import settings

import stepscan as ss

REPO = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"

# The whole suite is reproducible run to run, property tests included.
settings.register_profile("deterministic", derandomize=True, deadline=None)
settings.load_profile("deterministic")


def brute_force_breaks(values, m, min_len, rss=None):
    """Exhaustive minimum-RSS search over all admissible partitions.

    Independent oracle for the dynamic program's search: enumerates
    break tuples in lexicographic order and keeps the first minimum,
    which is exactly the DP tie rule. Segment RSS values accumulate
    right to left to mirror the DP summation order, so equal optima
    compare exactly when the same rss primitive is supplied; with the
    default direct-summation rss the totals agree to rounding only.
    """
    v = np.asarray(values, dtype=float)
    n = v.size

    if rss is None:
        def rss(i, j):  # 1-based inclusive, no cumulants
            seg = v[i - 1 : j]
            ssum = seg.sum()
            qsum = (seg * seg).sum()
            return max(qsum - ssum * ssum / seg.size, 0.0)

    best = None
    for breaks in itertools.combinations(range(1, n), m):
        edges = (0,) + breaks + (n,)
        if any(b - a < min_len for a, b in zip(edges, edges[1:])):
            continue
        total = 0.0
        for a, b in zip(reversed(edges[:-1]), reversed(edges[1:])):
            total = rss(a + 1, b) + total
        if best is None or total < best[0]:
            best = (total, breaks)
    return best


@pytest.fixture(scope="session")
def nile() -> ss.TimeSeries:
    return ss.read_csv(str(FIXTURES / "nile.csv"))


@pytest.fixture(scope="session")
def wti_log_real() -> ss.TimeSeries:
    """Quarterly log real oil price, the dating benchmark series."""
    oil = ss.read_csv(str(FIXTURES / "oilprice_raw.csv"))
    quarterly = ss.monthly_to_quarterly(oil, how="mean")
    deflator = ss.read_csv(str(FIXTURES / "gdpdef.csv"))
    return ss.log_transform(ss.deflate(quarterly, deflator, base=2009))


@pytest.fixture()
def fixtures_dir() -> pathlib.Path:
    return FIXTURES
