from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_breaks

import stepscan as ss
from stepscan.dating import bic_value


def annual(values):
    return ss.TimeSeries(values, ss.PeriodIndex(1900))


class TestRssTriangle:
    def test_constant_series_all_zero(self):
        tri = ss.build_rss_triangle(annual([4.0] * 6), 1)
        for i in range(1, 7):
            for j in range(i, 7):
                assert tri.rss(i, j) == 0.0

    def test_hand_computed_value(self):
        tri = ss.build_rss_triangle(annual([0, 0, 3, 3.0]), 1)
        assert tri.rss(1, 4) == pytest.approx(9.0, rel=1e-14)
        assert tri.rss(1, 2) == 0.0
        assert tri.rss(2, 3) == pytest.approx(4.5, rel=1e-14)

    def test_full_span_equals_scaled_variance(self):
        rng = np.random.default_rng(0)
        v = rng.normal(3, 2, 50)
        tri = ss.build_rss_triangle(annual(v), 1)
        assert tri.rss(1, 50) == pytest.approx(50 * np.var(v), rel=1e-12)

    def test_cumulants_match_direct_summation(self):
        rng = np.random.default_rng(1)
        v = rng.normal(0, 5, 80)
        tri = ss.build_rss_triangle(annual(v), 1)
        for i, j in [(1, 10), (5, 30), (40, 80), (7, 7), (13, 26)]:
            seg = v[i - 1 : j]
            direct = float(((seg - seg.mean()) ** 2).sum())
            assert tri.rss(i, j) == pytest.approx(direct, rel=1e-9, abs=1e-12)

    def test_materialized_and_lazy_agree(self):
        rng = np.random.default_rng(2)
        v = rng.normal(size=40)
        full = ss.build_rss_triangle(annual(v), 3)
        lazy = ss.build_rss_triangle(annual(v), 3, materialize_limit=10)
        assert lazy.table is None and full.table is not None
        for i in range(1, 41):
            row_a = full.rss_row(i, i, 40)
            row_b = lazy.rss_row(i, i, 40)
            np.testing.assert_array_equal(row_a, row_b)

    def test_min_len_validation(self):
        with pytest.raises(ValueError):
            ss.build_rss_triangle(annual([1.0, 2.0]), 3)


class TestOptimalBreaks:
    def test_no_breaks_is_the_full_span(self):
        rng = np.random.default_rng(3)
        v = rng.normal(size=30)
        tri = ss.build_rss_triangle(annual(v), 5)
        seg = ss.optimal_breaks(tri, 0)
        assert seg.breaks == ()
        assert seg.rss_total == pytest.approx(tri.rss(1, 30), rel=1e-14)

    def test_noiseless_step(self):
        sig, _ = ss.make_step_signal([0, 5], [50, 50], sigma=0.0)
        tri = ss.build_rss_triangle(sig, 5)
        seg = ss.optimal_breaks(tri, 1)
        assert seg.breaks == (50,)
        assert seg.rss_total == 0.0

    def test_infeasible_combination(self):
        tri = ss.build_rss_triangle(annual(np.arange(10.0)), 4)
        with pytest.raises(ValueError):
            ss.optimal_breaks(tri, 2)

    def test_matches_brute_force_small(self):
        rng = np.random.default_rng(4)
        for trial in range(25):
            n = int(rng.integers(8, 20))
            v = np.round(rng.normal(0, 2, n), 3)
            min_len = int(rng.integers(1, 4))
            m = int(rng.integers(0, 4))
            if (m + 1) * min_len > n:
                continue
            tri = ss.build_rss_triangle(annual(v), min_len)
            seg = ss.optimal_breaks(tri, m)
            # exact against enumeration over the same rss primitive
            exact = brute_force_breaks(v, m, min_len, rss=tri.rss)
            assert seg.rss_total == exact[0]
            assert seg.breaks == exact[1]
            # and to rounding against a fully independent rss
            approx = brute_force_breaks(v, m, min_len)
            assert seg.rss_total == pytest.approx(approx[0], rel=1e-9, abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_rss_monotone_in_m(self, data):
        n = data.draw(st.integers(12, 30))
        v = data.draw(st.lists(st.floats(-10, 10), min_size=n, max_size=n))
        tri = ss.build_rss_triangle(annual(v), 2)
        max_m = n // 2 - 1
        rss = [ss.optimal_breaks(tri, m).rss_total for m in range(min(max_m, 4) + 1)]
        assert all(a >= b - 1e-12 for a, b in zip(rss, rss[1:]))

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(-40, 40), min_size=12, max_size=28),
           st.integers(-3, 3), st.sampled_from([-2, 1, 3]))
    def test_breaks_invariant_under_affine_maps(self, raw, a, c):
        v = np.asarray(raw, dtype=float)
        tri1 = ss.build_rss_triangle(annual(v), 3)
        tri2 = ss.build_rss_triangle(annual(a + c * v), 3)
        s1 = ss.optimal_breaks(tri1, 2)
        s2 = ss.optimal_breaks(tri2, 2)
        assert s1.breaks == s2.breaks
        assert s2.rss_total == pytest.approx(c * c * s1.rss_total, rel=1e-9, abs=1e-9)


class TestBicSelection:
    def test_noise_only_prefers_zero_breaks(self):
        zero = 0
        for seed in range(200):
            rng = np.random.default_rng([7, seed])
            tri = ss.build_rss_triangle(annual(rng.standard_normal(200)), 15)
            zero += ss.select_breaks_bic(tri, 3).num_breaks == 0
        assert zero >= 180

    def test_noiseless_two_steps_recovered(self):
        sig, breaks = ss.make_step_signal([0, 4, 1], [30, 30, 30], sigma=0.0)
        tri = ss.build_rss_triangle(sig, 10)
        seg = ss.select_breaks_bic(tri, 4)
        assert seg.breaks == breaks

    def test_trace_recomputes_exactly(self):
        rng = np.random.default_rng(9)
        v = np.concatenate([rng.normal(0, 1, 60), rng.normal(3, 1, 60)])
        tri = ss.build_rss_triangle(annual(v), 10)
        seg = ss.select_breaks_bic(tri, 4)
        assert seg.criterion_trace is not None
        for m, stored in seg.criterion_trace:
            rss_m = ss.optimal_breaks(tri, int(m)).rss_total
            assert stored == bic_value(120, rss_m, int(m))

    def test_ties_go_to_smaller_m(self):
        sig, _ = ss.make_step_signal([0, 5], [20, 20], sigma=0.0)
        tri = ss.build_rss_triangle(sig, 5)
        # every m >= 1 reaches RSS 0 and BIC -inf; the smallest wins
        seg = ss.select_breaks_bic(tri, 3)
        assert seg.num_breaks == 1

    def test_infeasible_max_m(self):
        tri = ss.build_rss_triangle(annual(np.arange(20.0)), 6)
        with pytest.raises(ValueError):
            ss.select_breaks_bic(tri, 4)


class TestFittedStep:
    def test_zero_breaks_gives_grand_mean(self):
        s = annual([1.0, 2.0, 3.0, 6.0])
        tri = ss.build_rss_triangle(s, 1)
        fit = ss.fitted_step(s, ss.optimal_breaks(tri, 0))
        np.testing.assert_allclose(fit.values, 3.0)

    def test_noiseless_step_reproduced_exactly(self):
        sig, _ = ss.make_step_signal([0, 5], [30, 30], sigma=0.0)
        tri = ss.build_rss_triangle(sig, 5)
        fit = ss.fitted_step(sig, ss.optimal_breaks(tri, 1))
        np.testing.assert_array_equal(fit.values, sig.values)

    def test_length_mismatch(self):
        s = annual([1.0, 2.0, 3.0, 6.0])
        seg = ss.segmentation_from_breaks([1.0, 2.0], [], method="dp", min_len=1)
        with pytest.raises(ValueError):
            ss.fitted_step(s, seg)
