from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from breakcast.breaks import (
    BaiPerronConfig,
    BreakpointSet,
    FeatureBreakError,
    PeltConfig,
    bai_perron_detect,
    combine_bp_icss,
    default_penalty,
    detect_bp_icss,
    detect_per_feature,
    icss_detect,
    optimal_partition_bruteforce,
    pelt_detect,
    supf_critical_values,
)
from breakcast.breaks.icss import icss_statistic
from oracles import best_breaks_grid


def fuzz_series(rng, n):
    kind = rng.integers(3)
    t = np.arange(n)
    y = rng.normal(0, rng.uniform(0.2, 2.0), n)
    if kind == 0:
        for _ in range(rng.integers(1, 4)):
            y[rng.integers(1, n) :] += rng.normal(0, 4)
    elif kind == 1:
        y += rng.normal(0, 0.1) * t
    else:
        y[rng.integers(1, n) :] *= rng.uniform(2, 5)
    return y


class TestBreakpointSet:
    def test_segments_and_records(self):
        b = BreakpointSet((3, 7), 10, "PELT", statistics=(1.5, 2.5))
        assert b.segments() == [(0, 3), (3, 7), (7, 10)]
        recs = b.to_records([f"d{i}" for i in range(10)])
        assert recs[1] == {"index": 7, "date": "d7", "method": "PELT", "statistic": 2.5}

    @pytest.mark.parametrize("idx", [(0,), (10,), (4, 4), (5, 2)])
    def test_invalid(self, idx):
        with pytest.raises(ValueError):
            BreakpointSet(idx, 10, "PELT")

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            BreakpointSet((), 10, "CUSUM")


class TestPelt:
    def test_constant_series(self):
        assert pelt_detect(np.full(50, 3.0), PeltConfig(penalty=1.0)).indices == ()

    def test_single_step(self):
        y = np.r_[np.zeros(50), np.full(50, 10.0)]
        cfg = PeltConfig(penalty=default_penalty(y))
        assert pelt_detect(y, cfg).indices == (50,)
        assert optimal_partition_bruteforce(y, cfg).indices == (50,)

    def test_two_steps(self):
        y = np.r_[np.zeros(30), np.full(30, 8.0), np.full(30, -4.0)]
        assert pelt_detect(y).indices == (30, 60)
        assert optimal_partition_bruteforce(y).indices == (30, 60)

    def test_huge_penalty(self):
        y = np.random.default_rng(1).normal(size=80)
        assert optimal_partition_bruteforce(y, PeltConfig(penalty=1e12)).indices == ()

    def test_zero_penalty_singletons(self):
        y = np.array([1.0, 1.0, 2.0, 5.0, 5.0, 3.0])
        cfg = PeltConfig(penalty=0.0, min_segment=1)
        assert optimal_partition_bruteforce(y, cfg).indices == (2, 3, 5)
        assert pelt_detect(y, cfg).indices == (2, 3, 5)

    def test_min_segment_respected(self):
        rng = np.random.default_rng(5)
        y = rng.normal(size=120)
        b = pelt_detect(y, PeltConfig(penalty=0.5, min_segment=7))
        assert min(e - s for s, e in b.segments()) >= 7

    @pytest.mark.parametrize("cost", ["normal-mean", "normal-meanvar"])
    def test_matches_bruteforce_fuzz(self, cost):
        rng = np.random.default_rng(42)
        for _ in range(60):
            y = fuzz_series(rng, int(rng.integers(20, 121)))
            cfg = PeltConfig(cost=cost)
            assert pelt_detect(y, cfg).indices == optimal_partition_bruteforce(y, cfg).indices

    def test_errors(self):
        with pytest.raises(ValueError, match="non-finite"):
            pelt_detect(np.array([1.0, np.nan, 2.0, 3.0]))
        with pytest.raises(ValueError):
            pelt_detect(np.array([1.0, 2.0, 3.0]))
        with pytest.raises(ValueError):
            optimal_partition_bruteforce(np.zeros(2001))
        with pytest.raises(ValueError):
            PeltConfig(penalty=-1.0)
        with pytest.raises(ValueError):
            PeltConfig(cost="normal-meanvar", min_segment=1)

    def test_meanvar_variance_change(self):
        rng = np.random.default_rng(7)
        y = np.r_[rng.normal(0, 1, 150), rng.normal(0, 6, 150)]
        b = pelt_detect(y, PeltConfig(cost="normal-meanvar"))
        assert any(abs(k - 150) <= 10 for k in b.indices)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10_000), shift=st.floats(-1e3, 1e3))
    def test_translation_invariance(self, seed, shift):
        y = fuzz_series(np.random.default_rng(seed), 80)
        cfg = PeltConfig(penalty=5.0)
        assert pelt_detect(y + shift, cfg).indices == pelt_detect(y, cfg).indices

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10_000), c=st.sampled_from([-3.0, -0.5, 0.25, 2.0, 10.0]))
    def test_scale_behaviour(self, seed, c):
        y = fuzz_series(np.random.default_rng(seed), 80)
        beta = 4.0
        a = pelt_detect(y, PeltConfig(penalty=beta)).indices
        b = pelt_detect(c * y, PeltConfig(penalty=beta * c * c)).indices
        assert a == b

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10_000))
    def test_penalty_monotone(self, seed):
        y = fuzz_series(np.random.default_rng(seed), 100)
        counts = [len(pelt_detect(y, PeltConfig(penalty=p))) for p in (0.1, 0.5, 1, 2, 5, 10, 50, 500)]
        assert all(a >= b for a, b in zip(counts, counts[1:]))


class TestBaiPerron:
    def test_linear_regime_no_break(self):
        x = np.linspace(0, 1, 60)
        y = 2 + 3 * x
        X = np.column_stack([np.ones(60), x])
        b = bai_perron_detect(y, X)
        assert b.indices == ()
        assert b.extra["supf_sequence"][0] < b.extra["critical"][0]

    def test_single_break(self):
        y = np.r_[np.zeros(20), np.full(20, 5.0)]
        assert bai_perron_detect(y).indices == (20,)

    def test_two_breaks(self):
        y = np.r_[np.zeros(20), np.full(20, 5.0), np.ones(20)]
        b = bai_perron_detect(y, config=BaiPerronConfig(max_breaks=2))
        assert b.indices == (20, 40)
        assert len(b.statistics) == 2

    @pytest.mark.parametrize("bounds", [(0, 45, 100), (0, 20, 45, 100), (0, 20, 45, 70, 100)])
    def test_recovers_true_levels(self, bounds):
        levels = [0.0, 4.0, 1.0, 6.0]
        y = np.concatenate([np.full(b - a, levels[j]) for j, (a, b) in enumerate(zip(bounds, bounds[1:]))])
        b = bai_perron_detect(y, config=BaiPerronConfig(max_breaks=len(bounds) - 2, trim=0.1))
        assert b.indices == bounds[1:-1]

    def test_dynamic_programme_matches_grid(self):
        rng = np.random.default_rng(11)
        y = np.r_[rng.normal(0, 1, 25), rng.normal(2, 1, 15), rng.normal(-1, 1, 20)]
        b = bai_perron_detect(y, config=BaiPerronConfig(max_breaks=2, trim=0.15))
        h = math.ceil(0.15 * len(y))
        for m in (1, 2):
            assert b.extra["breaks_by_m"][m] == best_breaks_grid(list(y), m, h)

    def test_regression_break(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=120)
        y = np.where(np.arange(120) < 70, 1 + 2 * x, -1 + 0.5 * x) + 0.1 * rng.normal(size=120)
        b = bai_perron_detect(y, np.column_stack([np.ones(120), x]))
        assert b.indices == (70,)

    def test_singular_segment_rejected(self):
        X = np.column_stack([np.ones(60), np.r_[np.zeros(30), np.arange(30.0)]])
        with pytest.raises(ValueError, match="singular"):
            bai_perron_detect(np.arange(60.0), X, BaiPerronConfig(trim=0.2))

    def test_trim_too_small(self):
        with pytest.raises(ValueError, match="minimum segment"):
            bai_perron_detect(np.arange(10.0), np.ones((10, 3)), BaiPerronConfig(trim=0.1))

    def test_critical_values_close_to_published(self):
        # Bai and Perron (2003), sup F(l+1|l), q = 1, trim 0.15, 5%
        published = (8.58, 10.13, 11.14, 11.83, 12.25)
        ours = supf_critical_values(1, 0.15, 0.05)[:5]
        assert max(abs(a - b) for a, b in zip(ours, published)) < 0.25

    def test_critical_values_increase(self):
        cv = supf_critical_values(1, 0.15, 0.05)
        assert all(a < b for a, b in zip(cv, cv[1:]))
        assert supf_critical_values(1, 0.15, 0.01)[0] > cv[0] > supf_critical_values(1, 0.15, 0.10)[0]

    def test_missing_table_entry(self):
        with pytest.raises(ValueError, match="critical_values"):
            supf_critical_values(1, 0.33, 0.05)


class TestIcss:
    def test_endpoints_exactly_zero(self):
        rng = np.random.default_rng(0)
        for n in (8, 50, 997):
            a = rng.normal(size=n) * rng.uniform(0.1, 10)
            st_ = icss_statistic(a - a.mean())
            assert st_.deviation[0] == 0.0 and st_.deviation[-1] == 0.0

    def test_iid_mostly_clean(self):
        hits = sum(len(icss_detect(np.random.default_rng(s).normal(size=1000))) > 0 for s in range(100))
        assert hits <= 10

    def test_variance_step_located(self):
        found = []
        for s in range(30):
            rng = np.random.default_rng(s)
            y = np.r_[rng.normal(size=200), 5 * rng.normal(size=200)]
            b = icss_detect(y).indices
            found.append(min(b, key=lambda k: abs(k - 200)) if b else -1)
        assert abs(np.median(found) - 200) <= 10

    def test_zero_variance_rejected(self):
        with pytest.raises(ValueError, match="zero variance"):
            icss_detect(np.full(20, 2.0))

    def test_too_short(self):
        with pytest.raises(ValueError):
            icss_detect(np.arange(5.0))

    def test_statistic_formula(self):
        a = np.array([1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 3.0, -3.0])
        st_ = icss_statistic(a)
        c = np.cumsum(a**2)
        d = c / c[-1] - np.arange(1, 9) / 8
        assert st_.statistic == pytest.approx(math.sqrt(4) * np.max(np.abs(d[:-1])), abs=1e-15)


class TestCombine:
    def _b(self, idx, method="BaiPerron"):
        return BreakpointSet(idx, 100, method)

    def test_disjoint(self):
        assert combine_bp_icss(self._b((20,)), self._b((60,), "ICSS"), 5).indices == (20, 60)

    def test_merge(self):
        assert combine_bp_icss(self._b((20,)), self._b((22,), "ICSS"), 5).indices == (20,)

    def test_empty(self):
        out = combine_bp_icss(self._b(()), self._b((), "ICSS"))
        assert out.indices == () and out.method == "Combined"

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            combine_bp_icss(self._b(()), BreakpointSet((), 50, "ICSS"))

    def test_bp_icss_wrapper(self):
        rng = np.random.default_rng(4)
        y = np.r_[rng.normal(0, 1, 150), rng.normal(6, 1, 150)]
        b = detect_bp_icss(y)
        assert b.method == "Combined"
        assert any(abs(k - 150) <= 3 for k in b.indices)
        assert all(c - a >= 10 for a, c in zip(b.indices, b.indices[1:]))


class TestPerFeature:
    def test_constant_columns(self):
        out = detect_per_feature({"a": np.ones(40), "b": np.full(40, 2.0)})
        assert {k: v.indices for k, v in out.items()} == {"a": (), "b": ()}

    def test_one_stepped_column(self):
        step = np.r_[np.zeros(20), np.full(20, 4.0)]
        out = detect_per_feature({"a": np.ones(40), "step": step, "c": np.zeros(40)})
        assert list(out) == ["a", "step", "c"]
        assert out["step"].indices == optimal_partition_bruteforce(step).indices == (20,)
        assert out["a"].indices == out["c"].indices == ()

    def test_empty_frame(self):
        with pytest.raises(ValueError):
            detect_per_feature({})

    def test_error_names_column(self):
        with pytest.raises(FeatureBreakError, match="'bad'"):
            detect_per_feature({"ok": np.zeros(10), "bad": np.r_[np.zeros(9), np.inf]})
