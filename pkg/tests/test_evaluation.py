from __future__ import annotations

import csv
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from breakcast.evaluation import (
    MetricsReport,
    comparison_table,
    compute_metrics,
    correlation_table,
    improvement,
    pearson_corr,
    rank_models,
    residual_report,
    write_predictions_csv,
)
from oracles import pearson_direct

# published comparison: (tag, MAE, RMSE, MAPE, R2)
PUBLISHED = [
    ("BP&ICSS-WT-LSTM", 4.6345, 5.3878, 5.8731, 0.8712),
    ("PELT-WT-LSTM(uni)", 2.3627, 2.7488, 3.0582, 0.9664),
    ("PELT-WT-LSTM(multi)", 1.8192, 2.2967, 2.3267, 0.9765),
    ("PELT-WT-GRU", 1.3308, 1.6987, 1.7401, 0.9872),
    ("PELT-WT-TCN", 1.1855, 1.5866, 1.6451, 0.9888),
]


def published_reports():
    return [MetricsReport(tag, mae, rmse, mape, r2, 100) for tag, mae, rmse, mape, r2 in PUBLISHED]


class TestComputeMetrics:
    def test_hand_example(self):
        m = compute_metrics([1, 2, 3], [2, 2, 2])
        assert m.mae == pytest.approx(2 / 3, abs=1e-15)
        assert m.rmse == pytest.approx(math.sqrt(2 / 3), abs=1e-15)
        assert m.mape == pytest.approx(400 / 9, abs=1e-9)
        assert m.r2 == pytest.approx(0.0, abs=1e-15)

    def test_perfect(self):
        m = compute_metrics([1.0, 5.0, -2.0], [1.0, 5.0, -2.0])
        assert (m.mae, m.rmse, m.mape, m.r2) == (0.0, 0.0, 0.0, 1.0)

    def test_constant_actual_has_no_r2(self):
        assert compute_metrics([4.0, 4.0, 4.0], [3.0, 4.0, 5.0]).r2 is None

    def test_zero_actual_excluded_from_mape(self):
        m = compute_metrics([0.0, 2.0, 4.0], [1.0, 1.0, 5.0])
        assert m.mape_excluded == 1
        assert m.mape == pytest.approx(100 * (0.5 + 0.25) / 2, abs=1e-12)
        assert m.mae == pytest.approx(1.0)

    def test_all_zero_actual(self):
        m = compute_metrics([0.0, 0.0], [1.0, -1.0])
        assert m.mape is None and m.mape_excluded == 2

    def test_negative_r2(self):
        assert compute_metrics([1.0, 2.0, 3.0], [3.0, 2.0, 1.0]).r2 == pytest.approx(-3.0)

    @pytest.mark.parametrize("a, p", [([1, 2], [1]), ([], [])])
    def test_shape_errors(self, a, p):
        with pytest.raises(ValueError):
            compute_metrics(a, p)

    def test_mae_le_rmse_fuzz(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            n = int(rng.integers(1, 50))
            a = rng.normal(size=n) * rng.uniform(0.1, 100)
            p = a + rng.standard_cauchy(size=n)
            m = compute_metrics(a, p)
            assert m.mae <= m.rmse * (1 + 1e-12)

    def test_serialisation(self):
        m = compute_metrics([1, 2, 3], [1, 2, 4], "x", training_seconds=1.5)
        assert MetricsReport.from_dict(m.to_dict()) == m
        assert "training_seconds" not in m.to_dict(include_timing=False)


class TestPearson:
    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 10_000), a=st.floats(0.1, 10), b=st.floats(-50, 50))
    def test_affine_invariance(self, seed, a, b):
        rng = np.random.default_rng(seed)
        x, y = rng.normal(size=(2, 30))
        r = pearson_corr(x, y)
        assert pearson_corr(a * x + b, y) == pytest.approx(r, abs=1e-10)
        assert pearson_corr(-a * x + b, y) == pytest.approx(-r, abs=1e-10)

    def test_matches_direct_formula(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            x = rng.normal(size=40)
            y = 0.3 * x + rng.normal(size=40)
            assert abs(pearson_corr(x, y) - pearson_direct(list(x), list(y))) < 1e-12

    def test_bounds_on_collinear(self):
        x = np.linspace(0, 1, 17)
        assert pearson_corr(x, 3 * x + 1) == 1.0
        assert pearson_corr(x, -x) == -1.0

    @pytest.mark.parametrize("x, y", [([1.0, 1.0, 1.0], [1.0, 2.0, 3.0]), ([1.0], [2.0])])
    def test_undefined(self, x, y):
        with pytest.raises(ValueError):
            pearson_corr(x, y)

    def test_table(self):
        t = np.arange(10.0)
        tab = correlation_table({"price": t, "gas": 2 * t, "flat": np.ones(10)}, "price")
        assert tab == {"gas": 1.0, "flat": None}


class TestResiduals:
    def test_two_bins(self):
        r = residual_report([0.0, 0.0], [1.0, -1.0], bins=2)
        assert r.counts.tolist() == [1, 1]
        assert r.edges.tolist() == [-1.0, 0.0, 1.0]

    def test_zero_residuals_single_bin(self):
        r = residual_report([1.0, 2.0, 3.0], [1.0, 2.0, 3.0], bins=5)
        assert np.count_nonzero(r.counts) == 1 and r.counts.sum() == 3
        assert r.skewness is None

    def test_counts_sum(self):
        rng = np.random.default_rng(1)
        a = rng.normal(size=333)
        r = residual_report(a, a + rng.normal(size=333))
        assert r.counts.sum() == 333 and len(r.edges) == 21
        d = r.to_dict()
        assert set(d) == {"residuals", "histogram", "summary"}

    def test_sign_convention(self):
        assert residual_report([5.0], [3.0]).residuals.tolist() == [2.0]


class TestRanking:
    def test_published_order(self):
        ranked = rank_models(reversed(published_reports()))
        assert [r.model for r in ranked] == [p[0] for p in reversed(PUBLISHED)]

    def test_tie_breaks(self):
        a = MetricsReport("b", 1.0, 2.0, None, None, 1)
        b = MetricsReport("a", 1.0, 2.0, None, None, 1)
        c = MetricsReport("c", 0.5, 2.0, None, None, 1)
        assert [r.model for r in rank_models([a, b, c])] == ["c", "a", "b"]

    def test_permutation_stable(self):
        reps = published_reports()
        rng = np.random.default_rng(2)
        base = [r.model for r in rank_models(reps)]
        for _ in range(10):
            assert [r.model for r in rank_models([reps[i] for i in rng.permutation(5)])] == base

    def test_empty(self):
        with pytest.raises(ValueError):
            rank_models([])

    def test_table_text(self):
        text = comparison_table(published_reports(), timing=False)
        lines = text.splitlines()
        assert lines[0].split() == ["rank", "model", "MAE", "RMSE", "MAPE(%)", "R2"]
        assert set(lines[1].replace(" ", "")) == {"-"}
        assert lines[2].split()[:3] == ["1", "PELT-WT-TCN", "1.1855"]
        assert "train_s" in comparison_table(published_reports())


class TestImprovement:
    def test_weakest_baseline_percentages(self):
        reps = {r.model: r for r in published_reports()}
        imp = improvement(reps["BP&ICSS-WT-LSTM"], reps["PELT-WT-TCN"])
        assert round(imp["rmse"], 2) == 70.55
        assert round(imp["mae"], 2) == 74.42

    def test_zero_reference(self):
        with pytest.raises(ValueError):
            improvement(MetricsReport("r", 0.0, 1.0, None, None, 1), MetricsReport("c", 0.0, 1.0, None, None, 1))

    def test_missing_mape(self):
        imp = improvement(MetricsReport("r", 2.0, 2.0, None, None, 1), MetricsReport("c", 1.0, 1.0, 3.0, None, 1))
        assert imp == {"mae": 50.0, "rmse": 50.0, "mape": None}


def test_predictions_csv(tmp_path):
    p = tmp_path / "pred.csv"
    write_predictions_csv(p, ["2024-01-01", "2024-01-02"], [10.0, 11.0], [9.5, 11.25])
    rows = list(csv.DictReader(p.open()))
    assert [float(r["residual"]) for r in rows] == [0.5, -0.25]
    assert rows[0]["date"] == "2024-01-01"
