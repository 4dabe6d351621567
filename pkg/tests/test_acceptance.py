"""Acceptance criteria; each test records one PASS/FAIL line.

The lines are printed as they are produced and repeated in the pytest
terminal summary (see conftest.py). Run on its own with

    python3 -m pytest tests/test_acceptance.py -v

Criterion 9 needs a real EU allowance price file; point the environment
variable BREAKCAST_EUA_CSV at it (and optionally BREAKCAST_EUA_CONFIG at a
JSON config naming its columns). Without it the criterion is skipped.
"""

from __future__ import annotations

import json
import os
import time
from pathlib import Path

import numpy as np
import pytest

from breakcast.breaks import PeltConfig, icss_detect, optimal_partition_bruteforce, pelt_detect
from breakcast.breaks.icss import icss_statistic
from breakcast.cli import main
from breakcast.evaluation import MetricsReport, compute_metrics, improvement, rank_models
from breakcast.neural import GRURegressor, LSTMRegressor, TCNRegressor
from breakcast.neural.training import mse_loss
from breakcast.pipeline import RunConfig, Variant, denoised_target, fit_variant
from breakcast.synthetic import regime_switching_frame, write_frame_csv
from breakcast.wavelet import FAMILIES, max_level, wavedec, waverec

RESULTS: list[str] = []


def record(number: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    RESULTS.append(line)
    print(line)


def mixed_series(rng, n):
    t = np.arange(n)
    y = rng.normal(0, rng.uniform(0.3, 2.0), n)
    for _ in range(rng.integers(0, 4)):
        y[rng.integers(1, n) :] += rng.normal(0, 4)
    if rng.random() < 0.5:
        y += rng.normal(0, 0.05) * t
    if rng.random() < 0.3:
        y[rng.integers(1, n) :] *= rng.uniform(1.5, 4)
    return y


def test_c1_pelt_matches_bruteforce():
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    mismatches = 0
    cases = 0
    for _ in range(500):
        y = mixed_series(rng, int(rng.integers(20, 201)))
        for cost in ("normal-mean", "normal-meanvar"):
            cfg = PeltConfig(cost=cost)
            cases += 1
            if pelt_detect(y, cfg).indices != optimal_partition_bruteforce(y, cfg).indices:
                mismatches += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 30
    record(1, ok, f"PELT == brute force on {cases - mismatches}/{cases} series-cost pairs in {elapsed:.1f}s (< 30s)")
    assert ok


def test_c2_pelt_scaling():
    def series(n, seed):
        rng = np.random.default_rng(seed)
        means = np.repeat(rng.normal(0, 3, n // 500), 500)
        return means + rng.normal(size=n)

    def timed(y):
        best = np.inf
        for _ in range(3 if len(y) <= 10_000 else 1):
            t0 = time.perf_counter()
            pelt_detect(y)
            best = min(best, time.perf_counter() - t0)
        return best

    start = time.perf_counter()
    small, large = timed(series(10_000, 1)), timed(series(100_000, 2))
    elapsed = time.perf_counter() - start
    ratio = large / small
    ok = ratio < 15 and elapsed < 60
    record(2, ok, f"PELT time ratio n=100k/n=10k = {ratio:.2f} (< 15), total {elapsed:.1f}s (< 60s)")
    assert ok


def test_c3_dwt_reconstruction():
    rng = np.random.default_rng(3)
    worst = 0.0
    checked = 0
    for name in FAMILIES:
        for n in range(2, 513):
            x = rng.normal(size=n) * 10
            for J in (1, 2, 3):
                if J > max_level(n, name):
                    continue
                worst = max(worst, float(np.max(np.abs(waverec(wavedec(x, name, J)) - x))))
                checked += 1
    ok = worst < 1e-9
    record(3, ok, f"max reconstruction error {worst:.2e} over {checked} (family, length, level) cases (< 1e-9)")
    assert ok


def test_c4_icss_calibration():
    rng = np.random.default_rng(4)
    ends_ok = all(
        (lambda s: s.deviation[0] == 0.0 and s.deviation[-1] == 0.0)(icss_statistic(a - a.mean()))
        for a in (rng.normal(size=n) * rng.uniform(0.1, 10) for n in range(8, 400, 13))
    )
    false_pos = sum(len(icss_detect(np.random.default_rng(10_000 + s).normal(size=1000))) > 0 for s in range(500))
    hits = 0
    for s in range(100):
        r = np.random.default_rng(s)
        y = np.r_[r.normal(size=200), 5.0 * r.normal(size=200)]
        hits += any(abs(k - 200) <= 10 for k in icss_detect(y).indices)
    rate = false_pos / 500
    ok = ends_ok and rate <= 0.07 and hits >= 90
    record(4, ok, f"D_0 = D_T = 0: {ends_ok}; false-positive rate {rate:.3f} (<= 0.07); "
                  f"step located within 10 in {hits}/100 (>= 90)")
    assert ok


def _probe(model, X, y, n_probe, seed):
    def loss():
        return mse_loss(model, X, y, np.random.default_rng(5))[0]

    _, grads = mse_loss(model, X, y, np.random.default_rng(5))
    names = sorted(model.params)
    sizes = np.array([model.params[k].size for k in names], dtype=float)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_probe):
        name = names[rng.choice(len(names), p=sizes / sizes.sum())]
        flat = model.params[name].reshape(-1)
        i = rng.integers(flat.size)
        old = flat[i]
        flat[i] = old + 1e-5
        up = loss()
        flat[i] = old - 1e-5
        down = loss()
        flat[i] = old
        num = (up - down) / 2e-5
        ana = grads[name].reshape(-1)[i]
        worst = max(worst, abs(ana - num) / max(abs(ana), abs(num), 1e-7))
    return worst


def test_c5_gradient_checks():
    rng = np.random.default_rng(6)
    X = rng.normal(size=(4, 10, 6))
    y = rng.normal(size=4)
    models = {
        "LSTM": LSTMRegressor(6, hidden=8, layers=2, dropout=0.2, rng=np.random.default_rng(1)),
        "GRU": GRURegressor(6, hidden=8, layers=2, dropout=0.2, rng=np.random.default_rng(2)),
        "TCN": TCNRegressor(6, channels=8, blocks=2, kernel=3, dropout=0.2, rng=np.random.default_rng(3)),
    }
    start = time.perf_counter()
    errors = {name: _probe(m, X, y, 250, k) for k, (name, m) in enumerate(models.items())}
    elapsed = time.perf_counter() - start
    ok = max(errors.values()) < 1e-4 and elapsed < 60
    detail = ", ".join(f"{k} {v:.1e}" for k, v in errors.items())
    record(5, ok, f"max relative gradient error over 250 probes each: {detail} (< 1e-4) in {elapsed:.1f}s (< 60s)")
    assert ok


E2E_TRAINING = {"learning_rate": 0.002, "max_epochs": 60, "patience": 10, "hidden_size": 32, "num_layers": 1,
                "tcn_channels": 16}
E2E_ARCHS = ("lstm-uni", "lstm-multi", "gru", "tcn")


def test_c6_synthetic_end_to_end():
    start = time.perf_counter()
    rmse: dict[tuple[str, bool], list[float]] = {}
    r2: dict[str, list[float]] = {}
    vs_raw_price: dict[str, list[float]] = {}
    for seed in (0, 1, 2):
        frame = regime_switching_frame(3000, seed=seed)
        cfg = RunConfig.from_dict({"pelt": {"penalty": 2000, "min_segment": 100}, "seed": seed,
                                   "training": E2E_TRAINING, "architectures": list(E2E_ARCHS)})
        smooth = denoised_target(cfg, frame)
        for arch in E2E_ARCHS:
            for wt in (True, False):
                res = fit_variant(cfg, frame, Variant(arch, denoise=wt), smooth)
                rmse.setdefault((arch, wt), []).append(res.report.rmse)
                if wt:
                    r2.setdefault(arch, []).append(res.report.r2)
                    vs_raw_price.setdefault(arch, []).append(res.raw_report.rmse)
    elapsed = time.perf_counter() - start
    beats = {a: float(np.median(rmse[(a, True)])) < float(np.median(rmse[(a, False)])) for a in E2E_ARCHS}
    fits = {a: float(np.median(r2[a])) > 0.9 for a in E2E_ARCHS}
    ok = all(beats.values()) and all(fits.values()) and elapsed < 600
    detail = "; ".join(
        f"{a}: RMSE WT {np.median(rmse[(a, True)]):.3f} vs raw {np.median(rmse[(a, False)]):.3f}, "
        f"R2 {np.median(r2[a]):.3f} (WT RMSE against raw prices {np.median(vs_raw_price[a]):.3f})"
        for a in E2E_ARCHS
    )
    record(6, ok, f"median over 3 seeds, {detail}; {elapsed:.0f}s (< 600s)")
    assert ok


def test_c7_metric_arithmetic():
    m = compute_metrics([1.0, 2.0, 3.0], [2.0, 2.0, 2.0])
    exact = m.mae == pytest.approx(2 / 3, abs=1e-15) and m.r2 == 0.0 and abs(m.mape - 400 / 9) < 1e-9
    rng = np.random.default_rng(7)
    violations = 0
    for _ in range(1000):
        n = int(rng.integers(1, 100))
        a = rng.normal(size=n) * rng.uniform(0.1, 50)
        p = a + rng.standard_t(2, size=n)
        r = compute_metrics(a, p)
        violations += r.mae > r.rmse * (1 + 1e-12)
    ok = exact and violations == 0
    record(7, ok, f"hand example MAE {m.mae:.15f}, R2 {m.r2}, MAPE {m.mape:.12f}; "
                  f"MAE <= RMSE violations {violations}/1000")
    assert ok


def test_c8_determinism(tmp_path):
    csv_path = tmp_path / "synthetic.csv"
    write_frame_csv(regime_switching_frame(400, seed=8), csv_path)
    cfg = {"input": str(csv_path), "output": str(tmp_path / "runs"), "window": 10, "seed": 8,
           "pelt": {"penalty": 500, "min_segment": 40}, "architectures": ["lstm-uni", "gru", "tcn"],
           "training": {"max_epochs": 3, "patience": 3, "hidden_size": 6, "num_layers": 1, "tcn_channels": 6,
                        "tcn_blocks": 2}}
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    for _ in range(2):
        assert main(["pipeline", "-q", "--config", str(cfg_path)]) == 0
    runs = sorted((tmp_path / "runs").iterdir())
    a, b = (json.loads((r / "manifest.json").read_text())["artifacts"] for r in runs)
    same_metrics = (runs[0] / "metrics.json").read_bytes() == (runs[1] / "metrics.json").read_bytes()
    ckpts = sorted(k for k in a if k.endswith("checkpoint.json"))
    same_ckpts = bool(ckpts) and all(a[k] == b.get(k) for k in ckpts)
    ok = same_metrics and same_ckpts and a == b
    record(8, ok, f"metrics.json identical: {same_metrics}; {len(ckpts)} checkpoint hashes identical: {same_ckpts}")
    assert ok


EUA_CSV = os.environ.get("BREAKCAST_EUA_CSV")
EUA_CONFIG = os.environ.get("BREAKCAST_EUA_CONFIG")
PUBLISHED_ORDER = ["PELT-WT-TCN", "PELT-WT-GRU", "PELT-WT-LSTM(multi)", "PELT-WT-LSTM(uni)", "BP&ICSS-WT-LSTM"]


@pytest.mark.skipif(not EUA_CSV or not Path(EUA_CSV).is_file(), reason="set BREAKCAST_EUA_CSV to an EUA price CSV")
def test_c9_reproduction(tmp_path):
    base = RunConfig.load(EUA_CONFIG).to_dict() if EUA_CONFIG else {}
    base.update({
        "input": EUA_CSV,
        "output": str(tmp_path),
        "architectures": [{"architecture": "lstm-uni", "break_method": "bp+icss", "name": "BP&ICSS-WT-LSTM"},
                          "lstm-uni", "lstm-multi", "gru", "tcn"],
    })
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(base))
    assert main(["pipeline", "-q", "--config", str(cfg_path)]) == 0
    run = next(p for p in tmp_path.iterdir() if p.is_dir())

    reports = {d["model"]: MetricsReport.from_dict(d) for d in json.loads((run / "metrics.json").read_text())}
    order = [r.model for r in rank_models(reports.values())]
    imp = improvement(reports["BP&ICSS-WT-LSTM"], reports["PELT-WT-TCN"])
    rmses = [reports[m].rmse for m in PUBLISHED_ORDER]
    strict = all(x < y for x, y in zip(rmses, rmses[1:]))
    ok = strict and abs(imp["rmse"] - 70.55) <= 10 and abs(imp["mae"] - 74.42) <= 10
    record(9, ok, f"ranking {order}; RMSE reduction {imp['rmse']:.2f}% (70.55 +/- 10), "
                  f"MAE reduction {imp['mae']:.2f}% (74.42 +/- 10)")
    assert ok
