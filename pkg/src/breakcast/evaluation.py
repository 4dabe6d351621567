"""Forecast accuracy metrics, residual diagnostics and model comparison."""

from __future__ import annotations

import csv
import math
import os
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAPE_EPS = 1e-9


@dataclass
class MetricsReport:
    """MAE, RMSE and R^2 in the target's units; MAPE in percent.

    ``mape`` is None when every actual value is (numerically) zero, ``r2``
    is None when the actual series is constant. ``mape_excluded`` counts
    the timesteps left out of MAPE because |actual| < 1e-9.
    """

    model: str
    mae: float
    rmse: float
    mape: float | None
    r2: float | None
    n: int
    mape_excluded: int = 0
    training_seconds: float | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self, include_timing: bool = True) -> dict:
        d = asdict(self)
        if not include_timing:
            d.pop("training_seconds")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> MetricsReport:
        return cls(**d)


def _pair(actual, predicted) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(actual, dtype=float).ravel()
    p = np.asarray(predicted, dtype=float).ravel()
    if a.shape != p.shape:
        raise ValueError(f"actual ({a.size}) and predicted ({p.size}) differ in length")
    if a.size == 0:
        raise ValueError("empty series")
    return a, p


def compute_metrics(actual, predicted, model: str = "", training_seconds: float | None = None) -> MetricsReport:
    a, p = _pair(actual, predicted)
    e = a - p
    mae = float(np.mean(np.abs(e)))
    rmse = float(np.sqrt(np.mean(e * e)))
    ok = np.abs(a) >= MAPE_EPS
    mape = float(100.0 * np.mean(np.abs(e[ok] / a[ok]))) if ok.any() else None
    ss_tot = float(np.sum((a - a.mean()) ** 2))
    r2 = 1.0 - float(np.sum(e * e)) / ss_tot if ss_tot > 0.0 else None
    return MetricsReport(model, mae, rmse, mape, r2, int(a.size), int((~ok).sum()), training_seconds)


def pearson_corr(x, y) -> float:
    x, y = _pair(x, y)
    if x.size < 2:
        raise ValueError("need at least two observations")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("correlation undefined for a constant series")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def correlation_table(columns: dict[str, np.ndarray], target: str) -> dict[str, float | None]:
    """Pearson r of every column against ``target``; None where undefined."""
    out: dict[str, float | None] = {}
    for name, col in columns.items():
        if name == target:
            continue
        try:
            out[name] = pearson_corr(columns[target], col)
        except ValueError:
            out[name] = None
    return out


@dataclass
class ResidualSeries:
    residuals: np.ndarray
    edges: np.ndarray
    counts: np.ndarray
    mean: float
    std: float
    skewness: float | None

    def to_dict(self) -> dict:
        return {
            "residuals": self.residuals.tolist(),
            "histogram": {"edges": self.edges.tolist(), "counts": self.counts.tolist()},
            "summary": {"mean": self.mean, "std": self.std, "skewness": self.skewness},
        }


def residual_report(actual, predicted, bins: int = 20) -> ResidualSeries:
    """Residuals (actual - predicted) with an equal-width histogram over their range."""
    a, p = _pair(actual, predicted)
    r = a - p
    counts, edges = np.histogram(r, bins=bins, range=(float(r.min()), float(r.max())))
    std = float(r.std())
    skew = float(np.mean(((r - r.mean()) / std) ** 3)) if std > 0 else None
    return ResidualSeries(r, edges, counts, float(r.mean()), std, skew)


def rank_models(reports: Iterable[MetricsReport]) -> list[MetricsReport]:
    """Ascending RMSE, ties broken by MAE and then by model tag."""
    reports = list(reports)
    if not reports:
        raise ValueError("nothing to rank")
    return sorted(reports, key=lambda r: (r.rmse, r.mae, r.model))


def improvement(reference: MetricsReport, candidate: MetricsReport) -> dict[str, float | None]:
    """Percent reduction 100 * (ref - cand) / ref for MAE, RMSE and MAPE."""
    out: dict[str, float | None] = {}
    for name in ("mae", "rmse", "mape"):
        ref, cand = getattr(reference, name), getattr(candidate, name)
        if ref is None or cand is None:
            out[name] = None
            continue
        if ref <= 0:
            raise ValueError(f"reference {name} must be positive, got {ref}")
        out[name] = 100.0 * (ref - cand) / ref
    return out


def _fmt(x: float | None, digits: int = 4) -> str:
    return "n/a" if x is None else f"{x:.{digits}f}"


def comparison_table(reports: Sequence[MetricsReport], timing: bool = True) -> str:
    """Plain-text table in ranking order; ``timing=False`` drops wall-clock."""
    ranked = rank_models(reports)
    rows = [("rank", "model", "MAE", "RMSE", "MAPE(%)", "R2") + (("train_s",) if timing else ())]
    for k, r in enumerate(ranked, start=1):
        row = (str(k), r.model, _fmt(r.mae), _fmt(r.rmse), _fmt(r.mape), _fmt(r.r2))
        rows.append(row + ((_fmt(r.training_seconds, 1),) if timing else ()))
    widths = [max(len(row[c]) for row in rows) for c in range(len(rows[0]))]
    lines = []
    for i, row in enumerate(rows):
        cells = [row[0].rjust(widths[0]), row[1].ljust(widths[1])] + [v.rjust(w) for v, w in zip(row[2:], widths[2:])]
        lines.append("  ".join(cells).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def write_predictions_csv(path: str | os.PathLike, dates: Sequence, actual, predicted) -> None:
    """CSV with columns date, actual, predicted, residual."""
    a, p = _pair(actual, predicted)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["date", "actual", "predicted", "residual"])
        for d, x, y in zip(dates, a, p):
            w.writerow([str(d), repr(float(x)), repr(float(y)), repr(float(x - y))])
