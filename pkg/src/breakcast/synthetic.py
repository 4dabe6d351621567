"""Seeded regime-switching price series for demos and end-to-end tests."""

from __future__ import annotations

import csv
import os

import numpy as np

from .ingest import FeatureFrame

# (level, AR coefficient, innovation std) for each regime
DEFAULT_REGIMES = ((20.0, 0.98, 0.5), (32.0, 0.98, 0.5), (26.0, 0.98, 0.5))


def regime_switching_frame(
    n: int = 3000,
    seed: int = 0,
    regimes=DEFAULT_REGIMES,
    noise: float = 0.5,
    start: str = "2010-01-01",
) -> FeatureFrame:
    """Piecewise AR(1) around shifting levels, observed with white noise.

    The regimes split ``n`` into equal consecutive blocks. One exogenous
    column, ``driver``, tracks the latent AR state with its own noise.
    """
    rng = np.random.default_rng(seed)
    k = len(regimes)
    bounds = [round(j * n / k) for j in range(k + 1)]
    x = np.empty(n)
    prev = regimes[0][0]
    for j, (level, phi, sigma) in enumerate(regimes):
        for t in range(bounds[j], bounds[j + 1]):
            prev = level + phi * (prev - level) + sigma * rng.standard_normal()
            x[t] = prev
    price = x + noise * rng.standard_normal(n)
    driver = 0.8 * x + 0.5 * rng.standard_normal(n)
    dates = np.datetime64(start, "D") + np.arange(n)
    return FeatureFrame(dates, price, {"driver": driver}, "price")


def write_frame_csv(frame: FeatureFrame, path: str | os.PathLike, date_column: str = "date") -> None:
    cols = frame.columns()
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([date_column, *cols])
        for i, d in enumerate(frame.timestamps):
            w.writerow([str(d), *(repr(float(c[i])) for c in cols.values())])
