"""Loading, splitting, scaling and windowing of daily price series.

The model input at step t is the unified vector

    z_t = [denoised target, exogenous features..., regime one-hot...]

and every sample pairs the window z_{t-T+1..t} with the target at t+1.
"""

from __future__ import annotations

import csv
import datetime as dt
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np


class DataError(ValueError):
    """Raised for malformed or inconsistent input data."""


@dataclass
class FeatureFrame:
    """Timestamp-aligned target plus exogenous feature columns."""

    timestamps: np.ndarray
    target: np.ndarray
    features: dict[str, np.ndarray] = field(default_factory=dict)
    target_name: str = "price"

    def __post_init__(self) -> None:
        self.timestamps = np.asarray(self.timestamps, dtype="datetime64[D]")
        self.target = np.asarray(self.target, dtype=float)
        self.features = {k: np.asarray(v, dtype=float) for k, v in self.features.items()}
        n = len(self.target)
        if len(self.timestamps) != n:
            raise DataError("timestamps and target differ in length")
        for name, col in self.features.items():
            if col.shape != (n,):
                raise DataError(f"feature {name!r} has length {len(col)}, expected {n}")
        if n > 1 and not np.all(self.timestamps[1:] > self.timestamps[:-1]):
            raise DataError("timestamps must be strictly increasing")

    def __len__(self) -> int:
        return len(self.target)

    @property
    def feature_names(self) -> list[str]:
        return list(self.features)

    def columns(self) -> dict[str, np.ndarray]:
        """All columns, target first."""
        out = {self.target_name: self.target}
        out.update(self.features)
        return out

    def slice(self, start: int, stop: int) -> FeatureFrame:
        return FeatureFrame(
            self.timestamps[start:stop],
            self.target[start:stop],
            {k: v[start:stop] for k, v in self.features.items()},
            self.target_name,
        )

    def select(self, feature_names: Sequence[str]) -> FeatureFrame:
        missing = [f for f in feature_names if f not in self.features]
        if missing:
            raise DataError(f"unknown feature columns: {missing}")
        return FeatureFrame(
            self.timestamps, self.target, {k: self.features[k] for k in feature_names}, self.target_name
        )


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.8
    validation_fraction: float = 0.1

    def __post_init__(self) -> None:
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError(f"train_fraction must lie in (0, 1), got {self.train_fraction}")
        if not 0.0 <= self.validation_fraction < 1.0:
            raise ValueError(f"validation_fraction must lie in [0, 1), got {self.validation_fraction}")


def _parse_float(raw: str) -> float | None:
    raw = raw.strip()
    if raw == "" or raw.lower() in {"na", "nan", "null", "none"}:
        return None
    value = float(raw.replace(",", ""))
    return value if math.isfinite(value) else None


def load_csv(
    path: str | os.PathLike,
    date_column: str = "date",
    target_column: str = "price",
    feature_columns: Sequence[str] | None = None,
    exclude: Iterable[str] = (),
) -> FeatureFrame:
    """Read a daily CSV into a :class:`FeatureFrame`.

    Rows are sorted by date. Empty feature cells are forward-filled from the
    previous row; an empty target cell is an error, as is an empty feature
    cell in the first row. When ``feature_columns`` is None every remaining
    numeric column except those in ``exclude`` becomes a feature.
    """
    path = os.fspath(path)
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DataError(f"{path}: missing header row")
        header = [h.strip() for h in reader.fieldnames]
        reader.fieldnames = header
        for col in (date_column, target_column):
            if col not in header:
                raise DataError(f"{path}: column {col!r} not in header {header}")
        excluded = set(exclude) | {date_column, target_column}
        if feature_columns is None:
            feature_columns = [h for h in header if h not in excluded]
        else:
            unknown = [f for f in feature_columns if f not in header]
            if unknown:
                raise DataError(f"{path}: feature columns {unknown} not in header")
        rows = list(reader)

    dates: list[dt.date] = []
    target: list[float] = []
    feats: dict[str, list[float | None]] = {f: [] for f in feature_columns}
    for lineno, row in enumerate(rows, start=2):
        raw_date = (row.get(date_column) or "").strip()
        try:
            dates.append(dt.date.fromisoformat(raw_date))
        except ValueError:
            raise DataError(f"{path}: row {lineno}: unparsable date {raw_date!r}") from None
        try:
            y = _parse_float(row.get(target_column) or "")
        except ValueError:
            raise DataError(f"{path}: row {lineno}: non-numeric target") from None
        if y is None:
            raise DataError(f"{path}: row {lineno}: missing target value")
        target.append(y)
        for f in feature_columns:
            try:
                feats[f].append(_parse_float(row.get(f) or ""))
            except ValueError:
                raise DataError(f"{path}: row {lineno}: non-numeric value in {f!r}") from None
    if not dates:
        raise DataError(f"{path}: no data rows")

    order = sorted(range(len(dates)), key=lambda i: dates[i])
    for a, b in zip(order, order[1:]):
        if dates[a] == dates[b]:
            raise DataError(f"{path}: duplicate date {dates[a].isoformat()}")

    columns: dict[str, np.ndarray] = {}
    for f, values in feats.items():
        ordered = [values[i] for i in order]
        if ordered[0] is None:
            raise DataError(f"{path}: first row has no value for feature {f!r}")
        filled = np.empty(len(ordered))
        last = ordered[0]
        for i, v in enumerate(ordered):
            if v is not None:
                last = v
            filled[i] = last
        columns[f] = filled

    return FeatureFrame(
        np.array([dates[i] for i in order], dtype="datetime64[D]"),
        np.array([target[i] for i in order]),
        columns,
        target_column,
    )


def split_chronological(frame: FeatureFrame, spec: SplitSpec | float = 0.8) -> tuple[FeatureFrame, FeatureFrame]:
    """First ``floor(n * train_fraction)`` rows train, the remainder test."""
    if not isinstance(spec, SplitSpec):
        spec = SplitSpec(train_fraction=float(spec))
    n = len(frame)
    n_train = int(math.floor(n * spec.train_fraction + 1e-9))
    if n_train < 1 or n - n_train < 1:
        raise DataError(f"split of {n} rows at {spec.train_fraction} leaves an empty part")
    return frame.slice(0, n_train), frame.slice(n_train, n)


@dataclass
class Scaler:
    """Per-column z-score statistics fitted on training rows.

    Columns with zero spread pass through unchanged and are listed in
    ``constant_columns``.
    """

    mean: dict[str, float]
    std: dict[str, float]
    constant_columns: tuple[str, ...] = ()

    def _stats(self, name: str) -> tuple[float, float]:
        if name not in self.mean:
            raise KeyError(f"scaler was not fitted on column {name!r}")
        if name in self.constant_columns:
            return 0.0, 1.0
        return self.mean[name], self.std[name]

    def transform_column(self, name: str, values: np.ndarray) -> np.ndarray:
        mu, sd = self._stats(name)
        return (np.asarray(values, dtype=float) - mu) / sd

    def inverse_column(self, name: str, values: np.ndarray) -> np.ndarray:
        mu, sd = self._stats(name)
        return np.asarray(values, dtype=float) * sd + mu

    def to_dict(self) -> dict:
        return {"mean": self.mean, "std": self.std, "constant_columns": list(self.constant_columns)}

    @classmethod
    def from_dict(cls, d: Mapping) -> Scaler:
        return cls(dict(d["mean"]), dict(d["std"]), tuple(d.get("constant_columns", ())))


def fit_scaler(train: FeatureFrame | Mapping[str, np.ndarray]) -> Scaler:
    columns = train.columns() if isinstance(train, FeatureFrame) else dict(train)
    if not columns or any(len(v) == 0 for v in columns.values()):
        raise DataError("cannot fit a scaler on an empty frame")
    mean, std, constant = {}, {}, []
    for name, values in columns.items():
        values = np.asarray(values, dtype=float)
        mean[name] = float(values.mean())
        std[name] = float(values.std())
        if std[name] == 0.0:
            constant.append(name)
    return Scaler(mean, std, tuple(constant))


def apply_scaler(scaler: Scaler | None, frame: FeatureFrame) -> FeatureFrame:
    if scaler is None:
        raise ValueError("scaler has not been fitted")
    return FeatureFrame(
        frame.timestamps,
        scaler.transform_column(frame.target_name, frame.target),
        {k: scaler.transform_column(k, v) for k, v in frame.features.items()},
        frame.target_name,
    )


@dataclass
class RegimeLabels:
    labels: np.ndarray
    width: int

    def one_hot(self) -> np.ndarray:
        out = np.zeros((len(self.labels), self.width))
        out[np.arange(len(self.labels)), self.labels] = 1.0
        return out


def encode_regimes(breaks: Iterable[int], length: int, width: int | None = None) -> RegimeLabels:
    """Regime label r_t = number of breaks at or before t.

    Break indices count the rows of the segment they close, so break ``3``
    on a length-6 series puts rows 0-2 in regime 0 and rows 3-5 in regime 1.
    ``width`` may exceed m + 1 when labels must share a layout with a longer
    series.
    """
    idx = [int(b) for b in breaks]
    for b in idx:
        if not 1 <= b <= length - 1:
            raise ValueError(f"break index {b} outside [1, {length - 1}]")
    if any(b >= c for b, c in zip(idx, idx[1:])):
        raise ValueError("break indices must be strictly increasing")
    labels = np.searchsorted(np.asarray(idx, dtype=int), np.arange(length), side="right")
    m1 = len(idx) + 1
    if width is None:
        width = m1
    elif width < m1:
        raise ValueError(f"width {width} too small for {len(idx)} breaks")
    return RegimeLabels(labels.astype(int), width)


@dataclass
class WindowedDataset:
    """Sliding windows of unified inputs with next-step targets.

    ``inputs`` has shape (N, T, d); ``index_map[i]`` is the row of the
    original series that ``targets[i]`` belongs to.
    """

    inputs: np.ndarray
    targets: np.ndarray
    index_map: np.ndarray

    def __len__(self) -> int:
        return len(self.targets)

    @property
    def window(self) -> int:
        return self.inputs.shape[1]

    @property
    def input_dim(self) -> int:
        return self.inputs.shape[2]

    def subset(self, idx: np.ndarray | slice) -> WindowedDataset:
        return WindowedDataset(self.inputs[idx], self.targets[idx], self.index_map[idx])


def unified_inputs(
    denoised_target: np.ndarray,
    features: Mapping[str, np.ndarray] | Sequence[np.ndarray] = (),
    regimes: RegimeLabels | None = None,
) -> np.ndarray:
    """Stack z_t = [denoised target, features in order, regime one-hot]."""
    y = np.asarray(denoised_target, dtype=float)
    cols = [y[:, None]]
    feats = features.values() if isinstance(features, Mapping) else features
    for f in feats:
        f = np.asarray(f, dtype=float)
        if f.shape != y.shape:
            raise DataError("feature length differs from target length")
        cols.append(f[:, None])
    if regimes is not None:
        if len(regimes.labels) != len(y):
            raise DataError("regime labels differ in length from target")
        cols.append(regimes.one_hot())
    return np.hstack(cols)


def build_windows(
    denoised_target: np.ndarray,
    features: Mapping[str, np.ndarray] | Sequence[np.ndarray] = (),
    regimes: RegimeLabels | None = None,
    window: int = 30,
    stride: int = 1,
    target: np.ndarray | None = None,
) -> WindowedDataset:
    """Slide a length-``window`` frame over z and pair it with the next target.

    ``target`` defaults to the denoised series; pass the raw series to train
    against raw prices instead.
    """
    z = unified_inputs(denoised_target, features, regimes)
    y = np.asarray(denoised_target if target is None else target, dtype=float)
    n = len(z)
    if len(y) != n:
        raise DataError("target length differs from inputs")
    if window < 1 or stride < 1:
        raise ValueError("window and stride must be positive")
    if n <= window:
        raise DataError(f"series of length {n} too short for window {window}; need at least {window + 1}")
    # last window ends at n - 2 so its target n - 1 exists
    ends = np.arange(window - 1, n - 1, stride)
    offsets = np.arange(window - 1, -1, -1)
    inputs = z[ends[:, None] - offsets[None, :]]
    return WindowedDataset(inputs, y[ends + 1].copy(), ends + 1)
