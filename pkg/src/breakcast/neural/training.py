"""Mini-batch training with Adam, chronological validation and early stopping."""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from ..ingest import Scaler, WindowedDataset
from .gru import GRURegressor
from .lstm import LSTMRegressor
from .optim import Adam
from .tcn import TCNRegressor

ARCHITECTURES = ("lstm", "gru", "tcn")


@dataclass(frozen=True)
class TrainingConfig:
    learning_rate: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    batch_size: int = 64
    max_epochs: int = 50
    patience: int = 10
    validation_fraction: float = 0.10
    seed: int = 0
    hidden_size: int = 128
    num_layers: int = 2
    dropout: float = 0.2
    tcn_channels: int = 64
    tcn_blocks: int = 4
    tcn_kernel: int = 3

    def __post_init__(self) -> None:
        if self.learning_rate < 0 or self.batch_size < 1 or self.max_epochs < 1:
            raise ValueError("learning_rate >= 0, batch_size >= 1 and max_epochs >= 1 required")
        if not 0 < self.patience <= self.max_epochs:
            raise ValueError("patience must lie in [1, max_epochs]")
        if not 0.0 < self.validation_fraction < 1.0:
            raise ValueError("validation_fraction must lie in (0, 1)")
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError("dropout must lie in [0, 1)")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> TrainingConfig:
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"unknown training options: {sorted(unknown)}")
        return cls(**d)


def build_model(arch: str, input_dim: int, config: TrainingConfig, rng: np.random.Generator | None = None):
    if arch == "lstm":
        return LSTMRegressor(input_dim, config.hidden_size, config.num_layers, config.dropout, rng)
    if arch == "gru":
        return GRURegressor(input_dim, config.hidden_size, config.num_layers, config.dropout, rng)
    if arch == "tcn":
        return TCNRegressor(input_dim, config.tcn_channels, config.tcn_blocks, config.tcn_kernel, config.dropout, rng)
    raise ValueError(f"unknown architecture {arch!r}; choose from {ARCHITECTURES}")


def mse_loss(model, X: np.ndarray, y: np.ndarray, rng: np.random.Generator | None = None):
    """Mean squared error and its parameter gradients."""
    pred, cache = model.forward(X, rng)
    err = pred - y
    loss = float(np.mean(err * err))
    grads = model.backward(cache, 2.0 * err / len(y))
    return loss, grads


def forward_sequence(model, X: np.ndarray, batch_size: int = 1024) -> np.ndarray:
    """Inference-mode predictions in fixed-size chunks."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 3:
        raise ValueError("expected a (N, T, d) array")
    if X.shape[2] != model.input_dim:
        raise ValueError(f"input dimension {X.shape[2]} does not match model ({model.input_dim})")
    if len(X) == 0:
        return np.zeros(0)
    return np.concatenate([model.predict(X[i : i + batch_size]) for i in range(0, len(X), batch_size)])


@dataclass
class TrainedModel:
    architecture: str
    model: object
    config: TrainingConfig
    history: list[dict] = field(default_factory=list)
    best_epoch: int = 0
    seconds: float = 0.0
    scaler: Scaler | None = None
    target_name: str | None = None
    window: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def seed(self) -> int:
        return self.config.seed

    @property
    def input_dim(self) -> int:
        return self.model.input_dim


def train(architecture: str, dataset: WindowedDataset, config: TrainingConfig = TrainingConfig(),
          scaler: Scaler | None = None, target_name: str | None = None) -> TrainedModel:
    """Fit a model; returns the parameters of the best validation epoch.

    The last ``validation_fraction`` of the windows (in time order) is held
    out. Training batches are reshuffled every epoch from ``config.seed``; the
    final short batch is kept.
    """
    N = len(dataset)
    n_val = int(math.floor(N * config.validation_fraction))
    if n_val < 1:
        raise ValueError(f"{N} windows leave an empty validation set at fraction {config.validation_fraction}")
    n_train = N - n_val
    if n_train < 1:
        raise ValueError("no training windows left after the validation split")
    Xtr, ytr = dataset.inputs[:n_train], dataset.targets[:n_train]
    Xva, yva = dataset.inputs[n_train:], dataset.targets[n_train:]

    rng = np.random.default_rng(config.seed)
    model = build_model(architecture, dataset.input_dim, config, rng)
    opt = Adam(config.learning_rate, config.beta1, config.beta2, config.epsilon)
    best = math.inf
    best_params = {k: v.copy() for k, v in model.params.items()}
    best_epoch = 0
    wait = 0
    history = []
    start = time.perf_counter()
    for epoch in range(1, config.max_epochs + 1):
        order = rng.permutation(n_train)
        total = 0.0
        for i in range(0, n_train, config.batch_size):
            idx = order[i : i + config.batch_size]
            loss, grads = mse_loss(model, Xtr[idx], ytr[idx], rng)
            opt.step(model.params, grads)
            total += loss * len(idx)
        err = forward_sequence(model, Xva) - yva
        val = float(np.mean(err * err))
        history.append({"epoch": epoch, "train_mse": total / n_train, "val_mse": val})
        if not math.isfinite(val):
            raise FloatingPointError(f"validation loss became {val} at epoch {epoch}")
        if val < best:
            best, best_epoch, wait = val, epoch, 0
            best_params = {k: v.copy() for k, v in model.params.items()}
        else:
            wait += 1
            if wait >= config.patience:
                break
    model.params = best_params
    return TrainedModel(
        architecture, model, config, history, best_epoch, time.perf_counter() - start,
        scaler, target_name, dataset.window,
    )


def predict(trained: TrainedModel, dataset: WindowedDataset) -> np.ndarray:
    """One-step predictions in original units, aligned with ``dataset.index_map``."""
    if dataset.input_dim != trained.input_dim:
        raise ValueError(f"dataset has {dataset.input_dim} inputs, model expects {trained.input_dim}")
    pred = forward_sequence(trained.model, dataset.inputs)
    if trained.scaler is None:
        return pred
    if trained.target_name is None or trained.target_name not in trained.scaler.mean:
        raise ValueError(f"scaler has no statistics for target {trained.target_name!r}")
    return trained.scaler.inverse_column(trained.target_name, pred)
