"""JSON checkpoints: architecture, shapes, flat parameters, scaler, config."""

from __future__ import annotations

import json
import os

import numpy as np

from ..ingest import Scaler
from .training import TrainedModel, TrainingConfig, build_model

FORMAT = "breakcast-checkpoint"
VERSION = 1


def checkpoint_dict(trained: TrainedModel) -> dict:
    params = {
        name: {"shape": list(arr.shape), "data": [float(x) for x in arr.ravel()]}
        for name, arr in sorted(trained.model.params.items())
    }
    return {
        "format": FORMAT,
        "version": VERSION,
        "architecture": trained.architecture,
        "model": trained.model.spec(),
        "params": params,
        "scaler": None if trained.scaler is None else trained.scaler.to_dict(),
        "target_name": trained.target_name,
        "window": trained.window,
        "seed": trained.seed,
        "best_epoch": trained.best_epoch,
        "config": trained.config.to_dict(),
        "meta": trained.meta,
    }


def save_checkpoint(trained: TrainedModel, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        json.dump(checkpoint_dict(trained), fh, sort_keys=True)


def load_checkpoint(path: str | os.PathLike) -> TrainedModel:
    with open(path) as fh:
        d = json.load(fh)
    if d.get("format") != FORMAT:
        raise ValueError(f"{path}: not a {FORMAT} file")
    if d.get("version") != VERSION:
        raise ValueError(f"{path}: unsupported checkpoint version {d.get('version')}")
    config = TrainingConfig.from_dict(d["config"])
    spec = d["model"]
    model = build_model(d["architecture"], spec["input_dim"], config)
    for name, entry in d["params"].items():
        if name not in model.params:
            raise ValueError(f"{path}: unexpected parameter {name!r}")
        arr = np.asarray(entry["data"], dtype=float).reshape(entry["shape"])
        if arr.shape != model.params[name].shape:
            raise ValueError(f"{path}: parameter {name!r} has shape {arr.shape}, expected {model.params[name].shape}")
        model.params[name] = arr
    missing = set(model.params) - set(d["params"])
    if missing:
        raise ValueError(f"{path}: missing parameters {sorted(missing)}")
    scaler = None if d["scaler"] is None else Scaler.from_dict(d["scaler"])
    return TrainedModel(
        d["architecture"], model, config, [], d["best_epoch"], 0.0, scaler, d["target_name"], d["window"],
        d.get("meta", {}),
    )
