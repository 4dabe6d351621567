"""Config-driven runs: load, detect breaks, denoise, window, train, evaluate.

A :class:`RunConfig` is a single JSON document. Every field has a default,
so ``{"input": "prices.csv"}`` is a complete configuration. Model variants
are listed under ``architectures`` either by name (``"tcn"``) or as an
object overriding the break method or denoising for that variant::

    {"architecture": "lstm-multi", "break_method": "bp+icss", "name": "BP&ICSS-WT-LSTM"}
"""

from __future__ import annotations

import copy
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Mapping

import numpy as np

from . import __version__
from .breaks import (
    BaiPerronConfig,
    BreakpointSet,
    PeltConfig,
    bai_perron_detect,
    detect_bp_icss,
    icss_detect,
    pelt_detect,
)
from .evaluation import MetricsReport, compute_metrics
from .ingest import (
    DataError,
    FeatureFrame,
    Scaler,
    WindowedDataset,
    build_windows,
    encode_regimes,
    fit_scaler,
    load_csv,
)
from .neural import TrainedModel, TrainingConfig, predict, train
from .wavelet import FAMILIES, denoise, max_level

# variant name -> (network, uses exogenous features)
VARIANTS = {
    "lstm-uni": ("lstm", False),
    "lstm-multi": ("lstm", True),
    "gru": ("gru", True),
    "tcn": ("tcn", True),
}
BREAK_METHODS = ("pelt", "bp", "icss", "bp+icss", "none")
_METHOD_TAGS = {"pelt": "PELT", "bp": "BP", "icss": "ICSS", "bp+icss": "BP&ICSS", "none": ""}
_VARIANT_TAGS = {"lstm-uni": "LSTM(uni)", "lstm-multi": "LSTM(multi)", "gru": "GRU", "tcn": "TCN"}


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


@dataclass(frozen=True)
class Variant:
    architecture: str
    break_method: str | None = None
    denoise: bool | None = None
    name: str | None = None

    def __post_init__(self) -> None:
        if self.architecture not in VARIANTS:
            raise ConfigError(f"unknown architecture {self.architecture!r}; choose from {sorted(VARIANTS)}")
        if self.break_method is not None and self.break_method not in BREAK_METHODS:
            raise ConfigError(f"unknown break method {self.break_method!r}; choose from {BREAK_METHODS}")

    @classmethod
    def parse(cls, spec: str | Mapping) -> Variant:
        if isinstance(spec, str):
            return cls(spec)
        if not isinstance(spec, Mapping) or "architecture" not in spec:
            raise ConfigError(f"architecture entry must be a name or an object with 'architecture': {spec!r}")
        unknown = set(spec) - {f.name for f in fields(cls)}
        if unknown:
            raise ConfigError(f"unknown architecture option(s) {sorted(unknown)}")
        return cls(**spec)

    def to_json(self) -> str | dict:
        d = {k: v for k, v in asdict(self).items() if v is not None}
        return d["architecture"] if len(d) == 1 else d


def _training_defaults() -> dict:
    d = TrainingConfig().to_dict()
    d.pop("seed")  # the run-level seed is the single source
    return d


@dataclass
class RunConfig:
    """Everything a run needs; see the module docstring for the layout."""

    input: str | None = None
    date_column: str = "date"
    target: str = "price"
    features: str | list[str] = "auto"
    exclude: list[str] = field(default_factory=list)
    break_method: str = "pelt"
    pelt: dict = field(default_factory=lambda: {"penalty": None, "min_segment": None, "cost": "normal-mean"})
    bai_perron: dict = field(default_factory=lambda: {"max_breaks": 5, "trim": 0.15, "alpha": 0.05})
    icss: dict = field(default_factory=lambda: {"critical": 1.358, "on_returns": True})
    min_gap: int = 10
    regime_leakage: str = "frozen"
    denoise: bool = True
    wavelet: str = "db4"
    levels: int = 1
    wavelet_mode: str = "symmetric"
    target_mode: str = "denoised"
    window: int = 30
    stride: int = 1
    train_fraction: float = 0.8
    architectures: list = field(default_factory=lambda: ["tcn"])
    training: dict = field(default_factory=_training_defaults)
    seed: int = 0
    output: str | None = None

    def __post_init__(self) -> None:
        if self.break_method not in BREAK_METHODS:
            raise ConfigError(f"unknown break method {self.break_method!r}; choose from {BREAK_METHODS}")
        if self.regime_leakage not in ("frozen", "full"):
            raise ConfigError("regime_leakage must be 'frozen' or 'full'")
        if self.target_mode not in ("denoised", "raw"):
            raise ConfigError("target_mode must be 'denoised' or 'raw'")
        if self.wavelet.lower() not in FAMILIES:
            raise ConfigError(f"unknown wavelet {self.wavelet!r}; choose from {FAMILIES}")
        if self.wavelet_mode not in ("symmetric", "periodic"):
            raise ConfigError("wavelet_mode must be 'symmetric' or 'periodic'")
        if not (isinstance(self.features, list) or self.features == "auto"):
            raise ConfigError("features must be 'auto' or a list of column names")
        if isinstance(self.architectures, (str, Mapping)):
            self.architectures = [self.architectures]
        if not self.architectures:
            raise ConfigError("at least one architecture is required")
        for name, val in (("levels", self.levels), ("window", self.window), ("stride", self.stride), ("min_gap", self.min_gap)):
            if not isinstance(val, int) or isinstance(val, bool) or val < 1:
                raise ConfigError(f"{name} must be a positive integer, got {val!r}")
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError("train_fraction must lie in (0, 1)")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ConfigError(f"seed must be an integer, got {self.seed!r}")
        tags = [variant_tag(self, v) for v in self.variants()]
        if len(set(tags)) != len(tags):
            raise ConfigError(f"architecture entries produce duplicate tags {tags}; give them distinct names")
        self.training_config()
        self.pelt_config()
        self.bp_config()

    @classmethod
    def from_dict(cls, d: Mapping) -> RunConfig:
        base = asdict(cls())
        unknown = set(d) - set(base)
        if unknown:
            raise ConfigError(f"unknown config field(s) {sorted(unknown)}")
        merged = copy.deepcopy(base)
        for key, val in d.items():
            if isinstance(base[key], dict):
                if not isinstance(val, Mapping):
                    raise ConfigError(f"{key} must be an object")
                extra = set(val) - set(base[key])
                if extra:
                    raise ConfigError(f"unknown {key} field(s) {sorted(extra)}")
                merged[key].update(val)
            else:
                merged[key] = val
        try:
            return cls(**merged)
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path) -> RunConfig:
        try:
            with open(path) as fh:
                d = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(d, dict):
            raise ConfigError(f"config {path} must hold a JSON object")
        return cls.from_dict(d)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["architectures"] = [Variant.parse(v).to_json() for v in self.architectures]
        return d

    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON, ignoring where outputs go."""
        d = self.to_dict()
        d.pop("output")
        return hashlib.sha256(json.dumps(d, sort_keys=True).encode()).hexdigest()

    def variants(self) -> list[Variant]:
        return [Variant.parse(v) for v in self.architectures]

    def training_config(self) -> TrainingConfig:
        d = dict(self.training)
        d["seed"] = self.seed
        try:
            return TrainingConfig.from_dict(d)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"training: {exc}") from exc

    def pelt_config(self) -> PeltConfig:
        try:
            return PeltConfig(**self.pelt)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"pelt: {exc}") from exc

    def bp_config(self) -> BaiPerronConfig:
        try:
            return BaiPerronConfig(**self.bai_perron)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bai_perron: {exc}") from exc


def apply_overrides(base: Mapping, overrides: Mapping[str, Any]) -> dict:
    """Set dotted ``section.key`` paths in a copy of ``base``."""
    out = copy.deepcopy(dict(base))
    for path, value in overrides.items():
        keys = path.split(".")
        node = out
        for k in keys[:-1]:
            child = node.setdefault(k, {})
            if not isinstance(child, dict):
                raise ConfigError(f"cannot set {path!r}: {k!r} is not an object")
            node = child
        node[keys[-1]] = value
    return out


# ---------------------------------------------------------------- data stages


def load_frame(cfg: RunConfig) -> FeatureFrame:
    if not cfg.input:
        raise ConfigError("no input CSV given")
    features = None if cfg.features == "auto" else list(cfg.features)
    try:
        return load_csv(cfg.input, cfg.date_column, cfg.target, features, tuple(cfg.exclude))
    except FileNotFoundError as exc:
        raise ConfigError(f"input file not found: {cfg.input}") from exc
    except IsADirectoryError as exc:
        raise ConfigError(f"input path is a directory: {cfg.input}") from exc


def n_train_rows(cfg: RunConfig, n: int) -> int:
    k = int(math.floor(n * cfg.train_fraction + 1e-9))
    if k < 1 or k >= n:
        raise DataError(f"train fraction {cfg.train_fraction} leaves an empty part of a {n}-row series")
    return k


def detect_series(y, method: str, cfg: RunConfig) -> BreakpointSet:
    y = np.asarray(y, dtype=float)
    if method == "pelt":
        return pelt_detect(y, cfg.pelt_config())
    if method == "bp":
        return bai_perron_detect(y, None, cfg.bp_config())
    if method == "icss":
        if not cfg.icss["on_returns"]:
            return icss_detect(y, cfg.icss["critical"])
        raw = icss_detect(np.diff(y), cfg.icss["critical"])
        return BreakpointSet(tuple(k + 1 for k in raw.indices if k + 1 < len(y)), len(y), "ICSS")
    if method == "bp+icss":
        return detect_bp_icss(y, cfg.bp_config(), cfg.icss["critical"], cfg.icss["on_returns"], cfg.min_gap)
    if method == "none":
        return BreakpointSet((), len(y), "PELT")
    raise ConfigError(f"unknown break method {method!r}")


def detect_all(cfg: RunConfig, frame: FeatureFrame, method: str | None = None) -> dict[str, BreakpointSet]:
    """Breaks for every column (target first) over the full series."""
    method = method or cfg.break_method
    return {name: detect_series(col, method, cfg) for name, col in frame.columns().items()}


def regime_breaks(cfg: RunConfig, frame: FeatureFrame, method: str) -> BreakpointSet:
    """Breaks of the raw target that define the regime one-hots.

    In ``frozen`` mode only training rows are searched, so every test step
    carries the last training regime.
    """
    n = len(frame)
    if cfg.regime_leakage == "full":
        return detect_series(frame.target, method, cfg)
    k = n_train_rows(cfg, n)
    found = detect_series(frame.target[:k], method, cfg)
    return BreakpointSet(found.indices, n, found.method, found.statistics, found.extra)


def denoised_target(cfg: RunConfig, frame: FeatureFrame) -> np.ndarray:
    deepest = max_level(len(frame), cfg.wavelet, cfg.wavelet_mode)
    if cfg.levels > deepest:
        raise ConfigError(f"levels={cfg.levels} too deep for {len(frame)} rows with {cfg.wavelet}; max is {deepest}")
    return denoise(frame.target, cfg.wavelet, cfg.levels, cfg.wavelet_mode)


@dataclass
class PreparedData:
    """Scaled windows split at the chronological boundary."""

    variant: Variant
    tag: str
    train: WindowedDataset
    test: WindowedDataset
    scaler: Scaler
    target_name: str
    actual_test: np.ndarray
    regimes: BreakpointSet | None
    n_train: int


def variant_tag(cfg: RunConfig, variant: Variant) -> str:
    if variant.name:
        return variant.name
    method = variant.break_method or cfg.break_method
    use_wt = cfg.denoise if variant.denoise is None else variant.denoise
    parts = [_METHOD_TAGS[method], "WT" if use_wt else "", _VARIANT_TAGS[variant.architecture]]
    return "-".join(p for p in parts if p)


def prepare(cfg: RunConfig, frame: FeatureFrame, variant: Variant, scaler: Scaler | None = None,
            smooth: np.ndarray | None = None) -> PreparedData:
    """Assemble z_t for one variant, scale it and cut it into windows.

    The scaler is fitted on training rows unless one is supplied (for
    evaluating a stored checkpoint). ``smooth`` lets callers reuse an
    already denoised target.
    """
    _, multivariate = VARIANTS[variant.architecture]
    method = variant.break_method or cfg.break_method
    use_wt = cfg.denoise if variant.denoise is None else variant.denoise
    n = len(frame)
    k = n_train_rows(cfg, n)
    raw = frame.target
    z0 = (denoised_target(cfg, frame) if smooth is None else smooth) if use_wt else raw
    y = z0 if cfg.target_mode == "denoised" else raw
    feats = frame.features if multivariate else {}
    name = frame.target_name
    if scaler is None:
        scaler = fit_scaler({name: y[:k], **{f: c[:k] for f, c in feats.items()}})
    missing = [c for c in [name, *feats] if c not in scaler.mean]
    if missing:
        raise ConfigError(f"scaler has no statistics for column(s) {missing}")
    regimes = None
    labels = None
    if method != "none":
        regimes = regime_breaks(cfg, frame, method)
        labels = encode_regimes(regimes.indices, n)
    ds = build_windows(
        scaler.transform_column(name, z0),
        {f: scaler.transform_column(f, c) for f, c in feats.items()},
        labels,
        cfg.window,
        cfg.stride,
        target=scaler.transform_column(name, y),
    )
    is_train = ds.index_map < k
    train_ds, test_ds = ds.subset(np.flatnonzero(is_train)), ds.subset(np.flatnonzero(~is_train))
    if len(train_ds) == 0 or len(test_ds) == 0:
        raise DataError(f"window {cfg.window} leaves no training or no test windows in {n} rows")
    return PreparedData(variant, variant_tag(cfg, variant), train_ds, test_ds, scaler, name,
                        y[test_ds.index_map], regimes, k)


@dataclass
class VariantResult:
    data: PreparedData
    trained: TrainedModel
    predictions: np.ndarray
    report: MetricsReport
    raw_report: MetricsReport


def fit_variant(cfg: RunConfig, frame: FeatureFrame, variant: Variant, smooth: np.ndarray | None = None) -> VariantResult:
    data = prepare(cfg, frame, variant, smooth=smooth)
    net, _ = VARIANTS[variant.architecture]
    trained = train(net, data.train, cfg.training_config(), data.scaler, data.target_name)
    trained.meta = {"variant": variant.to_json(), "tag": data.tag, "config_hash": cfg.config_hash(),
                    "version": __version__}
    return evaluate_variant(cfg, frame, trained, data)


def evaluate_variant(cfg: RunConfig, frame: FeatureFrame, trained: TrainedModel, data: PreparedData) -> VariantResult:
    if data.test.input_dim != trained.input_dim:
        raise ConfigError(
            f"checkpoint expects {trained.input_dim} inputs but the configured data gives {data.test.input_dim}"
        )
    if trained.window is not None and trained.window != data.test.window:
        raise ConfigError(f"checkpoint window {trained.window} differs from configured window {data.test.window}")
    pred = predict(trained, data.test)
    report = compute_metrics(data.actual_test, pred, data.tag, trained.seconds)
    raw_report = compute_metrics(frame.target[data.test.index_map], pred, data.tag, trained.seconds)
    return VariantResult(data, trained, pred, report, raw_report)


def variant_from_checkpoint(cfg: RunConfig, trained: TrainedModel) -> Variant:
    spec = trained.meta.get("variant")
    if spec is not None:
        return Variant.parse(spec)
    matches = [v for v in cfg.variants() if VARIANTS[v.architecture][0] == trained.architecture]
    if not matches:
        raise ConfigError(f"no configured architecture matches checkpoint network {trained.architecture!r}")
    return matches[0]
