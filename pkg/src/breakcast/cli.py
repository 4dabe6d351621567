"""Command-line entry point: ``breakcast <command> [--config FILE] [--key value ...]``.

Commands: detect, denoise, train, evaluate, pipeline. Any config field can
be overridden with a dotted flag, for example ``--training.max_epochs 5`` or
``--architectures '["tcn", "gru"]'``; values are read as JSON when they
parse and as plain strings otherwise.

Each invocation writes into a fresh directory
``<root>/<command>-<UTC timestamp>-<config hash prefix>`` where ``<root>`` is
``output`` from the config, else ``$BREAKCAST_OUTPUT_ROOT``, else ``./runs``.
A lock file in ``<root>`` keeps concurrent runs apart.

Exit status: 0 success, 1 runtime or numeric failure, 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import hashlib
import json
import logging
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .evaluation import comparison_table, rank_models, residual_report, write_predictions_csv
from .ingest import DataError
from .neural import load_checkpoint, save_checkpoint
from .pipeline import (
    ConfigError,
    RunConfig,
    Variant,
    apply_overrides,
    denoised_target,
    detect_all,
    evaluate_variant,
    fit_variant,
    load_frame,
    prepare,
    variant_from_checkpoint,
)
from .wavelet import waverec, wavedec, write_denoised_csv

log = logging.getLogger("breakcast")

OUTPUT_ENV = "BREAKCAST_OUTPUT_ROOT"
LOCK_NAME = ".breakcast.lock"
COMMANDS = ("detect", "denoise", "train", "evaluate", "pipeline")
# files whose content depends on wall-clock and is left out of the manifest hashes
VOLATILE = ("timing.json",)


class UsageError(Exception):
    pass


class RunLockedError(RuntimeError):
    pass


# ------------------------------------------------------------ run directories


class RunDirectory:
    """Append-only output directory guarded by a lock in its parent."""

    def __init__(self, root: Path, command: str, cfg: RunConfig):
        self.root = root
        self.command = command
        self.cfg = cfg
        self.path: Path | None = None
        self._lock: Path | None = None

    def __enter__(self) -> RunDirectory:
        self.root.mkdir(parents=True, exist_ok=True)
        lock = self.root / LOCK_NAME
        try:
            fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise RunLockedError(f"another run holds {lock}; remove it if that run is dead") from None
        with os.fdopen(fd, "w") as fh:
            fh.write(f"{os.getpid()}\n")
        self._lock = lock
        stamp = _dt.datetime.now(_dt.timezone.utc).strftime("%Y%m%dT%H%M%SZ")
        base = f"{self.command}-{stamp}-{self.cfg.config_hash()[:8]}"
        path = self.root / base
        k = 1
        while path.exists():
            k += 1
            path = self.root / f"{base}-{k}"
        path.mkdir()
        self.path = path
        return self

    def __exit__(self, *exc) -> None:
        if self._lock is not None:
            self._lock.unlink(missing_ok=True)

    def file(self, rel: str) -> Path:
        p = self.path / rel
        if p.exists():
            raise FileExistsError(f"refusing to overwrite {p}")
        p.parent.mkdir(parents=True, exist_ok=True)
        return p

    def write_json(self, rel: str, obj) -> Path:
        p = self.file(rel)
        with open(p, "x") as fh:
            json.dump(obj, fh, indent=2, sort_keys=True)
            fh.write("\n")
        return p

    def write_text(self, rel: str, text: str) -> Path:
        p = self.file(rel)
        with open(p, "x") as fh:
            fh.write(text)
        return p

    def write_manifest(self) -> Path:
        artifacts = {}
        for p in sorted(self.path.rglob("*")):
            rel = p.relative_to(self.path).as_posix()
            if p.is_file() and rel not in VOLATILE:
                artifacts[rel] = hashlib.sha256(p.read_bytes()).hexdigest()
        manifest = {
            "command": self.command,
            "version": __version__,
            "config_hash": self.cfg.config_hash(),
            "seed": self.cfg.seed,
            "input_sha256": _file_hash(self.cfg.input),
            "artifacts": artifacts,
            "volatile": [v for v in VOLATILE if (self.path / v).exists()],
        }
        return self.write_json("manifest.json", manifest)


def _file_hash(path) -> str | None:
    if not path or not os.path.isfile(path):
        return None
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def output_root(cfg: RunConfig) -> Path:
    return Path(cfg.output or os.environ.get(OUTPUT_ENV) or "runs")


def _slug(tag: str) -> str:
    return "".join(c if c.isalnum() or c in "-_" else "_" for c in tag)


# ------------------------------------------------------------------- commands


def cmd_detect(cfg: RunConfig, run: RunDirectory) -> dict:
    frame = load_frame(cfg)
    found = detect_all(cfg, frame)
    dates = [str(d) for d in frame.timestamps]
    out = {name: bps.to_records(dates) for name, bps in found.items()}
    run.write_json("breaks.json", out)
    log.info("breaks: %s", {k: len(v) for k, v in out.items()})
    return out


def cmd_denoise(cfg: RunConfig, run: RunDirectory) -> Path:
    frame = load_frame(cfg)
    smooth = denoised_target(cfg, frame)
    roundtrip = waverec(wavedec(frame.target, cfg.wavelet, cfg.levels, cfg.wavelet_mode))
    path = run.file("denoised.csv")
    write_denoised_csv(path, [str(d) for d in frame.timestamps], frame.target, smooth, roundtrip)
    return path


def _write_history(run: RunDirectory, prefix: str, trained) -> None:
    run.write_json(f"{prefix}/history.json", {"best_epoch": trained.best_epoch, "history": trained.history})


def cmd_train(cfg: RunConfig, run: RunDirectory) -> list[Path]:
    frame = load_frame(cfg)
    smooth = denoised_target(cfg, frame) if cfg.denoise or any(v.denoise for v in cfg.variants()) else None
    paths = []
    for variant in cfg.variants():
        res = fit_variant(cfg, frame, variant, smooth)
        prefix = f"models/{_slug(res.data.tag)}"
        path = run.file(f"{prefix}/checkpoint.json")
        save_checkpoint(res.trained, path)
        _write_history(run, prefix, res.trained)
        paths.append(path)
    return paths


def _write_evaluation(run: RunDirectory, prefix: str, res, dates) -> None:
    report = res.report
    report.extra = {"raw_target": res.raw_report.to_dict(include_timing=False)}
    run.write_json(f"{prefix}/metrics.json", report.to_dict(include_timing=False))
    write_predictions_csv(run.file(f"{prefix}/predictions.csv"), dates, res.data.actual_test, res.predictions)
    run.write_json(f"{prefix}/residuals.json", residual_report(res.data.actual_test, res.predictions).to_dict())


def cmd_evaluate(cfg: RunConfig, run: RunDirectory, checkpoint: str) -> dict:
    try:
        trained = load_checkpoint(checkpoint)
    except FileNotFoundError as exc:
        raise ConfigError(f"checkpoint not found: {checkpoint}") from exc
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"unusable checkpoint {checkpoint}: {exc}") from exc
    frame = load_frame(cfg)
    variant = variant_from_checkpoint(cfg, trained)
    data = prepare(cfg, frame, variant, scaler=trained.scaler)
    res = evaluate_variant(cfg, frame, trained, data)
    dates = [str(frame.timestamps[i]) for i in data.test.index_map]
    _write_evaluation(run, ".", res, dates)
    return res.report.to_dict(include_timing=False)


def cmd_pipeline(cfg: RunConfig, run: RunDirectory) -> list:
    frame = load_frame(cfg)
    dates_all = [str(d) for d in frame.timestamps]
    found = detect_all(cfg, frame)
    run.write_json("breaks.json", {name: bps.to_records(dates_all) for name, bps in found.items()})
    smooth = denoised_target(cfg, frame)
    write_denoised_csv(run.file("denoised.csv"), dates_all, frame.target, smooth)
    results = []
    for variant in cfg.variants():
        log.info("training %s", variant.to_json())
        res = fit_variant(cfg, frame, variant, smooth)
        prefix = f"models/{_slug(res.data.tag)}"
        save_checkpoint(res.trained, run.file(f"{prefix}/checkpoint.json"))
        _write_history(run, prefix, res.trained)
        regimes = res.data.regimes
        run.write_json(f"{prefix}/regimes.json", [] if regimes is None else regimes.to_records(dates_all))
        _write_evaluation(run, prefix, res, [dates_all[i] for i in res.data.test.index_map])
        results.append(res)
    reports = [r.report for r in results]
    ranked = rank_models(reports)
    run.write_json("metrics.json", [r.to_dict(include_timing=False) for r in ranked])
    run.write_json("ranking.json", [r.model for r in ranked])
    run.write_text("ranking.txt", comparison_table(ranked, timing=False))
    run.write_json("timing.json", {r.data.tag: r.trained.seconds for r in results})
    log.info("\n%s", comparison_table(ranked))
    return ranked


# ------------------------------------------------------------ argument parsing


def _parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_overrides(tokens: Sequence[str]) -> dict:
    """``--a.b value`` / ``--a.b=value`` pairs into {"a.b": value}."""
    out = {}
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if not tok.startswith("--") or len(tok) == 2:
            raise UsageError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, value = key.split("=", 1)
            i += 1
        else:
            if i + 1 >= len(tokens):
                raise UsageError(f"flag {tok} needs a value")
            value = tokens[i + 1]
            i += 2
        out[key.replace("-", "_")] = _parse_value(value)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="breakcast",
        description="Structural-break aware wavelet/neural price forecasting.",
        epilog="Extra --section.key VALUE flags override fields of the config file.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "detect": "structural breaks for every column -> breaks.json",
        "denoise": "wavelet-denoised target -> denoised.csv",
        "train": "train the listed architectures -> checkpoints and histories",
        "evaluate": "score a checkpoint on the test split -> metrics and residuals",
        "pipeline": "detect, denoise, train and evaluate every architecture, then rank",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--config", help="JSON run configuration")
        p.add_argument("-q", "--quiet", action="store_true", help="only print errors")
        if name == "evaluate":
            p.add_argument("--checkpoint", required=True, help="checkpoint.json written by train or pipeline")
    return parser


def resolve_config(config_path: str | None, overrides: dict) -> RunConfig:
    base = {}
    if config_path:
        base = RunConfig.load(config_path).to_dict()
    return RunConfig.from_dict(apply_overrides(base, overrides))


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args, rest = parser.parse_known_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(message)s")
    try:
        cfg = resolve_config(args.config, parse_overrides(rest))
        with RunDirectory(output_root(cfg), args.command, cfg) as run:
            run.write_json("config.json", cfg.to_dict())
            if args.command == "detect":
                cmd_detect(cfg, run)
            elif args.command == "denoise":
                cmd_denoise(cfg, run)
            elif args.command == "train":
                cmd_train(cfg, run)
            elif args.command == "evaluate":
                cmd_evaluate(cfg, run, args.checkpoint)
            else:
                cmd_pipeline(cfg, run)
            run.write_manifest()
        print(run.path)
        return 0
    except (UsageError, ConfigError) as exc:
        print(f"breakcast: error: {exc}", file=sys.stderr)
        return 2
    except (RunLockedError, DataError, ArithmeticError, ValueError, OSError) as exc:
        print(f"breakcast: failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
