"""Elementwise helpers, initialisers and debug assertions."""

from __future__ import annotations

import os

import numpy as np

DEBUG = os.environ.get("BREAKCAST_DEBUG", "") not in ("", "0")


def sigmoid(x: np.ndarray) -> np.ndarray:
    # tanh form never overflows
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def glorot(rng: np.random.Generator, fan_in: int, fan_out: int, shape: tuple[int, ...]) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def dropout_mask(rng: np.random.Generator | None, shape: tuple[int, ...], rate: float) -> np.ndarray | None:
    """Inverted-dropout mask (kept units scaled by 1 / (1 - rate)), or None."""
    if rng is None or rate <= 0.0:
        return None
    keep = 1.0 - rate
    return (rng.random(shape) < keep) / keep


def check_unit_range(name: str, x: np.ndarray, low: float) -> None:
    """Debug-mode range check on gate activations.

    Saturated gates round to the interval ends in double precision, so the
    check is on the closed interval [low, 1].
    """
    if DEBUG and (np.any(x < low) or np.any(x > 1.0) or not np.all(np.isfinite(x))):
        raise FloatingPointError(f"{name} left [{low}, 1]")


def check_finite(name: str, x: np.ndarray) -> None:
    if DEBUG and not np.all(np.isfinite(x)):
        raise FloatingPointError(f"non-finite values in {name}")
