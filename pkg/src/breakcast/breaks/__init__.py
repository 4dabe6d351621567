"""Structural break detection: PELT, Bai-Perron and ICSS."""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .baiperron import BaiPerronConfig, SingularSegmentError, bai_perron_detect, supf_critical_values
from .core import BreakpointSet, combine_bp_icss, validate_series
from .icss import DEFAULT_CRITICAL, IcssState, icss_detect, icss_statistic
from .pelt import PeltConfig, default_penalty, optimal_partition_bruteforce, pelt_detect, segment_cost

__all__ = [
    "BaiPerronConfig",
    "BreakpointSet",
    "DEFAULT_CRITICAL",
    "IcssState",
    "PeltConfig",
    "SingularSegmentError",
    "bai_perron_detect",
    "combine_bp_icss",
    "default_penalty",
    "detect_bp_icss",
    "detect_per_feature",
    "icss_detect",
    "icss_statistic",
    "optimal_partition_bruteforce",
    "pelt_detect",
    "segment_cost",
    "supf_critical_values",
]


class FeatureBreakError(ValueError):
    def __init__(self, column: str, cause: Exception):
        super().__init__(f"column {column!r}: {cause}")
        self.column = column


def detect_per_feature(frame, config: PeltConfig = PeltConfig()) -> dict[str, BreakpointSet]:
    """Run PELT independently on every column of ``frame`` (target included).

    ``frame`` is a FeatureFrame or a mapping of column name to series. The
    result is keyed in column order.
    """
    columns: Mapping[str, np.ndarray] = frame.columns() if hasattr(frame, "columns") else frame
    if not columns or len(next(iter(columns.values()))) == 0:
        raise ValueError("empty frame")
    out = {}
    for name, values in columns.items():
        try:
            out[name] = pelt_detect(values, config)
        except ValueError as exc:
            raise FeatureBreakError(name, exc) from exc
    return out


def detect_bp_icss(
    y,
    bp_config: BaiPerronConfig = BaiPerronConfig(),
    icss_critical: float = DEFAULT_CRITICAL,
    icss_on_returns: bool = True,
    min_gap: int = 10,
) -> BreakpointSet:
    """Mean-shift breaks from Bai-Perron merged with ICSS variance breaks.

    ICSS runs on first differences by default; a change found after ``k``
    differences is reported at row ``k + 1`` of the level series.
    """
    y = validate_series(y, "y")
    n = len(y)
    bp = bai_perron_detect(y, None, bp_config)
    if icss_on_returns:
        raw = icss_detect(np.diff(y), icss_critical)
        shifted = sorted({min(max(k + 1, 1), n - 1) for k in raw.indices})
        icss = BreakpointSet(tuple(shifted), n, "ICSS")
    else:
        icss = icss_detect(y, icss_critical)
    return combine_bp_icss(bp, icss, min_gap)
