"""Breakpoint containers and helpers shared by the detectors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

METHODS = ("PELT", "BaiPerron", "ICSS", "Combined")


@dataclass(frozen=True)
class BreakpointSet:
    """Strictly increasing break positions on a series of length ``n``.

    A break ``tau`` closes its segment: rows ``[prev, tau)`` form one regime
    and the next regime starts at row ``tau``.
    """

    indices: tuple[int, ...]
    n: int
    method: str
    statistics: tuple[float, ...] | None = None
    extra: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if any(not 1 <= i <= self.n - 1 for i in idx):
            raise ValueError(f"break indices {idx} outside [1, {self.n - 1}]")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"break indices {idx} not strictly increasing")
        if self.statistics is not None:
            object.__setattr__(self, "statistics", tuple(float(s) for s in self.statistics))

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def segments(self) -> list[tuple[int, int]]:
        bounds = (0, *self.indices, self.n)
        return list(zip(bounds[:-1], bounds[1:]))

    def to_records(self, dates: Sequence | None = None) -> list[dict]:
        """JSON-ready records ``{index, date, method, statistic}``."""
        stats = self.statistics or ()
        out = []
        for k, idx in enumerate(self.indices):
            out.append(
                {
                    "index": idx,
                    "date": None if dates is None else str(dates[idx]),
                    "method": self.method,
                    "statistic": stats[k] if k < len(stats) else None,
                }
            )
        return out


def validate_series(series: Iterable[float], name: str = "series") -> np.ndarray:
    y = np.asarray(series, dtype=float)
    if y.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(y)):
        raise ValueError(f"{name} contains non-finite values")
    return y


def combine_bp_icss(bp: BreakpointSet, icss: BreakpointSet, min_gap: int = 10) -> BreakpointSet:
    """Union of two break sets; breaks within ``min_gap`` of a kept one are dropped."""
    if bp.n != icss.n:
        raise ValueError(f"break sets refer to different lengths ({bp.n} vs {icss.n})")
    kept: list[int] = []
    for idx in sorted(set(bp.indices) | set(icss.indices)):
        if not kept or idx - kept[-1] >= min_gap:
            kept.append(idx)
    return BreakpointSet(tuple(kept), bp.n, "Combined")
