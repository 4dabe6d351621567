"""Penalised optimal partitioning with PELT pruning.

Minimises  sum_i C(y[tau_{i-1}:tau_i]) + beta * m  over segmentations whose
segments all have at least ``min_segment`` points. The pruning constant is
K = 0, which is exact for both shipped costs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .core import BreakpointSet, validate_series

CostKind = Literal["normal-mean", "normal-meanvar"]
BRUTEFORCE_LIMIT = 2000
_LOG_2PI_1 = math.log(2.0 * math.pi) + 1.0


@dataclass(frozen=True)
class PeltConfig:
    """``penalty=None`` selects the default for the cost kind (see :func:`default_penalty`)."""

    penalty: float | None = None
    min_segment: int | None = None
    cost: CostKind = "normal-mean"

    def __post_init__(self) -> None:
        if self.cost not in ("normal-mean", "normal-meanvar"):
            raise ValueError(f"unknown cost {self.cost!r}")
        if self.penalty is not None and not self.penalty >= 0:
            raise ValueError("penalty must be nonnegative")
        if self.min_segment is not None:
            floor = 2 if self.cost == "normal-meanvar" else 1
            if self.min_segment < floor:
                raise ValueError(f"min_segment must be >= {floor} for {self.cost}")

    @property
    def segment(self) -> int:
        if self.min_segment is not None:
            return self.min_segment
        return 5 if self.cost == "normal-meanvar" else 2


def default_penalty(y: np.ndarray, cost: CostKind = "normal-mean", p: float = 2.0) -> float:
    """BIC-flavoured penalty.

    normal-mean: ``p * sigma2 * ln n`` with sigma2 = var(diff(y)) / 2, which
    ignores level shifts and slow trends. normal-meanvar costs are already in
    log-likelihood units, so the penalty is ``p * ln n``.
    """
    n = len(y)
    if cost == "normal-meanvar":
        return p * math.log(n)
    sigma2 = float(np.var(np.diff(y))) / 2.0 if n > 2 else 0.0
    return p * sigma2 * math.log(n)


def segment_cost(y: np.ndarray, kind: CostKind) -> Callable[[np.ndarray | int, int], np.ndarray]:
    """Return ``cost(starts, end)`` giving C(y[s:end]) for each start s."""
    z = y - y.mean()
    cs = np.concatenate(([0.0], np.cumsum(z)))
    cq = np.concatenate(([0.0], np.cumsum(z * z)))

    def sse(s, t):
        length = t - s
        total = cs[t] - cs[s]
        return np.maximum(cq[t] - cq[s] - total * total / length, 0.0)

    if kind == "normal-mean":
        return sse

    # variance floor keeps exactly-constant segments finite
    floor = 1e-12 * max(float(np.var(z)), 1e-300)

    def nll(s, t):
        length = t - s
        var = np.maximum(sse(s, t) / length, floor)
        return length * (np.log(var) + _LOG_2PI_1)

    return nll


def _prepare(series, config: PeltConfig) -> tuple[np.ndarray, int, float]:
    y = validate_series(series)
    m = config.segment
    if len(y) < 2 * m:
        raise ValueError(f"series of length {len(y)} shorter than 2 * min_segment = {2 * m}")
    beta = default_penalty(y, config.cost) if config.penalty is None else float(config.penalty)
    return y, m, beta


def _backtrack(last: np.ndarray, n: int) -> tuple[int, ...]:
    out = []
    t = n
    while t > 0:
        t = int(last[t])
        if t > 0:
            out.append(t)
    return tuple(reversed(out))


def pelt_detect(series, config: PeltConfig = PeltConfig()) -> BreakpointSet:
    """Exact penalised segmentation in near-linear time.

    A candidate ``s`` that satisfies F(s) + C(s, t) > F(t) at time t can
    never again be optimal once ``t`` itself is an admissible split, i.e.
    from time ``t + min_segment`` on, so it is dropped then.
    """
    y, m, beta = _prepare(series, config)
    n = len(y)
    cost = segment_cost(y, config.cost)
    F = np.full(n + 1, np.inf)
    F[0] = -beta
    last = np.zeros(n + 1, dtype=np.int64)
    prune_at = np.full(n + 1, n + 1, dtype=np.int64)
    cands = np.zeros(1, dtype=np.int64)
    for t in range(m, n + 1):
        s_new = t - m
        if s_new >= m:
            cands = np.append(cands, s_new)
        cands = cands[prune_at[cands] > t]
        fit = F[cands] + cost(cands, t)
        k = int(np.argmin(fit))
        F[t] = fit[k] + beta
        last[t] = cands[k]
        tol = 1e-10 * max(1.0, abs(F[t]))
        dead = cands[fit > F[t] + tol]
        if dead.size:
            prune_at[dead] = np.minimum(prune_at[dead], t + m)
    return BreakpointSet(_backtrack(last, n), n, "PELT", extra={"penalty": beta, "cost": float(F[n])})


def optimal_partition_bruteforce(series, config: PeltConfig = PeltConfig()) -> BreakpointSet:
    """O(n^2) optimal partitioning without pruning; the reference for PELT."""
    y, m, beta = _prepare(series, config)
    n = len(y)
    if n > BRUTEFORCE_LIMIT:
        raise ValueError(f"series length {n} exceeds brute-force limit {BRUTEFORCE_LIMIT}")
    cost = segment_cost(y, config.cost)
    F = np.full(n + 1, np.inf)
    F[0] = -beta
    last = np.zeros(n + 1, dtype=np.int64)
    for t in range(m, n + 1):
        cands = np.concatenate(([0], np.arange(m, t - m + 1)))
        fit = F[cands] + cost(cands, t)
        k = int(np.argmin(fit))
        F[t] = fit[k] + beta
        last[t] = cands[k]
    return BreakpointSet(_backtrack(last, n), n, "PELT", extra={"penalty": beta, "cost": float(F[n])})
