"""Iterated cumulative sums of squares for variance changes (Inclan-Tiao).

With centred observations a_t, C_k = sum_{t<=k} a_t^2 and

    D_k = C_k / C_T - k / T,      D_0 = D_T = 0.

A variance change is flagged at argmax |D_k| when sqrt(T/2) max |D_k|
exceeds the critical value (1.358 is the 95% quantile of the supremum of a
Brownian bridge). The iteration narrows in on the first and last change,
then re-tests every change between its neighbours until the set is stable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BreakpointSet, validate_series

DEFAULT_CRITICAL = 1.358
MIN_TEST_LENGTH = 8


@dataclass(frozen=True)
class IcssState:
    cumsum: np.ndarray  # C_0..C_T
    deviation: np.ndarray  # D_0..D_T
    statistic: float  # sqrt(T/2) max |D_k|
    argmax: int  # k*, the last row of the first regime
    critical: float = DEFAULT_CRITICAL

    @property
    def exceeds(self) -> bool:
        return self.statistic > self.critical


def icss_statistic(a, critical: float = DEFAULT_CRITICAL) -> IcssState:
    """D_k path for residuals ``a`` (already centred)."""
    a = np.asarray(a, dtype=float)
    T = len(a)
    c = np.concatenate(([0.0], np.cumsum(a * a)))
    if c[-1] <= 0.0:
        raise ValueError("zero variance: cumulative sum of squares is 0")
    d = c / c[-1] - np.arange(T + 1) / T
    d[0] = 0.0
    d[-1] = 0.0
    inner = np.abs(d[1:T])
    k = int(np.argmax(inner)) + 1 if T > 1 else 0
    stat = float(np.sqrt(T / 2.0) * inner.max()) if T > 1 else 0.0
    return IcssState(c, d, stat, k, critical)


def icss_detect(y, critical: float = DEFAULT_CRITICAL, max_iter: int = 50) -> BreakpointSet:
    """Inclan-Tiao iterative search for variance change points in ``y``.

    ``y`` is centred once on its full-sample mean; run it on returns rather
    than price levels when the level drifts.
    """
    y = validate_series(y, "y")
    n = len(y)
    if n < MIN_TEST_LENGTH:
        raise ValueError(f"ICSS needs at least {MIN_TEST_LENGTH} observations, got {n}")
    a = y - y.mean()
    if not np.any(a != 0.0):
        raise ValueError("zero variance series")

    def scan(lo: int, hi: int) -> int | None:
        if hi - lo < MIN_TEST_LENGTH or not np.any(a[lo:hi] != 0.0):
            return None
        st = icss_statistic(a[lo:hi], critical)
        return lo + st.argmax if st.exceeds else None

    found: list[int] = []
    lo, hi = 0, n
    while True:
        k = scan(lo, hi)
        if k is None:
            break
        first = k
        while (k2 := scan(lo, first)) is not None:
            first = k2
        last = k
        while (k2 := scan(last, hi)) is not None:
            last = k2
        if first == last:
            found.append(first)
            break
        found += [first, last]
        lo, hi = first, last

    cps = sorted(set(found))
    for _ in range(max_iter):
        bounds = [0, *cps, n]
        refined = set()
        for j in range(1, len(bounds) - 1):
            k = scan(bounds[j - 1], bounds[j + 1])
            if k is not None:
                refined.add(k)
        refined_list = sorted(refined)
        if refined_list == cps:
            break
        cps = refined_list

    stats = []
    bounds = [0, *cps, n]
    for j in range(1, len(bounds) - 1):
        seg = a[bounds[j - 1] : bounds[j + 1]]
        stats.append(icss_statistic(seg, critical).statistic)
    return BreakpointSet(tuple(cps), n, "ICSS", statistics=tuple(stats))
