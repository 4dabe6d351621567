"""Multiple structural breaks in a linear regression (Bai-Perron).

Break dates for every break count up to ``max_breaks`` come from one dynamic
programme over segment residual sums of squares. The number of breaks is
chosen by the sequential sup-F(l+1 | l) test: starting at l = 0, a break is
added while the best single extra break within the current segments lowers
the RSS by more than the critical value allows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._supf_table import SUPF_CRITICAL
from .core import BreakpointSet, validate_series


class SingularSegmentError(ValueError):
    pass


@dataclass(frozen=True)
class BaiPerronConfig:
    max_breaks: int = 5
    trim: float = 0.15
    alpha: float = 0.05
    # overrides the table; index l gives the l-vs-(l+1) critical value
    critical_values: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.max_breaks < 1:
            raise ValueError("max_breaks must be >= 1")
        if not 0.0 < self.trim < 0.5:
            raise ValueError("trim must lie in (0, 0.5)")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")


def supf_critical_values(q: int, trim: float, alpha: float) -> tuple[float, ...]:
    key = (q, round(trim, 2), alpha)
    if key not in SUPF_CRITICAL:
        raise ValueError(
            f"no tabulated critical values for q={q}, trim={trim}, alpha={alpha}; "
            "pass critical_values explicitly"
        )
    return SUPF_CRITICAL[key]


class _SegmentRSS:
    """Residual sum of squares of OLS fits on y[i:j], vectorised over i."""

    def __init__(self, y: np.ndarray, X: np.ndarray | None):
        self.n = len(y)
        self.intercept_only = X is None
        if X is None:
            z = y - y.mean()
            self.cs = np.concatenate(([0.0], np.cumsum(z)))
            self.cq = np.concatenate(([0.0], np.cumsum(z * z)))
            self.q = 1
        else:
            self.q = X.shape[1]
            self.cxx = np.concatenate(
                (np.zeros((1, self.q, self.q)), np.cumsum(X[:, :, None] * X[:, None, :], axis=0))
            )
            self.cxy = np.concatenate((np.zeros((1, self.q)), np.cumsum(X * y[:, None], axis=0)))
            self.cyy = np.concatenate(([0.0], np.cumsum(y * y)))

    def __call__(self, i, j) -> np.ndarray:
        i = np.atleast_1d(np.asarray(i, dtype=np.int64))
        j = np.broadcast_to(np.asarray(j, dtype=np.int64), i.shape)
        if self.intercept_only:
            s = self.cs[j] - self.cs[i]
            return np.maximum(self.cq[j] - self.cq[i] - s * s / (j - i), 0.0)
        xx = self.cxx[j] - self.cxx[i]
        xy = self.cxy[j] - self.cxy[i]
        yy = self.cyy[j] - self.cyy[i]
        ev = np.linalg.eigvalsh(xx)
        bad = ev[:, 0] <= 1e-10 * np.maximum(ev[:, -1], 1e-300)
        if np.any(bad):
            k = int(np.flatnonzero(bad)[0])
            raise SingularSegmentError(f"singular regressors on segment [{i[k]}, {j[k]})")
        beta = np.linalg.solve(xx, xy[..., None])[..., 0]
        return np.maximum(yy - np.einsum("ij,ij->i", beta, xy), 0.0)


def _dynamic_programme(rss: _SegmentRSS, n: int, h: int, max_breaks: int):
    """opt[k, j] = min RSS of y[:j] with k breaks; prev holds the argmin start."""
    opt = np.full((max_breaks + 1, n + 1), np.inf)
    prev = np.zeros((max_breaks + 1, n + 1), dtype=np.int64)
    for j in range(h, n + 1):
        opt[0, j] = rss(0, j)[0]
        if j < 2 * h:
            continue
        starts = np.arange(h, j - h + 1)
        costs = rss(starts, j)
        for k in range(1, max_breaks + 1):
            valid = starts >= k * h
            if not valid.any():
                break
            fit = opt[k - 1, starts[valid]] + costs[valid]
            a = int(np.argmin(fit))
            opt[k, j] = fit[a]
            prev[k, j] = starts[valid][a]
    return opt, prev


def _breaks_for(prev: np.ndarray, k: int, n: int) -> tuple[int, ...]:
    out = []
    j = n
    for level in range(k, 0, -1):
        j = int(prev[level, j])
        out.append(j)
    return tuple(reversed(out))


def _best_extra_break(rss: _SegmentRSS, breaks: tuple[int, ...], n: int, h: int) -> float:
    """Lowest RSS reachable by inserting one break into an existing segment."""
    bounds = (0, *breaks, n)
    base = sum(float(rss(a, b)[0]) for a, b in zip(bounds[:-1], bounds[1:]))
    best = math.inf
    for a, b in zip(bounds[:-1], bounds[1:]):
        if b - a < 2 * h:
            continue
        taus = np.arange(a + h, b - h + 1)
        split = rss(np.full_like(taus, a), taus) + rss(taus, np.full_like(taus, b))
        best = min(best, base - float(rss(a, b)[0]) + float(split.min()))
    return best


def bai_perron_detect(y, X=None, config: BaiPerronConfig = BaiPerronConfig()) -> BreakpointSet:
    """Estimate break dates by global RSS minimisation and pick their number
    with sequential sup-F tests.

    ``X=None`` means intercept only (pure mean shifts). The returned
    ``statistics`` hold the sup-F(l+1 | l) values of the accepted breaks;
    ``extra`` carries the RSS per break count, the break dates for every count
    and the full test sequence.
    """
    y = validate_series(y, "y")
    n = len(y)
    if X is not None:
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        if X.shape[0] != n:
            raise ValueError("X and y differ in length")
        if not np.all(np.isfinite(X)):
            raise ValueError("X contains non-finite values")
    q = 1 if X is None else X.shape[1]
    h = math.ceil(config.trim * n)
    if h < q + 1:
        raise ValueError(f"trim {config.trim} gives minimum segment {h} < regressors + 1 = {q + 1}")
    max_breaks = min(config.max_breaks, n // h - 1)
    if max_breaks < 1:
        raise ValueError(f"series of length {n} too short for trim {config.trim}")
    crit = config.critical_values or supf_critical_values(q, config.trim, config.alpha)

    rss = _SegmentRSS(y, X)
    opt, prev = _dynamic_programme(rss, n, h, max_breaks)
    ssr = {k: float(opt[k, n]) for k in range(max_breaks + 1) if np.isfinite(opt[k, n])}
    dates = {k: _breaks_for(prev, k, n) for k in ssr}

    # relative floor below which an RSS counts as an exact fit
    tiny = 1e-10 * max(float(np.sum((y - y.mean()) ** 2)), 1e-300)
    tests: list[float] = []
    chosen = 0
    for ell in range(max_breaks):
        if ell + 1 not in ssr:
            break
        s_null = ssr[ell]
        s_alt = _best_extra_break(rss, dates[ell], n, h)
        if not math.isfinite(s_alt):
            break
        if s_null <= tiny:
            stat = 0.0
        elif s_alt <= tiny:
            stat = math.inf
        else:
            sigma2 = s_alt / (n - (ell + 2) * q)
            stat = (s_null - s_alt) / sigma2
        tests.append(stat)
        if ell >= len(crit) or stat <= crit[ell]:
            break
        chosen = ell + 1

    return BreakpointSet(
        dates[chosen],
        n,
        "BaiPerron",
        statistics=tuple(tests[:chosen]),
        extra={"ssr": ssr, "breaks_by_m": dates, "supf_sequence": tests, "critical": tuple(crit)},
    )
