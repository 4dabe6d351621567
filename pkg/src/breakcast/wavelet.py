"""Orthogonal discrete wavelet transform (Mallat pyramid) and denoising.

Analysis at one level is convolution with the decomposition filters followed
by keeping every second output:

    approx[n] = sum_k h[k] x[2n + 1 - k],     detail[n] = sum_k g[k] x[2n + 1 - k]

with ``x`` extended past its ends. Two extensions are supported:

``symmetric``
    half-sample reflection (x[-1] = x[0]); floor((N + L - 1) / 2)
    coefficients per band, exact inverse for any N >= L.
``periodic``
    circular wrap with ceil(N / 2) coefficients per band; the transform is
    orthonormal for even N so energy is preserved. Odd inputs get their last
    sample repeated before the transform and trimmed after the inverse.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

Mode = Literal["symmetric", "periodic"]

_SQRT3 = math.sqrt(3.0)

# Daubechies low-pass decomposition filters in convolution order (the same
# convention as PyWavelets' ``dec_lo``). db2 is the closed form; db4 is the
# 8-tap filter from Daubechies, "Ten Lectures on Wavelets" (1992), Table 6.1,
# reversed to decomposition order.
_LOWPASS = {
    "haar": (1 / math.sqrt(2.0), 1 / math.sqrt(2.0)),
    "db2": tuple(
        c / (4 * math.sqrt(2.0)) for c in (1 - _SQRT3, 3 - _SQRT3, 3 + _SQRT3, 1 + _SQRT3)
    ),
    "db4": (
        -0.010597401785069032,
        0.0328830116668852,
        0.030841381835560764,
        -0.18703481171909309,
        -0.027983769416859854,
        0.6308807679298589,
        0.7148465705529157,
        0.2303778133088965,
    ),
}
FAMILIES = tuple(_LOWPASS)


@dataclass(frozen=True)
class WaveletFilter:
    """Orthogonal two-channel filter bank.

    ``dec_hi`` is the quadrature mirror of ``dec_lo``:
    g[k] = (-1)^(k+1) h[L-1-k].
    """

    name: str
    dec_lo: np.ndarray
    dec_hi: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        h = np.asarray(self.dec_lo, dtype=float)
        L = len(h)
        g = np.array([(-1) ** (k + 1) * h[L - 1 - k] for k in range(L)])
        object.__setattr__(self, "dec_lo", h)
        object.__setattr__(self, "dec_hi", g)
        check_filter(self)

    @property
    def length(self) -> int:
        return len(self.dec_lo)


def check_filter(f: WaveletFilter, tol: float = 1e-12) -> None:
    """Assert sum(h) = sqrt(2), sum(g) = 0 and double-shift orthonormality."""
    h, g = f.dec_lo, f.dec_hi
    if abs(h.sum() - math.sqrt(2.0)) > tol:
        raise ValueError(f"{f.name}: low-pass sum {h.sum()} != sqrt(2)")
    if abs(g.sum()) > tol:
        raise ValueError(f"{f.name}: high-pass sum {g.sum()} != 0")
    L = len(h)
    for m in range(0, L, 2):
        hh = float(np.dot(h[m:], h[: L - m]))
        gg = float(np.dot(g[m:], g[: L - m]))
        hg = float(np.dot(h[m:], g[: L - m]))
        gh = float(np.dot(g[m:], h[: L - m]))
        want = 1.0 if m == 0 else 0.0
        if abs(hh - want) > tol or abs(gg - want) > tol or abs(hg) > tol or abs(gh) > tol:
            raise ValueError(f"{f.name}: filters not orthonormal at shift {m}")


def get_filter(name: str | WaveletFilter) -> WaveletFilter:
    if isinstance(name, WaveletFilter):
        return name
    key = name.lower()
    if key not in _LOWPASS:
        raise ValueError(f"unknown wavelet {name!r}; choose from {FAMILIES}")
    return WaveletFilter(key, np.array(_LOWPASS[key]))


def coefficient_length(n: int, filter_length: int, mode: Mode = "symmetric") -> int:
    if mode == "periodic":
        return (n + 1) // 2
    return (n + filter_length - 1) // 2


def _check_mode(mode: str) -> None:
    if mode not in ("symmetric", "periodic"):
        raise ValueError(f"unknown padding mode {mode!r}")


def dwt_single(signal, wavelet: str | WaveletFilter = "db4", mode: Mode = "symmetric") -> tuple[np.ndarray, np.ndarray]:
    """One analysis step: (approximation, detail)."""
    _check_mode(mode)
    f = get_filter(wavelet)
    x = np.asarray(signal, dtype=float)
    if x.ndim != 1:
        raise ValueError("signal must be one-dimensional")
    L = f.length
    if len(x) < L:
        raise ValueError(f"signal of length {len(x)} shorter than {f.name} filter ({L})")
    if mode == "periodic":
        if len(x) % 2:
            x = np.append(x, x[-1])
        N = len(x)
        ext = np.concatenate((x[N - (L - 1) :], x))
        full_lo = np.convolve(ext, f.dec_lo, mode="valid")
        full_hi = np.convolve(ext, f.dec_hi, mode="valid")
        # valid output j is sum_k h[k] x[(j - k) mod N]; keep odd j
        return full_lo[1::2].copy(), full_hi[1::2].copy()
    ext = np.pad(x, (L - 1, L - 1), mode="symmetric")
    full_lo = np.convolve(ext, f.dec_lo, mode="valid")
    full_hi = np.convolve(ext, f.dec_hi, mode="valid")
    # valid output j is sum_k h[k] x[j - k]; keep j = 2n + 1
    count = coefficient_length(len(x), L, mode)
    return full_lo[1 : 2 * count : 2].copy(), full_hi[1 : 2 * count : 2].copy()


def idwt_single(approx, detail, wavelet: str | WaveletFilter, original_length: int, mode: Mode = "symmetric") -> np.ndarray:
    """Inverse of :func:`dwt_single` returning exactly ``original_length`` samples.

    x[k] = sum_n approx[n] h[2n + 1 - k] + detail[n] g[2n + 1 - k]
    """
    _check_mode(mode)
    f = get_filter(wavelet)
    a = np.asarray(approx, dtype=float)
    d = np.asarray(detail, dtype=float)
    L = f.length
    count = coefficient_length(original_length, L, mode)
    if len(a) != count or len(d) != count:
        raise ValueError(
            f"coefficient lengths ({len(a)}, {len(d)}) inconsistent with original length "
            f"{original_length} (expected {count})"
        )
    up_a = np.zeros(2 * count)
    up_d = np.zeros(2 * count)
    up_a[1::2] = a
    up_d[1::2] = d
    # y[k] = sum_m up[m] h[m - k] is a correlation; realised as convolution with reversed taps
    ya = np.convolve(up_a, f.dec_lo[::-1], mode="full")
    yd = np.convolve(up_d, f.dec_hi[::-1], mode="full")
    y = ya + yd  # index k + (L - 1) holds x[k]
    if mode == "periodic":
        N = 2 * count
        out = y[L - 1 : L - 1 + N].copy()
        # contributions that wrapped past the start belong to the end
        out[N - (L - 1) :] += y[: L - 1]
        return out[:original_length]
    return y[L - 1 : L - 1 + original_length].copy()


@dataclass
class WaveletDecomposition:
    """Coarsest approximation plus detail bands, finest first.

    ``details[j - 1]`` is D_j; ``lengths[j - 1]`` is the input length of
    level j, needed to invert each level exactly.
    """

    approx: np.ndarray
    details: list[np.ndarray]
    lengths: list[int]
    wavelet: str
    mode: Mode = "symmetric"

    @property
    def levels(self) -> int:
        return len(self.details)

    @property
    def original_length(self) -> int:
        return self.lengths[0]


def max_level(n: int, wavelet: str | WaveletFilter = "db4", mode: Mode = "symmetric") -> int:
    """Deepest J for which every level's input is at least the filter length."""
    L = get_filter(wavelet).length
    J = 0
    while n >= L:
        J += 1
        n = coefficient_length(n, L, mode)
    return J


def wavedec(signal, wavelet: str | WaveletFilter = "db4", levels: int = 1, mode: Mode = "symmetric") -> WaveletDecomposition:
    """Recursive decomposition of the approximation band only."""
    f = get_filter(wavelet)
    x = np.asarray(signal, dtype=float)
    if levels < 1:
        raise ValueError("levels must be >= 1")
    feasible = max_level(len(x), f, mode)
    if levels > feasible:
        raise ValueError(f"{levels} levels too deep for length {len(x)} with {f.name}; max feasible is {feasible}")
    details, lengths = [], []
    a = x
    for _ in range(levels):
        lengths.append(len(a))
        a, d = dwt_single(a, f, mode)
        details.append(d)
    return WaveletDecomposition(a, details, lengths, f.name, mode)


def waverec(dec: WaveletDecomposition) -> np.ndarray:
    a = dec.approx
    for d, n in zip(reversed(dec.details), reversed(dec.lengths)):
        a = idwt_single(a, d, dec.wavelet, n, dec.mode)
    return a


def denoise(signal, wavelet: str | WaveletFilter = "db4", levels: int = 1, mode: Mode = "symmetric") -> np.ndarray:
    """Keep the approximation band only: decompose, zero every detail, rebuild."""
    dec = wavedec(signal, wavelet, levels, mode)
    dec.details = [np.zeros_like(d) for d in dec.details]
    return waverec(dec)


def total_variation(x) -> float:
    return float(np.abs(np.diff(np.asarray(x, dtype=float))).sum())


def write_denoised_csv(path: str | os.PathLike, dates: Sequence, raw, denoised, roundtrip=None) -> None:
    """CSV with columns date, raw, denoised and, if given, roundtrip.

    ``roundtrip`` is meant for the undenoised reconstruction
    waverec(wavedec(raw)), so readers can check it against ``raw``.
    """
    cols = [raw, denoised] if roundtrip is None else [raw, denoised, roundtrip]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["date", "raw", "denoised"] + ([] if roundtrip is None else ["roundtrip"]))
        for d, *vals in zip(dates, *cols):
            w.writerow([str(d)] + [repr(float(v)) for v in vals])
