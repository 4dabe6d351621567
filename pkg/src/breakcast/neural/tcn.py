"""Temporal convolutional network regressor.

Each residual block applies, twice, a dilated causal convolution with a
weight-normalised kernel (w = g * v / ||v||, norm per output channel)
followed by ReLU and dropout, then adds the block input through an identity
or 1x1-convolution shortcut. Block b uses dilation 2**b. Causal left padding
plays the role of the crop step. The dense head reads the last time step.

Kernels are (k, C_in, C_out) with tap ``k - 1`` acting on the current step
and tap ``j`` on the step ``(k - 1 - j) * dilation`` earlier.
"""

from __future__ import annotations

import numpy as np

from .functional import check_finite, dropout_mask, glorot


def receptive_field(kernel: int, blocks: int) -> int:
    return 1 + 2 * (kernel - 1) * (2**blocks - 1)


def weight_norm(v: np.ndarray, g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Effective kernel and the per-channel norms of ``v``."""
    norm = np.sqrt(np.sum(v * v, axis=(0, 1)))
    return v * (g / norm), norm


def causal_conv(x: np.ndarray, w: np.ndarray, bias: np.ndarray, dilation: int) -> np.ndarray:
    k = w.shape[0]
    T = x.shape[1]
    pad = (k - 1) * dilation
    xp = np.pad(x, ((0, 0), (pad, 0), (0, 0)))
    out = xp[:, 0:T] @ w[0]
    for j in range(1, k):
        out += xp[:, j * dilation : j * dilation + T] @ w[j]
    return out + bias


def causal_conv_backward(x: np.ndarray, w: np.ndarray, dilation: int, dout: np.ndarray):
    """Gradients (dx, dw, dbias) of :func:`causal_conv`."""
    k, c_in, c_out = w.shape
    B, T, _ = x.shape
    pad = (k - 1) * dilation
    xp = np.pad(x, ((0, 0), (pad, 0), (0, 0)))
    dxp = np.zeros_like(xp)
    dw = np.empty_like(w)
    flat_out = dout.reshape(-1, c_out)
    for j in range(k):
        sl = slice(j * dilation, j * dilation + T)
        dw[j] = xp[:, sl].reshape(-1, c_in).T @ flat_out
        dxp[:, sl] += dout @ w[j].T
    return dxp[:, pad:], dw, flat_out.sum(axis=0)


class TCNRegressor:
    arch = "tcn"

    def __init__(self, input_dim: int, channels: int = 64, blocks: int = 4, kernel: int = 3,
                 dropout: float = 0.2, rng: np.random.Generator | None = None):
        if channels < 1 or blocks < 1 or kernel < 1:
            raise ValueError("channels, blocks and kernel must be positive")
        self.input_dim, self.channels, self.blocks, self.kernel, self.dropout = input_dim, channels, blocks, kernel, dropout
        rng = rng or np.random.default_rng(0)
        C, k = channels, kernel
        self.params: dict[str, np.ndarray] = {}
        for blk in range(blocks):
            c_in = input_dim if blk == 0 else C
            for conv, fan_in in (("c1", c_in), ("c2", C)):
                v = glorot(rng, k * fan_in, k * C, (k, fan_in, C))
                self.params[f"b{blk}.{conv}.v"] = v
                self.params[f"b{blk}.{conv}.g"] = np.sqrt(np.sum(v * v, axis=(0, 1)))
                self.params[f"b{blk}.{conv}.bias"] = np.zeros(C)
            if c_in != C:
                self.params[f"b{blk}.down.w"] = glorot(rng, c_in, C, (c_in, C))
                self.params[f"b{blk}.down.b"] = np.zeros(C)
        self.params["head.w"] = glorot(rng, C, 1, (C,))
        self.params["head.b"] = np.zeros(1)

    def spec(self) -> dict:
        return {"input_dim": self.input_dim, "channels": self.channels, "blocks": self.blocks,
                "kernel": self.kernel, "dropout": self.dropout}

    @property
    def receptive_field(self) -> int:
        return receptive_field(self.kernel, self.blocks)

    def features(self, X: np.ndarray, rng: np.random.Generator | None = None):
        """Final-block activations (B, T, C) plus the backward cache."""
        X = np.asarray(X, dtype=float)
        if X.ndim != 3 or X.shape[2] != self.input_dim:
            raise ValueError(f"expected input (B, T, {self.input_dim}), got {X.shape}")
        p = self.params
        caches = []
        x = X
        for blk in range(self.blocks):
            dil = 2**blk
            w1, n1 = weight_norm(p[f"b{blk}.c1.v"], p[f"b{blk}.c1.g"])
            a1 = causal_conv(x, w1, p[f"b{blk}.c1.bias"], dil)
            h1 = np.maximum(a1, 0.0)
            m1 = dropout_mask(rng, h1.shape, self.dropout)
            h1d = h1 * m1 if m1 is not None else h1
            w2, n2 = weight_norm(p[f"b{blk}.c2.v"], p[f"b{blk}.c2.g"])
            a2 = causal_conv(h1d, w2, p[f"b{blk}.c2.bias"], dil)
            h2 = np.maximum(a2, 0.0)
            m2 = dropout_mask(rng, h2.shape, self.dropout)
            h2d = h2 * m2 if m2 is not None else h2
            if f"b{blk}.down.w" in p:
                res = x @ p[f"b{blk}.down.w"] + p[f"b{blk}.down.b"]
            else:
                res = x
            caches.append((x, w1, n1, a1, m1, h1d, w2, n2, a2, m2))
            x = h2d + res
        return x, caches

    def forward(self, X: np.ndarray, rng: np.random.Generator | None = None):
        out, caches = self.features(X, rng)
        last = out[:, -1]
        pred = last @ self.params["head.w"] + self.params["head.b"][0]
        check_finite("tcn output", pred)
        return pred, (caches, last, out.shape)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.forward(X)[0]

    @staticmethod
    def _wn_backward(v, g, norm, dw):
        u = v / norm
        dg = np.sum(dw * u, axis=(0, 1))
        dv = (g / norm) * (dw - u * dg)
        return dv, dg

    def backward(self, cache, dpred: np.ndarray) -> dict[str, np.ndarray]:
        caches, last, shape = cache
        p = self.params
        grads = {"head.w": last.T @ dpred, "head.b": np.array([dpred.sum()])}
        dx = np.zeros(shape)
        dx[:, -1] = np.outer(dpred, p["head.w"])
        for blk in range(self.blocks - 1, -1, -1):
            x, w1, n1, a1, m1, h1d, w2, n2, a2, m2 = caches[blk]
            dil = 2**blk
            dout = dx
            if f"b{blk}.down.w" in p:
                c_in = x.shape[2]
                grads[f"b{blk}.down.w"] = x.reshape(-1, c_in).T @ dout.reshape(-1, dout.shape[2])
                grads[f"b{blk}.down.b"] = dout.sum(axis=(0, 1))
                dres = dout @ p[f"b{blk}.down.w"].T
            else:
                dres = dout
            dh2 = dout * m2 if m2 is not None else dout
            da2 = dh2 * (a2 > 0)
            dh1d, dw2, grads[f"b{blk}.c2.bias"] = causal_conv_backward(h1d, w2, dil, da2)
            grads[f"b{blk}.c2.v"], grads[f"b{blk}.c2.g"] = self._wn_backward(p[f"b{blk}.c2.v"], p[f"b{blk}.c2.g"], n2, dw2)
            dh1 = dh1d * m1 if m1 is not None else dh1d
            da1 = dh1 * (a1 > 0)
            dxc, dw1, grads[f"b{blk}.c1.bias"] = causal_conv_backward(x, w1, dil, da1)
            grads[f"b{blk}.c1.v"], grads[f"b{blk}.c1.g"] = self._wn_backward(p[f"b{blk}.c1.v"], p[f"b{blk}.c1.g"], n1, dw1)
            dx = dxc + dres
        return grads
