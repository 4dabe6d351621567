"""Stacked LSTM regressor with backpropagation through time.

Gate blocks are fused along the last axis in the order forget, input,
output, candidate, so ``W`` is (d, 4h), ``U`` is (h, 4h) and ``b`` is (4h,).
The cell update is the standard  c_t = f * c_{t-1} + i * a.
"""

from __future__ import annotations

import numpy as np

from .functional import check_finite, check_unit_range, dropout_mask, glorot, sigmoid


def lstm_cell_forward(z, h_prev, c_prev, W, U, b):
    """One LSTM step for a batch (or a single vector). Returns (h_t, c_t)."""
    z = np.atleast_2d(z)
    h_prev = np.atleast_2d(h_prev)
    c_prev = np.atleast_2d(c_prev)
    h = U.shape[0]
    if W.shape != (z.shape[1], 4 * h) or U.shape != (h, 4 * h) or b.shape != (4 * h,):
        raise ValueError(f"LSTM shape mismatch: z {z.shape}, W {W.shape}, U {U.shape}, b {b.shape}")
    if h_prev.shape[1] != h or c_prev.shape[1] != h:
        raise ValueError("previous state has wrong width")
    pre = z @ W + h_prev @ U + b
    sig = sigmoid(pre[:, : 3 * h])
    f, i, o = sig[:, :h], sig[:, h : 2 * h], sig[:, 2 * h :]
    a = np.tanh(pre[:, 3 * h :])
    c = f * c_prev + i * a
    return o * np.tanh(c), c


class LSTMRegressor:
    arch = "lstm"

    def __init__(self, input_dim: int, hidden: int = 128, layers: int = 2, dropout: float = 0.2,
                 rng: np.random.Generator | None = None):
        if hidden < 1 or layers < 1:
            raise ValueError("hidden size and layer count must be positive")
        self.input_dim, self.hidden, self.layers, self.dropout = input_dim, hidden, layers, dropout
        rng = rng or np.random.default_rng(0)
        h = hidden
        self.params: dict[str, np.ndarray] = {}
        for l in range(layers):
            d = input_dim if l == 0 else h
            W = np.concatenate([glorot(rng, d, h, (d, h)) for _ in range(4)], axis=1)
            U = np.concatenate([glorot(rng, h, h, (h, h)) for _ in range(4)], axis=1)
            b = np.zeros(4 * h)
            b[:h] = 1.0
            self.params.update({f"l{l}.W": W, f"l{l}.U": U, f"l{l}.b": b})
        self.params["head.w"] = glorot(rng, h, 1, (h,))
        self.params["head.b"] = np.zeros(1)

    def spec(self) -> dict:
        return {"input_dim": self.input_dim, "hidden": self.hidden, "layers": self.layers, "dropout": self.dropout}

    def forward(self, X: np.ndarray, rng: np.random.Generator | None = None):
        """Predictions for windows ``X`` (B, T, d); dropout only when ``rng`` is given."""
        X = np.asarray(X, dtype=float)
        if X.ndim != 3 or X.shape[2] != self.input_dim:
            raise ValueError(f"expected input (B, T, {self.input_dim}), got {X.shape}")
        B, T, _ = X.shape
        h = self.hidden
        caches = []
        seq = X
        for l in range(self.layers):
            W, U, b = self.params[f"l{l}.W"], self.params[f"l{l}.U"], self.params[f"l{l}.b"]
            xw = seq @ W + b
            gates = np.empty((B, T, 4 * h))
            cs = np.empty((B, T, h))
            tcs = np.empty((B, T, h))
            hs = np.empty((B, T, h))
            hp = np.zeros((B, h))
            cp = np.zeros((B, h))
            for t in range(T):
                pre = xw[:, t] + hp @ U
                g = gates[:, t]
                g[:, : 3 * h] = sigmoid(pre[:, : 3 * h])
                g[:, 3 * h :] = np.tanh(pre[:, 3 * h :])
                cp = g[:, :h] * cp + g[:, h : 2 * h] * g[:, 3 * h :]
                cs[:, t] = cp
                tcs[:, t] = np.tanh(cp)
                hp = g[:, 2 * h : 3 * h] * tcs[:, t]
                hs[:, t] = hp
            check_unit_range("lstm gates", gates[..., : 3 * h], 0.0)
            check_unit_range("lstm candidate", gates[..., 3 * h :], -1.0)
            mask = dropout_mask(rng, hs.shape, self.dropout) if l < self.layers - 1 else None
            caches.append((seq, gates, cs, tcs, hs, mask))
            seq = hs * mask if mask is not None else hs
        last = seq[:, -1]
        pred = last @ self.params["head.w"] + self.params["head.b"][0]
        check_finite("lstm output", pred)
        return pred, (caches, last)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.forward(X)[0]

    def backward(self, cache, dpred: np.ndarray) -> dict[str, np.ndarray]:
        caches, last = cache
        h = self.hidden
        grads: dict[str, np.ndarray] = {}
        grads["head.w"] = last.T @ dpred
        grads["head.b"] = np.array([dpred.sum()])
        seq, _, _, _, hs, _ = caches[-1]
        B, T, _ = hs.shape
        dseq = np.zeros((B, T, h))
        dseq[:, -1] = np.outer(dpred, self.params["head.w"])
        for l in range(self.layers - 1, -1, -1):
            seq, gates, cs, tcs, hs, mask = caches[l]
            if mask is not None:
                dseq = dseq * mask
            U = self.params[f"l{l}.U"]
            dxw = np.empty((B, T, 4 * h))
            dU = np.zeros_like(U)
            dh_next = np.zeros((B, h))
            dc_next = np.zeros((B, h))
            for t in range(T - 1, -1, -1):
                g = gates[:, t]
                f, i, o, a = g[:, :h], g[:, h : 2 * h], g[:, 2 * h : 3 * h], g[:, 3 * h :]
                c_prev = cs[:, t - 1] if t > 0 else np.zeros((B, h))
                h_prev = hs[:, t - 1] if t > 0 else np.zeros((B, h))
                dh = dseq[:, t] + dh_next
                tc = tcs[:, t]
                dc = dh * o * (1.0 - tc * tc) + dc_next
                dg = dxw[:, t]
                dg[:, :h] = dc * c_prev * f * (1.0 - f)
                dg[:, h : 2 * h] = dc * a * i * (1.0 - i)
                dg[:, 2 * h : 3 * h] = dh * tc * o * (1.0 - o)
                dg[:, 3 * h :] = dc * i * (1.0 - a * a)
                dc_next = dc * f
                dU += h_prev.T @ dg
                dh_next = dg @ U.T
            d_in = seq.shape[2]
            grads[f"l{l}.W"] = seq.reshape(-1, d_in).T @ dxw.reshape(-1, 4 * h)
            grads[f"l{l}.U"] = dU
            grads[f"l{l}.b"] = dxw.sum(axis=(0, 1))
            if l > 0:
                dseq = dxw @ self.params[f"l{l}.W"].T
        return grads
