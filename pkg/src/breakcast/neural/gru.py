"""Stacked GRU regressor.

Gate blocks are fused in the order update, reset, candidate: ``W`` is
(d, 3h), ``U`` is (h, 3h), ``b`` is (3h,). The reset gate multiplies the
previous state before the candidate's recurrent product,

    n = tanh(W_n z + U_n (r * h_prev) + b_n),   h = (1 - u) * h_prev + u * n.
"""

from __future__ import annotations

import numpy as np

from .functional import check_finite, check_unit_range, dropout_mask, glorot, sigmoid


def gru_cell_forward(z, h_prev, W, U, b):
    z = np.atleast_2d(z)
    h_prev = np.atleast_2d(h_prev)
    h = U.shape[0]
    if W.shape != (z.shape[1], 3 * h) or U.shape != (h, 3 * h) or b.shape != (3 * h,):
        raise ValueError(f"GRU shape mismatch: z {z.shape}, W {W.shape}, U {U.shape}, b {b.shape}")
    if h_prev.shape[1] != h:
        raise ValueError("previous state has wrong width")
    xw = z @ W + b
    ur = sigmoid(xw[:, : 2 * h] + h_prev @ U[:, : 2 * h])
    u, r = ur[:, :h], ur[:, h:]
    n = np.tanh(xw[:, 2 * h :] + (r * h_prev) @ U[:, 2 * h :])
    return (1.0 - u) * h_prev + u * n


class GRURegressor:
    arch = "gru"

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
            self.params[f"l{l}.W"] = np.concatenate([glorot(rng, d, h, (d, h)) for _ in range(3)], axis=1)
            self.params[f"l{l}.U"] = np.concatenate([glorot(rng, h, h, (h, h)) for _ in range(3)], axis=1)
            self.params[f"l{l}.b"] = np.zeros(3 * h)
        self.params["head.w"] = glorot(rng, h, 1, (h,))
        self.params["head.b"] = np.zeros(1)

    def spec(self) -> dict:
        return {"input_dim": self.input_dim, "hidden": self.hidden, "layers": self.layers, "dropout": self.dropout}

    def forward(self, X: np.ndarray, rng: np.random.Generator | None = None):
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
            ur = np.empty((B, T, 2 * h))
            ns = np.empty((B, T, h))
            hs = np.empty((B, T, h))
            hp = np.zeros((B, h))
            for t in range(T):
                g = sigmoid(xw[:, t, : 2 * h] + hp @ U[:, : 2 * h])
                ur[:, t] = g
                n = np.tanh(xw[:, t, 2 * h :] + (g[:, h:] * hp) @ U[:, 2 * h :])
                ns[:, t] = n
                hp = hp + g[:, :h] * (n - hp)
                hs[:, t] = hp
            check_unit_range("gru gates", ur, 0.0)
            check_unit_range("gru candidate", ns, -1.0)
            mask = dropout_mask(rng, hs.shape, self.dropout) if l < self.layers - 1 else None
            caches.append((seq, ur, ns, hs, mask))
            seq = hs * mask if mask is not None else hs
        last = seq[:, -1]
        pred = last @ self.params["head.w"] + self.params["head.b"][0]
        check_finite("gru output", pred)
        return pred, (caches, last)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.forward(X)[0]

    def backward(self, cache, dpred: np.ndarray) -> dict[str, np.ndarray]:
        caches, last = cache
        h = self.hidden
        grads = {"head.w": last.T @ dpred, "head.b": np.array([dpred.sum()])}
        B, T, _ = caches[-1][3].shape
        dseq = np.zeros((B, T, h))
        dseq[:, -1] = np.outer(dpred, self.params["head.w"])
        for l in range(self.layers - 1, -1, -1):
            seq, ur, ns, hs, mask = caches[l]
            if mask is not None:
                dseq = dseq * mask
            U = self.params[f"l{l}.U"]
            Uzr, Un = U[:, : 2 * h], U[:, 2 * h :]
            dxw = np.empty((B, T, 3 * h))
            dU = np.zeros_like(U)
            dh_next = np.zeros((B, h))
            for t in range(T - 1, -1, -1):
                u, r = ur[:, t, :h], ur[:, t, h:]
                n = ns[:, t]
                h_prev = hs[:, t - 1] if t > 0 else np.zeros((B, h))
                dh = dseq[:, t] + dh_next
                dg = dxw[:, t]
                dn_pre = dh * u * (1.0 - n * n)
                dg[:, 2 * h :] = dn_pre
                drh = dn_pre @ Un.T
                dg[:, :h] = dh * (n - h_prev) * u * (1.0 - u)
                dg[:, h : 2 * h] = drh * h_prev * r * (1.0 - r)
                dU[:, 2 * h :] += (r * h_prev).T @ dn_pre
                dU[:, : 2 * h] += h_prev.T @ dg[:, : 2 * h]
                dh_next = dh * (1.0 - u) + drh * r + dg[:, : 2 * h] @ Uzr.T
            d_in = seq.shape[2]
            grads[f"l{l}.W"] = seq.reshape(-1, d_in).T @ dxw.reshape(-1, 3 * h)
            grads[f"l{l}.U"] = dU
            grads[f"l{l}.b"] = dxw.sum(axis=(0, 1))
            if l > 0:
                dseq = dxw @ self.params[f"l{l}.W"].T
        return grads
