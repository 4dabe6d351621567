"""Structural-break aware, wavelet-denoised one-step price forecasting."""

__version__ = "0.1.0"
