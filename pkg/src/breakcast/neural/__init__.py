"""Double-precision LSTM, GRU and TCN regressors with analytic gradients."""

from .checkpoint import load_checkpoint, save_checkpoint
from .gru import GRURegressor, gru_cell_forward
from .lstm import LSTMRegressor, lstm_cell_forward
from .optim import Adam
from .tcn import TCNRegressor, causal_conv, receptive_field
from .training import (
    ARCHITECTURES,
    TrainedModel,
    TrainingConfig,
    build_model,
    forward_sequence,
    mse_loss,
    predict,
    train,
)

__all__ = [
    "ARCHITECTURES",
    "Adam",
    "GRURegressor",
    "LSTMRegressor",
    "TCNRegressor",
    "TrainedModel",
    "TrainingConfig",
    "build_model",
    "causal_conv",
    "forward_sequence",
    "gru_cell_forward",
    "load_checkpoint",
    "lstm_cell_forward",
    "mse_loss",
    "predict",
    "receptive_field",
    "save_checkpoint",
    "train",
]
