"""Performance monitoring for end-to-end speech recognizers.

Thin Python front end over the C++ core: closed-form measures, linear
calibration, the synthetic corpus generator, and the autoencoder and
recurrent predictors (trained and applied through checkpoint files).
"""

from ._core import (
    PmkitError,
    CalibrationModel,
    __version__,
    entropy,
    e_score,
    symmetric_kl,
    mcd,
    fit_linear,
    predict,
    spearman,
    mean_squared_error,
    generate,
    read_corpus,
    validate_corpus,
    score_corpus,
    train_ae,
    ae_scores,
    train_rnn,
    rnn_scores,
)

__all__ = [
    "PmkitError",
    "CalibrationModel",
    "__version__",
    "entropy",
    "e_score",
    "symmetric_kl",
    "mcd",
    "fit_linear",
    "predict",
    "spearman",
    "mean_squared_error",
    "generate",
    "read_corpus",
    "validate_corpus",
    "score_corpus",
    "train_ae",
    "ae_scores",
    "train_rnn",
    "rnn_scores",
]
