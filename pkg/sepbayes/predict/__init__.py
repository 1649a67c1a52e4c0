"""Prediction module.

This module provides:
- predict_mc: Monte Carlo success probabilities from posterior draws
- predict_point: probabilities at a single coefficient vector
- misclassification / brier / evaluate: test-set scores
- map_estimate: posterior mode, the point-estimate comparator
"""

from sepbayes.predict.metrics import (
    PredictionResult,
    brier,
    evaluate,
    misclassification,
    predict_mc,
    predict_point,
)
from sepbayes.predict.mode import ModeEstimate, map_estimate

__all__ = [
    "PredictionResult",
    "brier",
    "evaluate",
    "misclassification",
    "predict_mc",
    "predict_point",
    "ModeEstimate",
    "map_estimate",
]
