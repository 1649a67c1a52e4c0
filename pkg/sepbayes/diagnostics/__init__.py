"""Diagnostics module.

This module provides:
- running_mean, autocorrelation, ess: single-series chain diagnostics
- summarize: per-coefficient posterior summaries with MC standard errors
- running_mean_frame / acf_frame: series tables for external plotting
"""

from sepbayes.diagnostics.series import (
    autocorrelation,
    ess,
    integrated_autocorrelation_time,
    running_mean,
)
from sepbayes.diagnostics.summary import (
    NOT_EXISTS_NOTE,
    ChainSummary,
    CoefficientSummary,
    acf_frame,
    running_mean_frame,
    summarize,
)

__all__ = [
    "autocorrelation",
    "ess",
    "integrated_autocorrelation_time",
    "running_mean",
    "NOT_EXISTS_NOTE",
    "ChainSummary",
    "CoefficientSummary",
    "acf_frame",
    "running_mean_frame",
    "summarize",
]
