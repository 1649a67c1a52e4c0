"""sepbayes - separation diagnostics and MCMC for Bayesian binary regression."""

__version__ = "0.1.0"

from sepbayes.dataset import Dataset, add_intercept, apply_standardization, load_csv, standardize
from sepbayes.separation import (
    SeparationKind,
    SeparationReport,
    Verdict,
    detect_separation,
    existence_report,
    find_solitary_separators,
)
from sepbayes.samplers import Draws, GibbsConfig, build_prior, gibbs, log_posterior, rw_metropolis
from sepbayes.diagnostics import ChainSummary, summarize
from sepbayes.predict import PredictionResult, evaluate, map_estimate, predict_mc

__all__ = [
    "Dataset",
    "add_intercept",
    "apply_standardization",
    "load_csv",
    "standardize",
    "SeparationKind",
    "SeparationReport",
    "Verdict",
    "detect_separation",
    "existence_report",
    "find_solitary_separators",
    "Draws",
    "GibbsConfig",
    "build_prior",
    "gibbs",
    "log_posterior",
    "rw_metropolis",
    "ChainSummary",
    "summarize",
    "PredictionResult",
    "evaluate",
    "map_estimate",
    "predict_mc",
]
