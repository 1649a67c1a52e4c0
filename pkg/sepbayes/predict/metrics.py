"""Out-of-sample success probabilities and their scores."""

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from sepbayes.config import get_section
from sepbayes.dataset import Dataset
from sepbayes.errors import PredictionError
from sepbayes.samplers import Draws, get_link
from sepbayes.samplers.links import Link, LinkFunction

logger = logging.getLogger(__name__)


def _threshold(threshold: float | None) -> float:
    if threshold is None:
        return float(get_section("prediction").get("threshold", 0.5))
    return float(threshold)


def _pair(probs: ArrayLike, y: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    probs = np.asarray(probs, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if probs.shape != y.shape:
        raise PredictionError(f"{probs.size} probabilities for {y.size} outcomes")
    if np.any((y != 0.0) & (y != 1.0)):
        raise PredictionError("Outcomes must be 0 or 1")
    return probs, y


def misclassification(probs: ArrayLike, y_test: ArrayLike, threshold: float | None = None) -> float:
    """Share of observations with 1{p >= threshold} != y; ties count as success."""
    probs, y = _pair(probs, y_test)
    predicted = (probs >= _threshold(threshold)).astype(float)
    return float(np.mean(predicted != y))


def brier(probs: ArrayLike, y_test: ArrayLike) -> float:
    """Mean squared difference between probabilities and outcomes."""
    probs, y = _pair(probs, y_test)
    if np.any((probs < 0.0) | (probs > 1.0)) or not np.all(np.isfinite(probs)):
        raise PredictionError("Probabilities must lie in [0, 1]")
    return float(np.mean((probs - y) ** 2))


@dataclass
class PredictionResult:
    """Probabilities, classifications and aggregate scores on a test set."""

    probabilities: np.ndarray
    classifications: np.ndarray
    misclassification: float
    brier: float
    threshold: float = 0.5
    label: str = "MCMC"

    @property
    def n_test(self) -> int:
        return int(self.probabilities.size)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "n_test": self.n_test,
            "threshold": self.threshold,
            "misclassification": self.misclassification,
            "brier": self.brier,
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"probability": self.probabilities, "classification": self.classifications}
        )


def evaluate(
    probs: ArrayLike, y_test: ArrayLike, threshold: float | None = None, label: str = "MCMC"
) -> PredictionResult:
    """Score probabilities against outcomes."""
    threshold = _threshold(threshold)
    probs = np.asarray(probs, dtype=float)
    result = PredictionResult(
        probabilities=probs,
        classifications=(probs >= threshold).astype(np.int8),
        misclassification=misclassification(probs, y_test, threshold),
        brier=brier(probs, y_test),
        threshold=threshold,
        label=label,
    )
    logger.info(
        f"{label}: misclassification {result.misclassification:.3f}, "
        f"Brier {result.brier:.3f} on {result.n_test} observations"
    )
    return result


def _test_matrix(draws: Draws, test: "Dataset | ArrayLike") -> np.ndarray:
    if isinstance(test, Dataset):
        if test.names != draws.names:
            raise PredictionError(
                f"Test columns {list(test.names)} do not match the fitted coefficients {list(draws.names)}"
            )
        if draws.standardization is not None:
            if test.standardization is None:
                raise PredictionError(
                    "Test data are unstandardized; apply the training standardization record first"
                )
            if test.standardization.to_dict() != draws.standardization.to_dict():
                raise PredictionError("Test data were standardized with a different record")
        return test.X
    X = np.asarray(test, dtype=float)
    if X.ndim != 2 or X.shape[1] != draws.p:
        raise PredictionError(f"Test matrix has shape {X.shape}, expected (m, {draws.p})")
    return X


def predict_mc(
    draws: Draws,
    test: "Dataset | ArrayLike",
    link: "str | Link | LinkFunction | None" = None,
    block: int | None = None,
) -> np.ndarray:
    """Monte Carlo success probabilities: the average of F(x_i' beta) over the draws.

    Args:
        draws: Posterior draws
        test: Test Dataset (its standardization record must match the draws'),
            or a raw matrix already on the training scale
        link: Link of the fitted model (defaults to the draws' link; a different link is an error)
        block: Draws per evaluation block (default from settings)

    Raises:
        PredictionError: Column or standardization mismatch, or a link other than the fitted one
    """
    fitted = get_link(draws.link or Link.LOGIT)
    fn = fitted if link is None else get_link(link)
    if fn.link is not fitted.link:
        raise PredictionError(f"Draws were fitted with the {fitted.link.value} link, not {fn.link.value}")
    X = _test_matrix(draws, test)
    block = int(get_section("prediction").get("draw_block", 10000)) if block is None else block

    total = np.zeros(X.shape[0])
    for start in range(0, draws.n_draws, block):
        eta = X @ draws.samples[start : start + block].T
        total += fn.cdf(eta).sum(axis=1)
    return total / draws.n_draws


def predict_point(
    beta: ArrayLike, test: "Dataset | ArrayLike", link: "str | Link | LinkFunction" = Link.LOGIT
) -> np.ndarray:
    """Success probabilities F(x_i' beta) at a single coefficient vector."""
    X = test.X if isinstance(test, Dataset) else np.asarray(test, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if X.ndim != 2 or X.shape[1] != beta.shape[0]:
        raise PredictionError(f"Test matrix has shape {X.shape}, expected (m, {beta.shape[0]})")
    return get_link(link).cdf(X @ beta)
