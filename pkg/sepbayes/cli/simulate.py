"""Seed-deterministic datasets for the separation scenarios.

- solitary: one standardized continuous column whose sign splits the classes
- no-solitary: complete separation at x2 = -0.3, so neither column is a
  solitary separator
- toy: a 0/1 column that is a solitary separator before centring only
- infection: age completely separates the infected from the uninfected
"""

import logging
from enum import Enum

import numpy as np

from sepbayes.dataset import Dataset
from sepbayes.distributions import RngStream
from sepbayes.errors import DatasetError

logger = logging.getLogger(__name__)

MIN_ROWS = 4
SEPARATING_THRESHOLD = -0.3
_MAX_ATTEMPTS = 1000


class Scenario(str, Enum):
    SOLITARY = "solitary"
    NO_SOLITARY = "no-solitary"
    TOY = "toy"
    INFECTION = "infection"


def _to_target_sd(x: np.ndarray) -> np.ndarray:
    """Centre and scale to sample sd 0.5."""
    x = x - x.mean()
    return 0.5 * x / np.std(x, ddof=1)


def _solitary(n: int, rng: RngStream) -> Dataset:
    n0 = n // 2
    n1 = n - n0
    positive = 0.5 + rng.uniform(size=n1)
    negative = 0.5 + rng.uniform(size=n0)
    # Class-0 values mirror the class-1 total so the mean is already zero
    negative *= positive.sum() / negative.sum()
    x = np.concatenate([-negative, positive])
    y = np.concatenate([np.zeros(n0), np.ones(n1)])
    order = rng.generator.permutation(n)
    return Dataset(X=_to_target_sd(x)[order, None], y=y[order], names=("x2",))


def _no_solitary(n: int, rng: RngStream) -> Dataset:
    """Sample until the standardized column keeps the gap around -0.3 and class 1 straddles zero."""
    n0 = max(1, round(0.33 * n))
    n1 = n - n0
    y = np.concatenate([np.zeros(n0), np.ones(n1)])
    for attempt in range(1, _MAX_ATTEMPTS + 1):
        low = -1.0 + 0.55 * rng.uniform(size=n0)
        high = -0.2 + 1.1 * rng.uniform(size=n1)
        high[0] = -0.2 + 0.15 * rng.uniform()
        high[-1] = 0.3 + 0.6 * rng.uniform()
        x = _to_target_sd(np.concatenate([low, high]))
        below, above = x[:n0], x[n0:]
        if (
            below.max() < SEPARATING_THRESHOLD < above.min()
            and above.min() < 0.0 < above.max()
        ):
            logger.debug(f"no-solitary scenario accepted after {attempt} attempts")
            order = rng.generator.permutation(n)
            return Dataset(X=x[order, None], y=y[order], names=("x2",))
    raise DatasetError(f"Could not realize the no-solitary scenario with n={n}")


def _toy(n: int) -> Dataset:
    if n % 4:
        raise DatasetError(f"The toy scenario needs n divisible by 4, got {n}")
    y = np.concatenate([np.zeros(n // 4), np.ones(n - n // 4)])
    x = np.concatenate([np.zeros(n // 2), np.ones(n // 2)])
    return Dataset(X=x[:, None], y=y, names=("x",))


def _infection(n: int, rng: RngStream) -> Dataset:
    n1 = n // 2
    n0 = n - n1
    age = np.concatenate([15.0 + 9.0 * rng.uniform(size=n0), 26.0 + 34.0 * rng.uniform(size=n1)])
    y = np.concatenate([np.zeros(n0), np.ones(n1)])
    gender = rng.generator.permutation(np.arange(n) % 2).astype(float)
    k = min(max(1, round(0.3 * n)), n - 1)
    history = rng.generator.permutation(np.concatenate([np.ones(k), np.zeros(n - k)]))
    order = rng.generator.permutation(n)
    X = np.column_stack([age, gender, history])[order]
    return Dataset(X=X, y=y[order], names=("age", "gender", "history"))


def simulate(scenario: "str | Scenario", n: int = 30, seed: int = 0) -> Dataset:
    """Generate a scenario dataset (no intercept column).

    Args:
        scenario: solitary, no-solitary, toy or infection
        n: Number of observations (at least 4)
        seed: Seed for the generator; equal seeds give identical datasets

    Raises:
        DatasetError: Unknown scenario or an n too small to realize it
    """
    try:
        scenario = Scenario(scenario)
    except ValueError:
        choices = ", ".join(s.value for s in Scenario)
        raise DatasetError(f"Unknown scenario '{scenario}' (choose from {choices})") from None
    if n < MIN_ROWS:
        raise DatasetError(f"Scenario '{scenario.value}' needs n >= {MIN_ROWS}, got {n}")

    rng = RngStream(seed)
    if scenario is Scenario.SOLITARY:
        d = _solitary(n, rng)
    elif scenario is Scenario.NO_SOLITARY:
        d = _no_solitary(n, rng)
    elif scenario is Scenario.TOY:
        d = _toy(n)
    else:
        d = _infection(n, rng)
    logger.info(f"Simulated '{scenario.value}': {d.summary()}")
    return d
