"""Single-series MCMC diagnostics: running means, autocorrelation, effective sample size."""

import logging

import numpy as np
from numpy.typing import ArrayLike

from sepbayes.errors import DiagnosticsError

logger = logging.getLogger(__name__)

MIN_ESS_LENGTH = 10
ESS_CAP_FACTOR = 10


def _series(series: ArrayLike, name: str | None = None) -> np.ndarray:
    x = np.asarray(series, dtype=float)
    label = f" '{name}'" if name else ""
    if x.ndim != 1:
        raise DiagnosticsError(f"Series{label} must be one-dimensional, got shape {x.shape}")
    if x.size == 0:
        raise DiagnosticsError(f"Series{label} is empty")
    if not np.all(np.isfinite(x)):
        raise DiagnosticsError(f"Series{label} has non-finite values")
    return x


def running_mean(series: ArrayLike) -> np.ndarray:
    """output[t] = mean(series[0..t])."""
    x = _series(series)
    return np.cumsum(x) / np.arange(1, x.size + 1)


def autocorrelation(series: ArrayLike, max_lag: int, name: str | None = None) -> np.ndarray:
    """Biased sample autocorrelation at lags 0..max_lag, computed by FFT.

    Raises:
        DiagnosticsError: Constant series, or max_lag outside [0, S)
    """
    x = _series(series, name)
    n = x.size
    if not 0 <= max_lag < n:
        raise DiagnosticsError(f"max_lag must lie in [0, {n}), got {max_lag}")
    centred = x - x.mean()
    if not np.any(centred != 0.0):
        label = f"'{name}'" if name else "series"
        raise DiagnosticsError(f"Autocorrelation of {label} is undefined: the values are constant")
    size = 1 << (2 * n - 1).bit_length()
    spectrum = np.fft.rfft(centred, size)
    acov = np.fft.irfft(spectrum * np.conj(spectrum), size)[:n] / n
    return acov[: max_lag + 1] / acov[0]


def integrated_autocorrelation_time(series: ArrayLike, name: str | None = None) -> float:
    """1 + 2 sum of autocorrelations, truncated by Geyer's initial positive sequence."""
    x = _series(series, name)
    rho = autocorrelation(x, x.size - 1, name)
    total = 0.0
    for k in range(0, x.size - 1, 2):
        pair = rho[k] + rho[k + 1]
        if pair <= 0.0:
            break
        total += pair
    return -1.0 + 2.0 * total


def ess(series: ArrayLike, name: str | None = None) -> float:
    """Effective sample size S / tau, reported as min(estimate, 10 S).

    Anticorrelated chains can make tau nonpositive; those get the cap.

    Raises:
        DiagnosticsError: Fewer than 10 values, or a constant series
    """
    x = _series(series, name)
    if x.size < MIN_ESS_LENGTH:
        raise DiagnosticsError(f"ESS needs at least {MIN_ESS_LENGTH} draws, got {x.size}")
    tau = integrated_autocorrelation_time(x, name)
    cap = float(ESS_CAP_FACTOR * x.size)
    if tau <= 0.0:
        return cap
    return min(x.size / tau, cap)
