"""Inverse-gamma, multivariate normal and Student-t samplers."""

import numpy as np
from numpy.typing import ArrayLike
from scipy.linalg import cho_solve, solve_triangular
from scipy.linalg.lapack import dpotrf

from sepbayes.errors import DistributionError
from .rng import RngStream


def _positive(name: str, value) -> None:
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DistributionError(f"{name} must be positive and finite, got {value}")


def sample_inverse_gamma(shape: ArrayLike, scale: ArrayLike, rng: RngStream, size=None):
    """Draw from IG(shape, scale), density proportional to x^(-shape-1) exp(-scale/x).

    Array arguments broadcast, which is how the Gibbs sampler draws all
    mixing variances at once.
    """
    _positive("shape", shape)
    _positive("scale", scale)
    if size is None:
        size = np.broadcast(np.asarray(shape), np.asarray(scale)).shape or None
    draws = np.asarray(scale) / rng.standard_gamma(shape, size)
    return float(draws) if np.ndim(draws) == 0 else draws


def cholesky_lower(matrix: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor.

    Raises:
        DistributionError: Not symmetric positive definite; names the failing leading minor
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DistributionError(f"Expected a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise DistributionError("Matrix has non-finite entries")
    if not np.allclose(matrix, matrix.T, rtol=1e-10, atol=1e-12 * max(1.0, np.abs(matrix).max())):
        raise DistributionError("Matrix is not symmetric")
    factor, info = dpotrf(matrix, lower=1, clean=1)
    if info > 0:
        raise DistributionError(
            f"Matrix is not positive definite: leading minor of order {info} is not positive"
        )
    if info < 0:
        raise DistributionError(f"Cholesky factorization failed (argument {-info})")
    return factor


def sample_mvn(mean: ArrayLike, covariance: ArrayLike, rng: RngStream) -> np.ndarray:
    """mean + L xi with L the lower Cholesky factor of the covariance."""
    mean = np.asarray(mean, dtype=float)
    covariance = np.asarray(covariance, dtype=float)
    if covariance.shape != (mean.size, mean.size):
        raise DistributionError(f"Covariance shape {covariance.shape} does not match mean length {mean.size}")
    L = cholesky_lower(covariance)
    return mean + L @ rng.standard_normal(mean.size)


def sample_mvn_precision(linear: np.ndarray, precision: np.ndarray, rng: RngStream) -> np.ndarray:
    """Draw from N(P^-1 b, P^-1) given the precision P and b, factoring P once."""
    L = cholesky_lower(precision)
    mean = cho_solve((L, True), linear)
    return mean + solve_triangular(L, rng.standard_normal(linear.size), lower=True, trans="T")


def sample_student_t(df: float, location: float, scale: float, rng: RngStream, size=None):
    """Student-t by composition: location + sqrt(gamma) xi, gamma ~ IG(df/2, df scale^2 / 2)."""
    _positive("df", df)
    _positive("scale", scale)
    gamma = sample_inverse_gamma(df / 2.0, df * scale * scale / 2.0, rng, size=size)
    draws = location + np.sqrt(gamma) * rng.standard_normal(size)
    return float(draws) if np.ndim(draws) == 0 else draws
