"""Log posterior of a binary regression under any supported prior and link."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from sepbayes.dataset import Dataset
from sepbayes.errors import DatasetError
from .links import Link, LinkFunction, get_link
from .priors import PriorSpec


def _signs(d: Dataset) -> np.ndarray:
    return 2.0 * d.y.astype(float) - 1.0


def _check_beta(beta: ArrayLike, p: int) -> np.ndarray:
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (p,):
        raise DatasetError(f"beta has shape {beta.shape}, expected ({p},)")
    return beta


def log_likelihood(beta: ArrayLike, d: Dataset, link: "str | Link | LinkFunction" = Link.LOGIT) -> float:
    """Sum over successes of log F(x'beta) plus over failures of log F(-x'beta)."""
    beta = _check_beta(beta, d.p)
    fn = get_link(link)
    return float(fn.log_cdf(_signs(d) * (d.X @ beta)).sum())


@dataclass(frozen=True, eq=False)
class Posterior:
    """Unnormalized log posterior with gradient and Hessian.

    `d = None` leaves only the prior.
    """

    d: Dataset | None
    prior: PriorSpec
    link: LinkFunction

    def __post_init__(self):
        object.__setattr__(self, "link", get_link(self.link))
        if self.d is not None and self.d.p != self.prior.p:
            raise DatasetError(f"Prior covers {self.prior.p} coefficients but the data have {self.d.p}")

    @property
    def p(self) -> int:
        return self.prior.p

    def _signed(self, beta: np.ndarray) -> np.ndarray:
        return _signs(self.d) * (self.d.X @ beta)

    def log_density(self, beta: ArrayLike) -> float:
        beta = _check_beta(beta, self.p)
        value = self.prior.log_density(beta)
        if self.d is not None:
            value += float(self.link.log_cdf(self._signed(beta)).sum())
        return value

    def gradient(self, beta: ArrayLike) -> np.ndarray:
        beta = _check_beta(beta, self.p)
        grad = self.prior.gradient(beta)
        if self.d is not None:
            s = _signs(self.d)
            grad = grad + self.d.X.T @ (s * self.link.hazard(self._signed(beta)))
        return grad

    def hessian(self, beta: ArrayLike) -> np.ndarray:
        beta = _check_beta(beta, self.p)
        hess = self.prior.hessian(beta)
        if self.d is not None:
            w = self.link.curvature(self._signed(beta))
            hess = hess + self.d.X.T @ (w[:, None] * self.d.X)
        return hess


def log_posterior(
    beta: ArrayLike,
    d: Dataset | None,
    prior: PriorSpec,
    link: "str | Link | LinkFunction" = Link.LOGIT,
) -> float:
    """Log likelihood plus log prior density at beta (up to the normalizing constant)."""
    return Posterior(d, prior, link).log_density(beta)
