"""Posterior mode by damped Newton ascent."""

import logging
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike
from scipy.linalg import cho_solve

from sepbayes.config import get_section
from sepbayes.dataset import Dataset
from sepbayes.distributions import cholesky_lower
from sepbayes.errors import DistributionError
from sepbayes.samplers import Posterior, PriorSpec
from sepbayes.samplers.links import Link, LinkFunction

logger = logging.getLogger(__name__)

_MAX_HALVINGS = 60


@dataclass
class ModeEstimate:
    beta: np.ndarray
    converged: bool
    iterations: int
    grad_norm: float
    log_posterior: float
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "beta": self.beta.tolist(),
            "converged": self.converged,
            "iterations": self.iterations,
            "grad_norm": self.grad_norm,
            "log_posterior": self.log_posterior,
            "notes": self.notes,
        }


def map_estimate(
    d: Dataset,
    prior: PriorSpec,
    link: "str | Link | LinkFunction" = Link.LOGIT,
    tol: float | None = None,
    max_iter: int | None = None,
    start: ArrayLike | None = None,
) -> ModeEstimate:
    """Maximize the log posterior by Newton's method with step halving.

    Where -H is not positive definite the iterate takes a gradient step
    instead, and a note records it. Convergence means the gradient's
    infinity norm fell below `tol`; otherwise the best iterate comes back
    with converged=False.

    Args:
        d: Dataset
        prior: Proper prior (every supported family is)
        link: Link function
        tol: Gradient tolerance (default 1e-6)
        max_iter: Iteration budget (default 200)
        start: Starting point (default zeros)
    """
    defaults = get_section("mode")
    tol = float(defaults.get("tolerance", 1e-6)) if tol is None else tol
    max_iter = int(defaults.get("max_iter", 200)) if max_iter is None else max_iter

    posterior = Posterior(d, prior, link)
    beta = np.zeros(posterior.p) if start is None else np.asarray(start, dtype=float).copy()
    value = posterior.log_density(beta)
    grad = posterior.gradient(beta)
    notes: list[str] = []

    iteration = 0
    while iteration < max_iter and np.max(np.abs(grad)) >= tol:
        iteration += 1
        try:
            L = cholesky_lower(-posterior.hessian(beta))
            direction = cho_solve((L, True), grad)
        except DistributionError:
            direction = grad
            notes.append(f"iteration {iteration}: Hessian not negative definite, took a gradient step")

        step = 1.0
        for _ in range(_MAX_HALVINGS):
            candidate = beta + step * direction
            candidate_value = posterior.log_density(candidate)
            if np.isfinite(candidate_value) and candidate_value >= value:
                break
            step *= 0.5
        else:
            notes.append(f"iteration {iteration}: no ascent along the search direction")
            break

        beta, value = candidate, candidate_value
        grad = posterior.gradient(beta)
        logger.debug(f"Newton iteration {iteration}: log posterior {value:.6f}, step {step:g}")

    grad_norm = float(np.max(np.abs(grad)))
    converged = grad_norm < tol
    if not converged:
        logger.warning(f"Mode search stopped after {iteration} iterations with gradient norm {grad_norm:.3g}")
    return ModeEstimate(
        beta=beta,
        converged=converged,
        iterations=iteration,
        grad_norm=grad_norm,
        log_posterior=value,
        notes=notes,
    )
