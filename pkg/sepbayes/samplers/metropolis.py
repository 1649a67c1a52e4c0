"""Random-walk Metropolis for any supported prior and link."""

import logging
import math
import time
from functools import partial

import numpy as np

from sepbayes.config import get_sampler_settings
from sepbayes.dataset import Dataset
from sepbayes.distributions import RngStream
from sepbayes.errors import ConfigError, SamplerError
from .chains import (
    ChainResult,
    ChainState,
    Draws,
    GibbsConfig,
    divergence_error,
    initial_beta,
    join_chains,
    run_chains,
)
from .links import Link, LinkFunction, get_link
from .posterior import Posterior
from .priors import PriorSpec

logger = logging.getLogger(__name__)

_FALLBACK_STEP = 0.1


def default_step_scale(posterior: Posterior, beta: np.ndarray) -> float:
    """2.38 / sqrt(p) times the typical curvature scale at the start, or 0.1."""
    curvature = -np.diag(posterior.hessian(beta))
    if np.all(np.isfinite(curvature)) and np.all(curvature > 0):
        return 2.38 / math.sqrt(posterior.p) * float(np.sqrt(np.mean(1.0 / curvature)))
    return _FALLBACK_STEP


def _metropolis_chain(
    chain_id: int,
    posterior: Posterior,
    cfg: GibbsConfig,
    step_scale: float | None,
    target: float,
    exponent: float,
) -> ChainResult:
    rng = RngStream(cfg.seed, chain_id)
    state = ChainState(beta=initial_beta(posterior.prior, cfg, rng))
    current = posterior.log_density(state.beta)
    if not np.isfinite(current):
        raise SamplerError(f"chain {chain_id}: log posterior is not finite at the initial point", 0)

    log_step = math.log(step_scale if step_scale is not None else default_step_scale(posterior, state.beta))
    p = posterior.p
    out = np.empty((cfg.kept_per_chain, p))
    row = 0
    accepted = 0
    start = time.perf_counter()
    logger.info(f"Chain {chain_id} started: {cfg.iterations} iterations, step {math.exp(log_step):.3g}")

    for it in range(cfg.iterations):
        proposal = state.beta + math.exp(log_step) * rng.standard_normal(p)
        candidate = posterior.log_density(proposal)
        log_ratio = candidate - current if np.isfinite(candidate) else -np.inf
        accept_prob = 1.0 if log_ratio >= 0 else math.exp(log_ratio)
        if rng.uniform() < accept_prob:
            state.beta, current = proposal, candidate
            if it >= cfg.burnin:
                accepted += 1

        if it < cfg.burnin:
            # Robbins-Monro update; the step is frozen once burn-in ends
            log_step += (accept_prob - target) / (it + 1) ** exponent

        reason = state.problem(cfg.divergence_bound)
        if reason:
            raise divergence_error(state, chain_id, it, reason)
        if cfg.keeps(it):
            out[row] = state.beta
            row += 1

    rate = accepted / (cfg.iterations - cfg.burnin)
    wall = time.perf_counter() - start
    logger.info(
        f"Chain {chain_id} finished: {row} draws, acceptance {rate:.3f}, "
        f"step {math.exp(log_step):.3g}, {wall:.1f}s"
    )
    return ChainResult(chain_id=chain_id, samples=out, acceptance=rate, wall_time=wall)


def rw_metropolis(
    d: Dataset | None,
    prior: PriorSpec,
    link: "str | Link | LinkFunction",
    cfg: GibbsConfig,
    step_scale: float | None = None,
    workers: int | None = None,
) -> Draws:
    """Spherical Gaussian random-walk Metropolis.

    During burn-in the log step size follows a Robbins-Monro recursion toward
    the target acceptance rate (0.234 by default); afterwards it is fixed, so
    the retained draws come from a time-homogeneous kernel.

    Args:
        d: Dataset, or None for the prior alone
        prior: Any PriorSpec
        link: logit, probit or robit
        cfg: Run shape
        step_scale: Initial proposal scale (default from settings, else from
            the curvature at the starting point)
        workers: Process count for the chains (default from settings)

    Returns:
        Draws with per-chain post-burn-in acceptance rates

    Raises:
        SamplerError: Non-finite log posterior at initialization
        DivergenceError: A chain left the finite region
    """
    if d is not None and d.p != prior.p:
        raise ConfigError(f"Prior covers {prior.p} coefficients but the data have {d.p}")
    settings = get_sampler_settings()
    step_scale = settings.initial_step_scale if step_scale is None else step_scale
    if step_scale is not None and not step_scale > 0:
        raise ConfigError(f"Step scale must be positive, got {step_scale}")

    fn = get_link(link)
    posterior = Posterior(d, prior, fn)
    chain_fn = partial(
        _metropolis_chain,
        posterior=posterior,
        cfg=cfg,
        step_scale=step_scale,
        target=settings.target_acceptance,
        exponent=settings.adaptation_exponent,
    )
    results = run_chains(chain_fn, cfg.chains, workers)
    names = d.names if d is not None else tuple(f"beta{j}" for j in range(prior.p))
    draws = join_chains(results, names, cfg, sampler="metropolis", link=fn.link.value, prior=prior.to_dict())
    if d is not None and d.standardization is not None:
        draws = draws.with_metadata(standardization=d.standardization)
    return draws
