"""Polya-Gamma Gibbs samplers for Bayesian logistic regression.

Every sweep draws, in order:

1. the coefficients from their Gaussian full conditional given the PG
   variables z and the prior precision;
2. the prior's mixing variables (gamma_j for independent t, phi for the
   multivariate t; nothing for the normal prior);
3. z_i ~ PG(1, |x_i' beta|).

Nonzero prior locations mu are handled by sampling beta - mu with the offset
X mu moved into the likelihood term, then adding mu back.
"""

import logging
import time
from functools import partial

import numpy as np

from sepbayes.dataset import Dataset
from sepbayes.distributions import (
    RngStream,
    sample_inverse_gamma,
    sample_mvn_precision,
    sample_pg_array,
)
from sepbayes.errors import ConfigError, DistributionError, SamplerError
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
from .priors import IndependentNormal, IndependentT, MultivariateT, PriorSpec

logger = logging.getLogger(__name__)


def beta_conditional(
    X: np.ndarray,
    z: np.ndarray,
    kappa: np.ndarray,
    offset: np.ndarray,
    prior_precision: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Precision X'ZX + prior precision and linear term X'(kappa - z * offset).

    The conditional of the shifted coefficients is N(P^-1 b, P^-1).
    """
    precision = X.T @ (z[:, None] * X) + prior_precision
    linear = X.T @ (kappa - z * offset)
    return 0.5 * (precision + precision.T), linear


def gamma_conditional(
    beta_tilde: np.ndarray, df: float, scales: np.ndarray
) -> tuple[float, np.ndarray]:
    """IG parameters of the independent-t mixing variances given shifted coefficients."""
    return (df + 1.0) / 2.0, (beta_tilde**2 + df * scales**2) / 2.0


def phi_conditional(
    beta_tilde: np.ndarray, df: float, scale_precision: np.ndarray
) -> tuple[float, float]:
    """IG parameters of the multivariate-t mixing scalar given shifted coefficients."""
    p = beta_tilde.shape[0]
    return (df + p) / 2.0, (df + float(beta_tilde @ scale_precision @ beta_tilde)) / 2.0


class _NormalMixing:
    def __init__(self, prior: IndependentNormal):
        self._precision = np.diag(1.0 / prior.scales**2)

    def initialize(self, state: ChainState) -> None:
        pass

    def precision(self, state: ChainState) -> np.ndarray:
        return self._precision

    def update(self, state: ChainState, beta_tilde: np.ndarray, rng: RngStream) -> None:
        pass


class _IndependentTMixing:
    def __init__(self, prior: IndependentT):
        self.df = prior.df
        self.scales = prior.scales

    def initialize(self, state: ChainState) -> None:
        state.gamma = self.scales**2

    def precision(self, state: ChainState) -> np.ndarray:
        return np.diag(1.0 / state.gamma)

    def update(self, state: ChainState, beta_tilde: np.ndarray, rng: RngStream) -> None:
        shape, scale = gamma_conditional(beta_tilde, self.df, self.scales)
        state.gamma = sample_inverse_gamma(shape, scale, rng)


class _MultivariateTMixing:
    def __init__(self, prior: MultivariateT):
        self.df = prior.df
        self.scale_precision = prior.precision

    def initialize(self, state: ChainState) -> None:
        state.phi = 1.0

    def precision(self, state: ChainState) -> np.ndarray:
        return self.scale_precision / state.phi

    def update(self, state: ChainState, beta_tilde: np.ndarray, rng: RngStream) -> None:
        shape, scale = phi_conditional(beta_tilde, self.df, self.scale_precision)
        state.phi = sample_inverse_gamma(shape, scale, rng)


def _mixing_for(prior: PriorSpec):
    if isinstance(prior, IndependentT):
        return _IndependentTMixing(prior)
    if isinstance(prior, IndependentNormal):
        return _NormalMixing(prior)
    if isinstance(prior, MultivariateT):
        return _MultivariateTMixing(prior)
    raise ConfigError(f"Unsupported prior {type(prior).__name__}")


def prior_locations(prior: PriorSpec) -> np.ndarray:
    return prior.location if isinstance(prior, MultivariateT) else prior.locations


def _gibbs_chain(chain_id: int, d: Dataset | None, prior: PriorSpec, cfg: GibbsConfig) -> ChainResult:
    rng = RngStream(cfg.seed, chain_id)
    mixing = _mixing_for(prior)
    mu = prior_locations(prior)
    state = ChainState(beta=initial_beta(prior, cfg, rng))
    mixing.initialize(state)

    if d is not None:
        X = d.X
        kappa = d.y.astype(float) - 0.5
        offset = X @ mu
        state.z = sample_pg_array(np.zeros(d.n), rng)

    out = np.empty((cfg.kept_per_chain, prior.p))
    row = 0
    start = time.perf_counter()
    logger.info(f"Chain {chain_id} started: {cfg.iterations} iterations, seed {cfg.seed}")

    for it in range(cfg.iterations):
        prior_precision = mixing.precision(state)
        if d is None:
            precision, linear = prior_precision, np.zeros(prior.p)
        else:
            precision, linear = beta_conditional(X, state.z, kappa, offset, prior_precision)
        try:
            beta_tilde = sample_mvn_precision(linear, precision, rng)
        except DistributionError as e:
            raise SamplerError(f"chain {chain_id}: coefficient step failed: {e}", it) from e

        state.beta = mu + beta_tilde
        reason = state.problem(cfg.divergence_bound)
        if reason:
            raise divergence_error(state, chain_id, it, reason)

        mixing.update(state, beta_tilde, rng)
        if d is not None:
            state.z = sample_pg_array(np.abs(X @ state.beta), rng)
        reason = state.problem(cfg.divergence_bound)
        if reason:
            raise divergence_error(state, chain_id, it, reason)

        if cfg.keeps(it):
            out[row] = state.beta
            row += 1

    wall = time.perf_counter() - start
    logger.info(f"Chain {chain_id} finished: {row} draws in {wall:.1f}s")
    return ChainResult(chain_id=chain_id, samples=out, acceptance=None, wall_time=wall)


def _run_gibbs(
    d: Dataset | None,
    prior: PriorSpec,
    cfg: GibbsConfig,
    workers: int | None,
) -> Draws:
    if d is not None and d.p != prior.p:
        raise ConfigError(f"Prior covers {prior.p} coefficients but the data have {d.p}")
    names = d.names if d is not None else tuple(f"beta{j}" for j in range(prior.p))
    results = run_chains(partial(_gibbs_chain, d=d, prior=prior, cfg=cfg), cfg.chains, workers)
    draws = join_chains(results, names, cfg, sampler="gibbs", link="logit", prior=prior.to_dict())
    if d is not None and d.standardization is not None:
        draws = draws.with_metadata(standardization=d.standardization)
    return draws


def gibbs_independent_t(
    d: Dataset | None, prior: IndependentT, cfg: GibbsConfig, workers: int | None = None
) -> Draws:
    """Gibbs sampler under independent Student-t priors (Cauchy when df = 1)."""
    if not isinstance(prior, IndependentT):
        raise ConfigError("gibbs_independent_t needs an IndependentT prior")
    return _run_gibbs(d, prior, cfg, workers)


def gibbs_normal(
    d: Dataset | None, prior: IndependentNormal, cfg: GibbsConfig, workers: int | None = None
) -> Draws:
    """Gibbs sampler under independent normal priors (no mixing step)."""
    if not isinstance(prior, IndependentNormal):
        raise ConfigError("gibbs_normal needs an IndependentNormal prior")
    return _run_gibbs(d, prior, cfg, workers)


def gibbs_multivariate_t(
    d: Dataset | None, prior: MultivariateT, cfg: GibbsConfig, workers: int | None = None
) -> Draws:
    """Gibbs sampler under a multivariate Student-t prior with one mixing scalar."""
    if not isinstance(prior, MultivariateT):
        raise ConfigError("gibbs_multivariate_t needs a MultivariateT prior")
    return _run_gibbs(d, prior, cfg, workers)


def gibbs(d: Dataset | None, prior: PriorSpec, cfg: GibbsConfig, workers: int | None = None) -> Draws:
    """Dispatch to the Gibbs sampler matching the prior family."""
    return _run_gibbs(d, prior, cfg, workers)
