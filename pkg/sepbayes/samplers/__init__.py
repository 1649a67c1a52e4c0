"""Samplers module.

This module provides:
- Links (logit, probit, robit) and link_probabilities
- Prior families: IndependentT, IndependentNormal, MultivariateT, build_prior
- log_posterior / Posterior: the target both samplers use
- Polya-Gamma Gibbs samplers for the logit link
- rw_metropolis: adaptive random-walk Metropolis for any link
- GibbsConfig / Draws: run shape and retained draws
"""

from sepbayes.samplers.links import Link, LinkFunction, get_link, link_probabilities, parse_link
from sepbayes.samplers.priors import (
    IndependentNormal,
    IndependentT,
    MultivariateT,
    PriorFamily,
    PriorSpec,
    build_prior,
    prior_from_dict,
    zellner_siow_matrix,
)
from sepbayes.samplers.posterior import Posterior, log_likelihood, log_posterior
from sepbayes.samplers.chains import ChainState, Draws, GibbsConfig, run_chains
from sepbayes.samplers.gibbs import (
    gibbs,
    gibbs_independent_t,
    gibbs_multivariate_t,
    gibbs_normal,
)
from sepbayes.samplers.metropolis import rw_metropolis

__all__ = [
    # Links
    "Link",
    "LinkFunction",
    "get_link",
    "link_probabilities",
    "parse_link",
    # Priors
    "IndependentNormal",
    "IndependentT",
    "MultivariateT",
    "PriorFamily",
    "PriorSpec",
    "build_prior",
    "prior_from_dict",
    "zellner_siow_matrix",
    # Target
    "Posterior",
    "log_likelihood",
    "log_posterior",
    # Runs
    "ChainState",
    "Draws",
    "GibbsConfig",
    "run_chains",
    "gibbs",
    "gibbs_independent_t",
    "gibbs_multivariate_t",
    "gibbs_normal",
    "rw_metropolis",
]
