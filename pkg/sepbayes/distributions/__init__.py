"""Distributions module.

This module provides:
- RngStream: seedable, independently usable random streams
- pg_density / sample_pg: the Polya-Gamma PG(1, k) density and exact sampler
- sample_inverse_gamma, sample_mvn, sample_student_t: Gibbs building blocks
"""

from sepbayes.distributions.rng import RngStream
from sepbayes.distributions.polya_gamma import (
    pg_cdf,
    pg_density,
    pg_mean,
    sample_pg,
    sample_pg_array,
)
from sepbayes.distributions.continuous import (
    cholesky_lower,
    sample_inverse_gamma,
    sample_mvn,
    sample_mvn_precision,
    sample_student_t,
)

__all__ = [
    "RngStream",
    "pg_cdf",
    "pg_density",
    "pg_mean",
    "sample_pg",
    "sample_pg_array",
    "cholesky_lower",
    "sample_inverse_gamma",
    "sample_mvn",
    "sample_mvn_precision",
    "sample_student_t",
]
