"""Prior families for the regression coefficients.

Three families are supported: independent Student-t (the Cauchy is df = 1),
independent normal, and multivariate Student-t. Each knows its log density,
the first two derivatives of that log density, and how to draw from itself.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

import numpy as np
from numpy.typing import ArrayLike
from scipy import stats
from scipy.linalg import cho_solve
from scipy.special import gammaln

from sepbayes.config import (
    get_default_location,
    get_default_scales,
    get_prior_preset,
)
from sepbayes.dataset import Dataset
from sepbayes.distributions import (
    RngStream,
    cholesky_lower,
    sample_inverse_gamma,
    sample_student_t,
)
from sepbayes.errors import ConfigError, DistributionError

logger = logging.getLogger(__name__)


class PriorFamily(str, Enum):
    INDEPENDENT_T = "independent-t"
    INDEPENDENT_NORMAL = "independent-normal"
    MULTIVARIATE_T = "multivariate-t"


def _vector(name: str, values: ArrayLike, p: int | None = None) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(values, dtype=float))
    if arr.ndim != 1:
        raise ConfigError(f"Prior {name} must be a vector, got shape {arr.shape}")
    if p is not None and arr.shape[0] != p:
        raise ConfigError(f"Prior {name} has length {arr.shape[0]}, expected {p}")
    if not np.all(np.isfinite(arr)):
        raise ConfigError(f"Prior {name} must be finite")
    return arr


def _check_df(df: float) -> float:
    df = float(df)
    if not (np.isfinite(df) and df > 0):
        raise ConfigError(f"Degrees of freedom must be positive and finite, got {df}")
    return df


@dataclass(frozen=True, eq=False)
class IndependentT:
    """beta_j ~ t_df(location_j, scale_j) independently."""

    df: float
    locations: np.ndarray
    scales: np.ndarray

    family = PriorFamily.INDEPENDENT_T

    def __post_init__(self):
        object.__setattr__(self, "df", _check_df(self.df))
        scales = _vector("scales", self.scales)
        if np.any(scales <= 0):
            raise ConfigError("Prior scales must be positive")
        object.__setattr__(self, "scales", scales)
        object.__setattr__(self, "locations", _vector("locations", self.locations, scales.shape[0]))

    @property
    def p(self) -> int:
        return self.scales.shape[0]

    @property
    def is_cauchy(self) -> bool:
        return self.df == 1.0

    def log_density(self, beta: np.ndarray) -> float:
        return float(stats.t.logpdf(beta, self.df, self.locations, self.scales).sum())

    def gradient(self, beta: np.ndarray) -> np.ndarray:
        r = beta - self.locations
        return -(self.df + 1.0) * r / (self.df * self.scales**2 + r * r)

    def hessian(self, beta: np.ndarray) -> np.ndarray:
        r = beta - self.locations
        vs2 = self.df * self.scales**2
        return np.diag((self.df + 1.0) * (r * r - vs2) / (vs2 + r * r) ** 2)

    def sample(self, rng: RngStream) -> np.ndarray:
        return np.asarray(sample_student_t(self.df, self.locations, self.scales, rng, size=self.p))

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "df": self.df,
            "locations": self.locations.tolist(),
            "scales": self.scales.tolist(),
        }


@dataclass(frozen=True, eq=False)
class IndependentNormal:
    """beta_j ~ N(location_j, scale_j^2) independently."""

    locations: np.ndarray
    scales: np.ndarray

    family = PriorFamily.INDEPENDENT_NORMAL

    def __post_init__(self):
        scales = _vector("scales", self.scales)
        if np.any(scales <= 0):
            raise ConfigError("Prior scales must be positive")
        object.__setattr__(self, "scales", scales)
        object.__setattr__(self, "locations", _vector("locations", self.locations, scales.shape[0]))

    @property
    def p(self) -> int:
        return self.scales.shape[0]

    def log_density(self, beta: np.ndarray) -> float:
        return float(stats.norm.logpdf(beta, self.locations, self.scales).sum())

    def gradient(self, beta: np.ndarray) -> np.ndarray:
        return -(beta - self.locations) / self.scales**2

    def hessian(self, beta: np.ndarray) -> np.ndarray:
        return np.diag(-1.0 / self.scales**2)

    def sample(self, rng: RngStream) -> np.ndarray:
        return self.locations + self.scales * rng.standard_normal(self.p)

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "locations": self.locations.tolist(),
            "scales": self.scales.tolist(),
        }


@dataclass(frozen=True, eq=False)
class MultivariateT:
    """beta ~ multivariate t_df(location, scale_matrix); df = 1 is the multivariate Cauchy."""

    df: float
    location: np.ndarray
    scale_matrix: np.ndarray
    _chol: np.ndarray = field(init=False, repr=False)

    family = PriorFamily.MULTIVARIATE_T

    def __post_init__(self):
        object.__setattr__(self, "df", _check_df(self.df))
        location = _vector("location", self.location)
        matrix = np.asarray(self.scale_matrix, dtype=float)
        if matrix.shape != (location.shape[0], location.shape[0]):
            raise ConfigError(
                f"Scale matrix shape {matrix.shape} does not match location length {location.shape[0]}"
            )
        try:
            chol = cholesky_lower(matrix)
        except DistributionError as e:
            raise ConfigError(f"Scale matrix must be symmetric positive definite: {e}") from None
        object.__setattr__(self, "location", location)
        object.__setattr__(self, "scale_matrix", matrix)
        object.__setattr__(self, "_chol", chol)

    @property
    def p(self) -> int:
        return self.location.shape[0]

    @property
    def precision(self) -> np.ndarray:
        """Inverse of the scale matrix."""
        return cho_solve((self._chol, True), np.eye(self.p))

    def _quad(self, beta: np.ndarray) -> tuple[np.ndarray, float]:
        r = beta - self.location
        solved = cho_solve((self._chol, True), r)
        return solved, float(r @ solved)

    def log_density(self, beta: np.ndarray) -> float:
        v, p = self.df, self.p
        _, q = self._quad(beta)
        log_det = 2.0 * np.log(np.diag(self._chol)).sum()
        return float(
            gammaln((v + p) / 2.0)
            - gammaln(v / 2.0)
            - 0.5 * p * np.log(v * np.pi)
            - 0.5 * log_det
            - 0.5 * (v + p) * np.log1p(q / v)
        )

    def gradient(self, beta: np.ndarray) -> np.ndarray:
        solved, q = self._quad(beta)
        return -(self.df + self.p) * solved / (self.df + q)

    def hessian(self, beta: np.ndarray) -> np.ndarray:
        solved, q = self._quad(beta)
        c = self.df + self.p
        denom = self.df + q
        return -c * self.precision / denom + 2.0 * c * np.outer(solved, solved) / denom**2

    def sample(self, rng: RngStream) -> np.ndarray:
        phi = sample_inverse_gamma(self.df / 2.0, self.df / 2.0, rng)
        return self.location + np.sqrt(phi) * (self._chol @ rng.standard_normal(self.p))

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "df": self.df,
            "location": self.location.tolist(),
            "scale_matrix": self.scale_matrix.tolist(),
        }


PriorSpec = Union[IndependentT, IndependentNormal, MultivariateT]


def prior_from_dict(data: dict) -> PriorSpec:
    """Rebuild a prior from its `to_dict` form."""
    family = PriorFamily(data["family"])
    if family is PriorFamily.INDEPENDENT_T:
        return IndependentT(df=data["df"], locations=data["locations"], scales=data["scales"])
    if family is PriorFamily.INDEPENDENT_NORMAL:
        return IndependentNormal(locations=data["locations"], scales=data["scales"])
    return MultivariateT(df=data["df"], location=data["location"], scale_matrix=data["scale_matrix"])


def default_scales(d: Dataset, scale: float | None = None, scale_intercept: float | None = None) -> np.ndarray:
    """Per-coefficient scales: the intercept scale on the intercept, `scale` elsewhere."""
    intercept_default, coefficient_default = get_default_scales()
    scale = coefficient_default if scale is None else float(scale)
    scale_intercept = intercept_default if scale_intercept is None else float(scale_intercept)
    scales = np.full(d.p, scale)
    if d.intercept_index is not None:
        scales[d.intercept_index] = scale_intercept
    return scales


def zellner_siow_matrix(d: Dataset) -> np.ndarray:
    """n (X'X)^-1.

    Raises:
        ConfigError: X'X is singular
    """
    gram = d.X.T @ d.X
    try:
        chol = cholesky_lower(gram)
    except DistributionError as e:
        raise ConfigError(f"Zellner-Siow scale matrix needs X of full column rank: {e}") from None
    matrix = d.n * cho_solve((chol, True), np.eye(d.p))
    return 0.5 * (matrix + matrix.T)


def build_prior(
    preset: str,
    d: Dataset,
    df: float | None = None,
    scale: float | None = None,
    scale_intercept: float | None = None,
    location: float | ArrayLike | None = None,
    sigma_matrix: str = "identity",
) -> PriorSpec:
    """Build a prior for dataset `d` from a named preset plus overrides.

    Args:
        preset: Preset name from priors.yaml (cauchy, t, normal, mvt)
        d: Dataset whose columns the prior covers
        df: Degrees of freedom override (t and mvt families)
        scale: Scale for non-intercept coefficients (default 2.5)
        scale_intercept: Scale for the intercept (default 10)
        location: Common location, or one per coefficient (default 0)
        sigma_matrix: "identity" (diagonal of squared scales) or "zellner-siow"
            (multivariate family only)

    Raises:
        ConfigError: Unknown preset or inconsistent overrides
    """
    try:
        spec = get_prior_preset(preset)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    family = PriorFamily(spec["family"])
    df = float(spec.get("df", 1.0)) if df is None else float(df)

    location = get_default_location() if location is None else location
    locations = np.broadcast_to(np.asarray(location, dtype=float), (d.p,)).copy()
    scales = default_scales(d, scale, scale_intercept)

    if sigma_matrix not in ("identity", "zellner-siow"):
        raise ConfigError(f"Unknown scale matrix '{sigma_matrix}'")
    if sigma_matrix == "zellner-siow" and family is not PriorFamily.MULTIVARIATE_T:
        raise ConfigError("The Zellner-Siow scale matrix applies to the multivariate prior only")

    if family is PriorFamily.INDEPENDENT_T:
        prior = IndependentT(df=df, locations=locations, scales=scales)
    elif family is PriorFamily.INDEPENDENT_NORMAL:
        prior = IndependentNormal(locations=locations, scales=scales)
    else:
        matrix = zellner_siow_matrix(d) if sigma_matrix == "zellner-siow" else np.diag(scales**2)
        prior = MultivariateT(df=df, location=locations, scale_matrix=matrix)

    logger.info(f"Prior '{preset}': {prior.to_dict()['family']} over {d.p} coefficients")
    return prior
