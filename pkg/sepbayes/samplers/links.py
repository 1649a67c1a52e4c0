"""Binary-regression links evaluated in log space.

All supported links are symmetric CDFs, F(-t) = 1 - F(t), so the failure
probability is F(-t) and every per-row quantity is a function of the signed
linear predictor u = (2y - 1) t.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike
from scipy import stats
from scipy.special import log_ndtr

from sepbayes.config import get_robit_df
from sepbayes.errors import ConfigError

_LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)


class Link(str, Enum):
    LOGIT = "logit"
    PROBIT = "probit"
    ROBIT = "robit"


def parse_link(value: "str | Link") -> Link:
    """Resolve a link tag.

    Raises:
        ConfigError: Unknown tag
    """
    if isinstance(value, Link):
        return value
    try:
        return Link(str(value).lower())
    except ValueError:
        choices = ", ".join(link.value for link in Link)
        raise ConfigError(f"Unknown link '{value}' (choose from {choices})") from None


@dataclass(frozen=True)
class LinkFunction:
    """A link CDF F with the derivatives of log F needed for modes and proposals."""

    link: Link
    df: float | None = None

    def log_cdf(self, t: ArrayLike) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.link is Link.LOGIT:
            return -np.logaddexp(0.0, -t)
        if self.link is Link.PROBIT:
            return log_ndtr(t)
        return stats.t.logcdf(t, self.df)

    def cdf(self, t: ArrayLike) -> np.ndarray:
        return np.exp(self.log_cdf(t))

    def _log_pdf(self, t: np.ndarray) -> np.ndarray:
        if self.link is Link.LOGIT:
            return -np.logaddexp(0.0, -t) - np.logaddexp(0.0, t)
        if self.link is Link.PROBIT:
            return -0.5 * t * t - _LOG_SQRT_2PI
        return stats.t.logpdf(t, self.df)

    def hazard(self, u: ArrayLike) -> np.ndarray:
        """d/du log F(u) = f(u) / F(u)."""
        u = np.asarray(u, dtype=float)
        if self.link is Link.LOGIT:
            return np.exp(-np.logaddexp(0.0, u))
        return np.exp(self._log_pdf(u) - self.log_cdf(u))

    def curvature(self, u: ArrayLike) -> np.ndarray:
        """d^2/du^2 log F(u); nonpositive for logit and probit."""
        u = np.asarray(u, dtype=float)
        lam = self.hazard(u)
        if self.link is Link.LOGIT:
            return -lam * (1.0 - lam)
        if self.link is Link.PROBIT:
            return -lam * (u + lam)
        v = self.df
        return lam * (-(v + 1.0) * u / (v + u * u)) - lam * lam

    def probabilities(self, t: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
        """(f1, f0) = (F(t), F(-t))."""
        t = np.asarray(t, dtype=float)
        return np.exp(self.log_cdf(t)), np.exp(self.log_cdf(-t))

    def to_dict(self) -> dict:
        data = {"link": self.link.value}
        if self.df is not None:
            data["df"] = self.df
        return data


def get_link(link: "str | Link | LinkFunction", df: float | None = None) -> LinkFunction:
    """Build the LinkFunction for a tag; robit takes its df from config unless given."""
    if isinstance(link, LinkFunction):
        return link
    tag = parse_link(link)
    if tag is Link.ROBIT:
        df = get_robit_df() if df is None else float(df)
        if not df > 0:
            raise ConfigError(f"Robit degrees of freedom must be positive, got {df}")
        return LinkFunction(tag, df)
    return LinkFunction(tag)


def link_probabilities(t: ArrayLike, link: "str | Link | LinkFunction" = Link.LOGIT):
    """Success and failure probabilities at linear predictor t.

    Scalars in, floats out; arrays broadcast.
    """
    f1, f0 = get_link(link).probabilities(t)
    if np.ndim(f1) == 0:
        return float(f1), float(f0)
    return f1, f0
