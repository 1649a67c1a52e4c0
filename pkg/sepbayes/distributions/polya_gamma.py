"""Polya-Gamma PG(1, k) density and exact sampler.

The sampler is the alternating-series accept/reject method: a two-piece
proposal (truncated inverse Gaussian below t* = 0.64, exponential tail above)
for J*(1, k/2) = 4 U, with the series coefficients giving monotone upper and
lower bounds on the target density. Draws are exact; nothing is truncated.
"""

import math

import numpy as np
from numpy.typing import ArrayLike
from scipy import integrate
from scipy.special import log_ndtr

from sepbayes.errors import DistributionError
from .rng import RngStream

TRUNCATION = 0.64
MAX_TERMS = 200
SERIES_RTOL = 1e-14

# Below this u = x / 4 the small-argument series converges faster
_SERIES_SWITCH = TRUNCATION / 4.0


def _check_k(k: np.ndarray) -> None:
    if not np.all(np.isfinite(k)):
        raise DistributionError("PG tilt parameter must be finite")
    if np.any(k < 0):
        raise DistributionError(f"PG tilt parameter must be nonnegative, got {np.min(k)}")


def _log_cosh(x: float) -> float:
    return float(np.logaddexp(x, -x) - math.log(2.0))


def _untilted_density(u: float, terms: int) -> float:
    """Density of PG(1, 0) at u by its alternating series.

    Up to u = 0.16 the small-u series is summed, above it the large-u series;
    `terms` caps the number of terms of whichever series is in use.
    """
    total = 0.0
    for ell in range(terms):
        odd = 2 * ell + 1
        if u <= _SERIES_SWITCH:
            term = odd / math.sqrt(2.0 * math.pi * u**3) * math.exp(-(odd**2) / (8.0 * u))
        else:
            term = 2.0 * math.pi * odd * math.exp(-(odd**2) * math.pi**2 * u / 2.0)
        total += term if ell % 2 == 0 else -term
        # Once terms decrease, the partial sums bracket the limit
        if ell > 0 and term < SERIES_RTOL * abs(total):
            break
    return max(total, 0.0)


def pg_density(u: float, k: float = 0.0, terms: int = MAX_TERMS) -> float:
    """Density of PG(1, k) at u.

    The untilted density is an alternating series, the small-u form for
    u <= 0.16 and the large-u form above. Summation stops once the next term
    falls below 1e-14 of the running sum or after `terms` terms of that series.
    The tilt multiplies by cosh(k/2) exp(-k^2 u / 2).

    Raises:
        DistributionError: u <= 0, terms < 1, or k negative/non-finite
    """
    if not u > 0:
        raise DistributionError(f"PG density is defined for u > 0, got {u}")
    if terms < 1:
        raise DistributionError(f"Need at least one series term, got {terms}")
    _check_k(np.asarray(k, dtype=float))

    base = _untilted_density(float(u), int(terms))
    if base == 0.0:
        return 0.0
    return math.exp(_log_cosh(k / 2.0) - k * k * u / 2.0 + math.log(base))


def pg_cdf(u: float, k: float = 0.0) -> float:
    """P(U <= u) for U ~ PG(1, k), by adaptive quadrature of the density."""
    if u <= 0:
        return 0.0
    value, _ = integrate.quad(lambda s: pg_density(s, k), 0.0, u, limit=200)
    return min(max(value, 0.0), 1.0)


def pg_mean(k: float) -> float:
    """E[U] = tanh(k/2) / (2k), with the limit 1/4 at k = 0."""
    if abs(k) < 1e-8:
        return 0.25 - k * k / 96.0
    return math.tanh(k / 2.0) / (2.0 * k)


def _series_coefficient(n: int, x: np.ndarray) -> np.ndarray:
    """n-th coefficient of the J*(1) density series at x > 0."""
    K = (n + 0.5) * math.pi
    out = np.empty_like(x)
    right = x > TRUNCATION
    out[right] = K * np.exp(-0.5 * K * K * x[right])
    xl = x[~right]
    expnt = -1.5 * (math.log(0.5 * math.pi) + np.log(xl)) + math.log(K) - 2.0 * (n + 0.5) ** 2 / xl
    out[~right] = np.exp(expnt)
    return out


def _exponential_mass(z: np.ndarray) -> np.ndarray:
    """Probability of proposing from the exponential tail piece."""
    t = TRUNCATION
    fz = math.pi**2 / 8.0 + 0.5 * z * z
    b = math.sqrt(1.0 / t) * (t * z - 1.0)
    a = -math.sqrt(1.0 / t) * (t * z + 1.0)
    x0 = np.log(fz) + fz * t
    xb = x0 - z + log_ndtr(b)
    xa = x0 + z + log_ndtr(a)
    q_over_p = 4.0 / math.pi * (np.exp(xb) + np.exp(xa))
    return 1.0 / (1.0 + q_over_p)


def _truncated_inverse_gaussian(z: np.ndarray, rng: RngStream) -> np.ndarray:
    """IG(1/z, 1) restricted to (0, t*]."""
    t = TRUNCATION
    x = np.empty_like(z)

    # Mean beyond the truncation point: scaled chi-square proposal
    pending = np.flatnonzero(z < 1.0 / t)
    while pending.size:
        e1 = rng.standard_exponential(pending.size)
        e2 = rng.standard_exponential(pending.size)
        redo = np.flatnonzero(e1 * e1 > 2.0 * e2 / t)
        while redo.size:
            e1[redo] = rng.standard_exponential(redo.size)
            e2[redo] = rng.standard_exponential(redo.size)
            redo = redo[e1[redo] * e1[redo] > 2.0 * e2[redo] / t]
        candidate = t / (1.0 + t * e1) ** 2
        accept = rng.uniform(pending.size) <= np.exp(-0.5 * z[pending] ** 2 * candidate)
        x[pending[accept]] = candidate[accept]
        pending = pending[~accept]

    # Mean inside: inverse-Gaussian draws until one lands below t*
    pending = np.flatnonzero(z >= 1.0 / t)
    while pending.size:
        mu = 1.0 / z[pending]
        mu_y = mu * rng.standard_normal(pending.size) ** 2
        candidate = mu + 0.5 * mu * mu_y - 0.5 * mu * np.sqrt(4.0 * mu_y + mu_y * mu_y)
        swap = rng.uniform(pending.size) > mu / (mu + candidate)
        candidate[swap] = mu[swap] ** 2 / candidate[swap]
        ok = candidate <= t
        x[pending[ok]] = candidate[ok]
        pending = pending[~ok]

    return x


def _accept(x: np.ndarray, rng: RngStream) -> np.ndarray:
    """Alternating-series test of proposals x against the J*(1) density."""
    s = _series_coefficient(0, x)
    y = rng.uniform(x.size) * s
    accepted = np.zeros(x.size, dtype=bool)
    active = np.ones(x.size, dtype=bool)
    n = 0
    while active.any():
        n += 1
        idx = np.flatnonzero(active)
        if n % 2 == 1:
            s[idx] -= _series_coefficient(n, x[idx])
            hit = idx[y[idx] <= s[idx]]
            accepted[hit] = True
            active[hit] = False
        else:
            s[idx] += _series_coefficient(n, x[idx])
            active[idx[y[idx] > s[idx]]] = False
    return accepted


def sample_pg_array(k: ArrayLike, rng: RngStream) -> np.ndarray:
    """Independent PG(1, k_i) draws for every entry of k."""
    k = np.asarray(k, dtype=float)
    _check_k(k)
    z = 0.5 * np.abs(k).ravel()
    out = np.empty_like(z)
    fz = math.pi**2 / 8.0 + 0.5 * z * z

    pending = np.arange(z.size)
    while pending.size:
        zp = z[pending]
        tail = rng.uniform(pending.size) < _exponential_mass(zp)
        x = np.empty_like(zp)
        x[tail] = TRUNCATION + rng.standard_exponential(int(tail.sum())) / fz[pending[tail]]
        x[~tail] = _truncated_inverse_gaussian(zp[~tail], rng)
        ok = _accept(x, rng)
        out[pending[ok]] = 0.25 * x[ok]
        pending = pending[~ok]

    return out.reshape(k.shape)


def sample_pg(k: float, rng: RngStream) -> float:
    """One exact PG(1, k) draw.

    Raises:
        DistributionError: k negative or non-finite
    """
    return float(sample_pg_array(np.array([k], dtype=float), rng)[0])
