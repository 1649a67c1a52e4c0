"""Posterior summaries of Draws, pooled and per chain."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from sepbayes.config import get_section
from sepbayes.errors import DiagnosticsError
from sepbayes.samplers import Draws
from .series import MIN_ESS_LENGTH, autocorrelation, ess, running_mean

logger = logging.getLogger(__name__)

NOT_EXISTS_NOTE = (
    "posterior mean does not exist; reported average is not an estimator of a finite quantity"
)


def _verdict_value(item) -> str:
    if isinstance(item, dict):
        return str(item["verdict"])
    value = getattr(item, "verdict", item)
    return str(getattr(value, "value", value))


@dataclass
class CoefficientSummary:
    name: str
    mean: float
    sd: float
    quantiles: dict[str, float]
    ess: float
    mcse: float
    acf: dict[str, float]
    note: str | None = None

    def to_dict(self) -> dict:
        data = {
            "name": self.name,
            "mean": self.mean,
            "sd": self.sd,
            "quantiles": self.quantiles,
            "ess": self.ess,
            "mcse": self.mcse,
            "acf": self.acf,
        }
        if self.note:
            data["note"] = self.note
        return data


@dataclass
class ChainSummary:
    """Summaries of every coefficient over one chain (or all chains pooled)."""

    n_draws: int
    coefficients: list[CoefficientSummary]
    chain: int | None = None
    per_chain: list["ChainSummary"] = field(default_factory=list)

    def __getitem__(self, name: str) -> CoefficientSummary:
        for c in self.coefficients:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        data = {
            "chain": "pooled" if self.chain is None else self.chain,
            "n_draws": self.n_draws,
            "coefficients": [c.to_dict() for c in self.coefficients],
        }
        if self.per_chain:
            data["per_chain"] = [c.to_dict() for c in self.per_chain]
        return data


def _quantile_label(q: float) -> str:
    return f"{100 * q:g}%"


def _summarize_column(
    name: str,
    x: np.ndarray,
    quantiles: Sequence[float],
    lags: Sequence[int],
    ess_value: float | None = None,
) -> CoefficientSummary:
    S = x.size
    max_lag = min(max(lags, default=0), S - 1)
    rho = autocorrelation(x, max_lag, name)
    if ess_value is None:
        if S >= MIN_ESS_LENGTH:
            ess_value = ess(x, name)
        else:
            logger.warning(f"Only {S} draws of '{name}'; reporting ESS = S")
            ess_value = float(S)
    ess_value = min(ess_value, float(S))
    sd = float(np.std(x, ddof=1)) if S > 1 else 0.0
    return CoefficientSummary(
        name=name,
        mean=float(x.mean()),
        sd=sd,
        quantiles={_quantile_label(q): float(v) for q, v in zip(quantiles, np.quantile(x, quantiles))},
        ess=ess_value,
        mcse=sd / float(np.sqrt(ess_value)),
        acf={str(k): float(rho[k]) for k in lags if k <= max_lag},
    )


def _check_existence(draws: Draws, existence) -> list[str | None]:
    if existence is None:
        return [None] * draws.p
    verdicts = [_verdict_value(v) for v in existence]
    if len(verdicts) != draws.p:
        raise DiagnosticsError(f"{len(verdicts)} existence verdicts for {draws.p} coefficients")
    return [NOT_EXISTS_NOTE if v == "not-exists" else None for v in verdicts]


def summarize(
    draws: Draws,
    existence: Sequence | None = None,
    quantiles: Sequence[float] | None = None,
    acf_lags: Sequence[int] | None = None,
) -> ChainSummary:
    """Summarize every coefficient: mean, sd, quantiles, ESS, MC-SE, ACF table.

    Multi-chain draws are summarized pooled (ESS is the sum of the per-chain
    values) and per chain. ESS is clamped to the number of draws, so
    MC-SE >= sd / sqrt(S).

    Args:
        draws: Draws to summarize
        existence: Per-coefficient verdicts (defaults to those stored on the draws);
            coefficients whose mean does not exist are annotated
        quantiles: Probabilities to report (default 2.5%, 50%, 97.5%)
        acf_lags: Lags for the ACF table (default 1, 5, 10, 50, 100)

    Raises:
        DiagnosticsError: Empty draws, a constant column, or a verdict-count mismatch
    """
    if draws.n_draws == 0:
        raise DiagnosticsError("No draws to summarize")
    defaults = get_section("diagnostics")
    quantiles = list(quantiles or defaults.get("quantiles", [0.025, 0.5, 0.975]))
    lags = list(acf_lags or defaults.get("acf_lags", [1, 5, 10, 50, 100]))
    notes = _check_existence(draws, existence if existence is not None else draws.existence or None)

    per_chain = []
    chain_ids = draws.chains
    if len(chain_ids) > 1:
        for c in chain_ids:
            block = draws.chain(c)
            coefs = [
                _summarize_column(name, block[:, j], quantiles, lags)
                for j, name in enumerate(draws.names)
            ]
            for coef, note in zip(coefs, notes):
                coef.note = note
            per_chain.append(ChainSummary(n_draws=block.shape[0], coefficients=coefs, chain=c))

    pooled = []
    for j, name in enumerate(draws.names):
        pooled_ess = sum(pc.coefficients[j].ess for pc in per_chain) if per_chain else None
        coef = _summarize_column(name, draws.samples[:, j], quantiles, lags, pooled_ess)
        coef.note = notes[j]
        pooled.append(coef)

    return ChainSummary(n_draws=draws.n_draws, coefficients=pooled, per_chain=per_chain)


def running_mean_frame(draws: Draws) -> pd.DataFrame:
    """Running mean of every coefficient, per chain, one row per retained draw."""
    frames = []
    for c in draws.chains:
        block = draws.chain(c)
        frame = pd.DataFrame(
            {name: running_mean(block[:, j]) for j, name in enumerate(draws.names)}
        )
        frame.insert(0, "iteration", np.arange(1, block.shape[0] + 1))
        frame["chain"] = c
        frames.append(frame)
    return pd.concat(frames, ignore_index=True)


def acf_frame(draws: Draws, max_lag: int | None = None) -> pd.DataFrame:
    """Autocorrelation of every coefficient at lags 0..max_lag, per chain."""
    max_lag = int(get_section("diagnostics").get("max_lag", 100)) if max_lag is None else max_lag
    frames = []
    for c in draws.chains:
        block = draws.chain(c)
        lag = min(max_lag, block.shape[0] - 1)
        frame = pd.DataFrame(
            {name: autocorrelation(block[:, j], lag, name) for j, name in enumerate(draws.names)}
        )
        frame.insert(0, "lag", np.arange(lag + 1))
        frame["chain"] = c
        frames.append(frame)
    return pd.concat(frames, ignore_index=True)
