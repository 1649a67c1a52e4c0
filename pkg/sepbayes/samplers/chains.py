"""Run configuration, chain state, and the Draws container shared by all samplers."""

import logging
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np
import pandas as pd

from sepbayes.config import get_app_settings, get_sampler_defaults
from sepbayes.dataset import StandardizationRecord
from sepbayes.distributions import RngStream
from sepbayes.errors import ConfigError, DivergenceError
from .priors import PriorSpec

logger = logging.getLogger(__name__)

CHAIN_COLUMN = "chain"


@dataclass(frozen=True, eq=False)
class GibbsConfig:
    """Shape of an MCMC run.

    `init` is "zeros", "prior-draw", or an explicit starting vector.
    """

    iterations: int
    burnin: int = 0
    thin: int = 1
    seed: int = 0
    chains: int = 1
    init: Any = "zeros"
    divergence_bound: float = 1e12

    def __post_init__(self):
        if self.iterations < 1:
            raise ConfigError(f"iterations must be positive, got {self.iterations}")
        if not 0 <= self.burnin < self.iterations:
            raise ConfigError(f"burnin must lie in [0, iterations), got {self.burnin}")
        if self.thin < 1:
            raise ConfigError(f"thin must be positive, got {self.thin}")
        if self.chains < 1:
            raise ConfigError(f"chains must be positive, got {self.chains}")
        if self.seed < 0:
            raise ConfigError(f"seed must be nonnegative, got {self.seed}")
        if self.kept_per_chain < 1:
            raise ConfigError("(iterations - burnin) / thin must leave at least one draw")
        if isinstance(self.init, str):
            if self.init not in ("zeros", "prior-draw"):
                raise ConfigError(f"Unknown init '{self.init}'")
        else:
            init = np.asarray(self.init, dtype=float)
            if init.ndim != 1 or not np.all(np.isfinite(init)):
                raise ConfigError("An explicit init must be a finite vector")
            object.__setattr__(self, "init", init)

    @classmethod
    def from_settings(cls, **overrides: Any) -> "GibbsConfig":
        """Packaged YAML defaults, then SEPBAYES_* environment, then `overrides` (None ignored)."""
        values = get_sampler_defaults()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(
            iterations=int(values["iterations"]),
            burnin=int(values["burnin"]),
            thin=int(values["thin"]),
            seed=int(values["seed"]),
            chains=int(values["chains"]),
            init=values["init"],
            divergence_bound=float(values["divergence_bound"]),
        )

    @property
    def kept_per_chain(self) -> int:
        return (self.iterations - self.burnin) // self.thin

    def keeps(self, iteration: int) -> bool:
        """True when the draw after `iteration` (0-based) is retained."""
        return iteration >= self.burnin and (iteration - self.burnin + 1) % self.thin == 0

    def to_dict(self) -> dict:
        init = self.init if isinstance(self.init, str) else self.init.tolist()
        return {
            "iterations": self.iterations,
            "burnin": self.burnin,
            "thin": self.thin,
            "seed": self.seed,
            "chains": self.chains,
            "init": init,
            "divergence_bound": self.divergence_bound,
        }


@dataclass
class ChainState:
    """Current values of one chain; the latent parts depend on the sampler."""

    beta: np.ndarray
    gamma: np.ndarray | None = None
    phi: float | None = None
    z: np.ndarray | None = None

    def problem(self, bound: float) -> str | None:
        """Describe why the state is unusable, or None when it is fine."""
        if not np.all(np.isfinite(self.beta)):
            return "non-finite coefficients"
        if np.any(np.abs(self.beta) > bound):
            return f"coefficient magnitude exceeds {bound:g}"
        for name, value in (("gamma", self.gamma), ("phi", self.phi), ("z", self.z)):
            if value is None:
                continue
            arr = np.asarray(value)
            if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
                return f"{name} left (0, inf)"
        return None

    def snapshot(self) -> dict:
        def _range(value):
            if value is None:
                return None
            arr = np.atleast_1d(np.asarray(value, dtype=float))
            return {"min": float(np.min(arr)), "max": float(np.max(arr))}

        return {
            "beta": [float(b) for b in self.beta],
            "gamma": _range(self.gamma),
            "phi": None if self.phi is None else float(self.phi),
            "z": _range(self.z),
        }


@dataclass(frozen=True)
class ChainResult:
    """Output of one chain before joining."""

    chain_id: int
    samples: np.ndarray
    acceptance: float | None
    wall_time: float


@dataclass(frozen=True, eq=False)
class Draws:
    """Retained draws from one or more chains, stacked in chain-id order."""

    samples: np.ndarray
    chain_ids: np.ndarray
    names: tuple[str, ...]
    config: dict = field(default_factory=dict)
    wall_time: float = 0.0
    sampler: str = ""
    link: str = "logit"
    prior: dict = field(default_factory=dict)
    acceptance: dict = field(default_factory=dict)
    standardization: StandardizationRecord | None = None
    existence: list = field(default_factory=list)

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 2 or samples.shape[1] != len(self.names):
            raise ConfigError(f"Samples of shape {samples.shape} do not match {len(self.names)} names")
        if not np.all(np.isfinite(samples)):
            raise ConfigError("Draws contain non-finite values")
        chain_ids = np.asarray(self.chain_ids, dtype=int)
        if chain_ids.shape != (samples.shape[0],):
            raise ConfigError("One chain id per retained draw is required")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "chain_ids", chain_ids)
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def n_draws(self) -> int:
        return self.samples.shape[0]

    @property
    def p(self) -> int:
        return self.samples.shape[1]

    @property
    def chains(self) -> list[int]:
        return sorted(int(c) for c in np.unique(self.chain_ids))

    def chain(self, chain_id: int) -> np.ndarray:
        return self.samples[self.chain_ids == chain_id]

    def column(self, name: str) -> np.ndarray:
        try:
            return self.samples[:, self.names.index(name)]
        except ValueError:
            raise ConfigError(f"No coefficient named '{name}'") from None

    def with_metadata(self, **changes: Any) -> "Draws":
        return replace(self, **changes)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.samples, columns=list(self.names))
        frame[CHAIN_COLUMN] = self.chain_ids
        return frame

    def metadata(self) -> dict:
        """Everything except the samples, for the JSON sidecar."""
        return {
            "names": list(self.names),
            "config": self.config,
            "wall_time": self.wall_time,
            "sampler": self.sampler,
            "link": self.link,
            "prior": self.prior,
            "acceptance": {str(k): v for k, v in self.acceptance.items()},
            "standardization": self.standardization.to_dict() if self.standardization else None,
            "existence": self.existence,
            "n_draws": self.n_draws,
        }


def run_chains(
    chain_fn: Callable[[int], ChainResult],
    n_chains: int,
    workers: int | None = None,
) -> list[ChainResult]:
    """Run chains 0..n_chains-1, in a process pool when more than one worker is allowed.

    `chain_fn` must be picklable (a module-level function or a partial of
    one). Results come back in chain-id order regardless of scheduling.
    """
    workers = get_app_settings().workers if workers is None else workers
    workers = max(1, min(workers, n_chains))
    if workers == 1:
        return [chain_fn(c) for c in range(n_chains)]

    logger.info(f"Running {n_chains} chains on {workers} processes")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(chain_fn, range(n_chains)))


def join_chains(
    results: list[ChainResult],
    names: tuple[str, ...],
    cfg: GibbsConfig,
    sampler: str,
    link: str,
    prior: dict,
) -> Draws:
    results = sorted(results, key=lambda r: r.chain_id)
    acceptance = {r.chain_id: r.acceptance for r in results if r.acceptance is not None}
    return Draws(
        samples=np.vstack([r.samples for r in results]),
        chain_ids=np.concatenate([np.full(r.samples.shape[0], r.chain_id) for r in results]),
        names=names,
        config=cfg.to_dict(),
        wall_time=float(sum(r.wall_time for r in results)),
        sampler=sampler,
        link=link,
        prior=prior,
        acceptance=acceptance,
    )


def initial_beta(prior: PriorSpec, cfg: GibbsConfig, rng: RngStream) -> np.ndarray:
    """Starting coefficients for one chain."""
    if isinstance(cfg.init, str):
        if cfg.init == "zeros":
            return np.zeros(prior.p)
        return prior.sample(rng)
    if cfg.init.shape != (prior.p,):
        raise ConfigError(f"Initial vector has length {cfg.init.shape[0]}, expected {prior.p}")
    return cfg.init.copy()


def divergence_error(state: ChainState, chain_id: int, iteration: int, reason: str) -> DivergenceError:
    snapshot = {"chain": chain_id, "iteration": iteration, "reason": reason, **state.snapshot()}
    logger.error(f"Chain {chain_id} diverged at iteration {iteration}: {reason}")
    return DivergenceError(f"chain {chain_id}: {reason}", iteration, snapshot)
