"""Exception types raised by sepbayes.

Contract violations on inputs also subclass ValueError, so callers that only
catch ValueError keep working.
"""

from typing import Any


class SepbayesError(Exception):
    """Base class for all sepbayes errors."""


class ConfigError(SepbayesError, ValueError):
    """Invalid or inconsistent configuration."""


class DatasetError(SepbayesError, ValueError):
    """Malformed input data or a violated Dataset invariant."""


class LpError(SepbayesError):
    """The simplex engine could not finish (dimension mismatch, pivot limit)."""


class SeparationError(SepbayesError):
    """A detection stage failed numerically."""

    def __init__(self, message: str, stage: str):
        super().__init__(f"{stage}: {message}")
        self.message = message
        self.stage = stage

    def __reduce__(self):
        return type(self), (self.message, self.stage)


class DistributionError(SepbayesError, ValueError):
    """Invalid distribution parameters (including non-SPD covariance)."""


class SamplerError(SepbayesError):
    """A sampler step failed.

    Chains may run in worker processes, so the subclasses rebuild from their
    own fields when unpickled.
    """

    def __init__(self, message: str, iteration: int | None = None):
        prefix = f"iteration {iteration}: " if iteration is not None else ""
        super().__init__(f"{prefix}{message}")
        self.message = message
        self.iteration = iteration

    def __reduce__(self):
        return type(self), (self.message, self.iteration)


class DivergenceError(SamplerError):
    """The chain left the finite region; carries a snapshot of the state."""

    def __init__(self, message: str, iteration: int, snapshot: dict[str, Any]):
        super().__init__(message, iteration)
        self.snapshot = snapshot

    def __reduce__(self):
        return type(self), (self.message, self.iteration, self.snapshot)


class DiagnosticsError(SepbayesError, ValueError):
    """A chain summary is undefined for the given series."""


class PredictionError(SepbayesError, ValueError):
    """Test data or probabilities do not match the fitted model."""
