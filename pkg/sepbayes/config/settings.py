"""Application settings using pydantic-settings."""

import logging
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings


class AppSettings(BaseSettings):
    """Application settings."""

    debug: bool = Field(default=False, alias="DEBUG")
    log_level: str = Field(default="INFO", alias="LOG_LEVEL")

    # Where `fit`, `diagnose` and `predict` write when --out is not given
    output_dir: str = Field(default="./runs", alias="SEPBAYES_OUTPUT_DIR")

    # Number of processes used to run chains; 1 runs them in-process
    workers: int = Field(default=1, ge=1, alias="SEPBAYES_WORKERS")

    model_config = {"env_file": ".env", "extra": "ignore"}


class SamplerSettings(BaseSettings):
    """MCMC run configuration defaults."""

    iterations: int = Field(default=20000, ge=1, alias="SEPBAYES_ITERS")
    burnin: int = Field(default=2000, ge=0, alias="SEPBAYES_BURNIN")
    thin: int = Field(default=1, ge=1, alias="SEPBAYES_THIN")
    chains: int = Field(default=1, ge=1, alias="SEPBAYES_CHAINS")
    seed: int = Field(default=20170101, alias="SEPBAYES_SEED")
    init: Literal["zeros", "prior-draw"] = Field(default="zeros", alias="SEPBAYES_INIT")

    # Chains whose coefficients exceed this magnitude are aborted
    divergence_bound: float = Field(default=1e12, gt=0, alias="SEPBAYES_DIVERGENCE_BOUND")

    # Random-walk Metropolis adaptation (burn-in only)
    target_acceptance: float = Field(default=0.234, gt=0, lt=1, alias="SEPBAYES_TARGET_ACCEPTANCE")
    adaptation_exponent: float = Field(default=0.6, gt=0.5, le=1, alias="SEPBAYES_ADAPT_EXPONENT")
    initial_step_scale: float | None = Field(default=None, gt=0, alias="SEPBAYES_STEP_SCALE")

    model_config = {"env_file": ".env", "extra": "ignore"}


class SeparationSettings(BaseSettings):
    """Linear-programming settings for the separation detectors."""

    lp_tolerance: float = Field(default=1e-9, gt=0, alias="SEPBAYES_LP_TOL")
    box_bound: float = Field(default=1e6, gt=0, alias="SEPBAYES_BOX_BOUND")
    max_pivots: int = Field(default=50000, ge=1, alias="SEPBAYES_MAX_PIVOTS")
    detection_tolerance: float = Field(default=1e-9, gt=0, alias="SEPBAYES_DETECTION_TOL")

    model_config = {"env_file": ".env", "extra": "ignore"}


def _fill_from_yaml(settings: BaseSettings, section: str) -> BaseSettings:
    """Let the packaged YAML section fill every field no environment variable set."""
    from .loader import get_section

    fields = type(settings).model_fields
    updates = {
        fields[key].alias or key: value
        for key, value in get_section(section).items()
        if key in fields and key not in settings.model_fields_set
    }
    # validated by alias, the same way as environment values
    return type(settings).model_validate({**settings.model_dump(by_alias=True), **updates})


# Singleton instances
_app_settings: AppSettings | None = None
_sampler_settings: SamplerSettings | None = None
_separation_settings: SeparationSettings | None = None


def get_app_settings() -> AppSettings:
    """Get app settings singleton."""
    global _app_settings
    if _app_settings is None:
        _app_settings = _fill_from_yaml(AppSettings(), "app")
    return _app_settings


def get_sampler_settings() -> SamplerSettings:
    """Get sampler settings singleton."""
    global _sampler_settings
    if _sampler_settings is None:
        _sampler_settings = SamplerSettings()
    return _sampler_settings


def get_separation_settings() -> SeparationSettings:
    """Get separation settings singleton."""
    global _separation_settings
    if _separation_settings is None:
        _separation_settings = _fill_from_yaml(SeparationSettings(), "separation")
    return _separation_settings


def reset_settings() -> None:
    """Drop cached settings so the next access re-reads the environment."""
    global _app_settings, _sampler_settings, _separation_settings
    _app_settings = None
    _sampler_settings = None
    _separation_settings = None


def configure_logging(level: str | None = None) -> None:
    """Configure root logging from the app settings (or an explicit level)."""
    log_level = (level or get_app_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, log_level, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
