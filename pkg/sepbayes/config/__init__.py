"""Configuration module."""

from .settings import (
    AppSettings,
    SamplerSettings,
    SeparationSettings,
    get_app_settings,
    get_sampler_settings,
    get_separation_settings,
    configure_logging,
)

from .loader import (
    get_priors_config,
    get_settings_config,
    get_section,
    get_prior_presets,
    get_prior_preset,
    get_default_preset,
    get_default_scales,
    get_default_location,
    get_robit_df,
    get_sampler_defaults,
    reload_config,
)

__all__ = [
    # Settings (env-based)
    "AppSettings",
    "SamplerSettings",
    "SeparationSettings",
    "get_app_settings",
    "get_sampler_settings",
    "get_separation_settings",
    "configure_logging",
    # Config loader (YAML-based)
    "get_priors_config",
    "get_settings_config",
    "get_section",
    "get_prior_presets",
    "get_prior_preset",
    "get_default_preset",
    "get_default_scales",
    "get_default_location",
    "get_robit_df",
    "get_sampler_defaults",
    "reload_config",
]
