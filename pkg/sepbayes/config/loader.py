"""
Configuration loader with YAML support.

Loads configuration from:
1. Built-in defaults: sepbayes/config/defaults/
2. Environment variables (highest priority, via settings.py)
"""

import logging
from pathlib import Path
from typing import Any

import yaml

from .settings import get_sampler_settings, reset_settings

logger = logging.getLogger(__name__)

# Package defaults directory
DEFAULTS_DIR = Path(__file__).parent / "defaults"

# Cache for loaded configs
_priors_config: dict[str, Any] | None = None
_settings_config: dict[str, Any] | None = None


def _load_yaml_file(path: Path) -> dict[str, Any]:
    """Load a YAML file, returning empty dict if not found."""
    if not path.exists():
        return {}
    try:
        with open(path, encoding="utf-8") as f:
            content = yaml.safe_load(f)
            return content if content else {}
    except yaml.YAMLError as e:
        logger.warning(f"Failed to parse {path}: {e}")
        return {}


def get_priors_config() -> dict[str, Any]:
    """
    Get prior preset configuration.

    Returns:
        Dict with 'presets', 'scales', 'location', 'links', 'default_preset' keys
    """
    global _priors_config
    if _priors_config is None:
        _priors_config = _load_yaml_file(DEFAULTS_DIR / "priors.yaml")
    return _priors_config


def get_settings_config() -> dict[str, Any]:
    """
    Get application settings configuration.

    Returns:
        Dict with 'sampler', 'separation', 'prediction', 'diagnostics', 'mode', 'app' keys
    """
    global _settings_config
    if _settings_config is None:
        _settings_config = _load_yaml_file(DEFAULTS_DIR / "settings.yaml")
    return _settings_config


def get_section(name: str) -> dict[str, Any]:
    """Get one top-level section of settings.yaml (empty dict if absent)."""
    return dict(get_settings_config().get(name, {}) or {})


def get_prior_presets() -> list[str]:
    """Get list of available prior preset names."""
    return list(get_priors_config().get("presets", {}).keys())


def get_prior_preset(name: str) -> dict[str, Any]:
    """
    Get one prior preset.

    Raises:
        ValueError: If the preset is not defined
    """
    presets = get_priors_config().get("presets", {})
    if name not in presets:
        raise ValueError(f"Unknown prior preset '{name}' (available: {', '.join(presets)})")
    return dict(presets[name])


def get_default_preset() -> str:
    """Get the default prior preset name."""
    return get_priors_config().get("default_preset", "cauchy")


def get_default_scales() -> tuple[float, float]:
    """Get (intercept scale, coefficient scale)."""
    scales = get_priors_config().get("scales", {})
    return float(scales.get("intercept", 10.0)), float(scales.get("coefficient", 2.5))


def get_default_location() -> float:
    """Get the default prior location."""
    return float(get_priors_config().get("location", 0.0))


def get_robit_df() -> float:
    """Get degrees of freedom of the robit link."""
    links = get_priors_config().get("links", {})
    return float(links.get("robit", {}).get("df", 7.0))


def reload_config() -> None:
    """Force reload of configuration (for testing or hot-reload)."""
    global _priors_config, _settings_config
    _priors_config = None
    _settings_config = None
    reset_settings()


def get_sampler_defaults() -> dict[str, Any]:
    """
    Resolve sampler defaults.

    Starts from SamplerSettings, lets the packaged YAML fill every field that
    no environment variable set, and returns a plain dict.
    """
    settings = get_sampler_settings()
    merged = settings.model_dump()
    for key, value in get_section("sampler").items():
        if key in merged and key not in settings.model_fields_set:
            merged[key] = value
    return merged
