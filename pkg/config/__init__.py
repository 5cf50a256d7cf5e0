"""Configuration package."""

from typing import Type, Union
from functools import lru_cache
from .base import BaseConfig
from .quick import QuickProfile
from .full import FullProfile


def get_config_class(profile: str = "quick") -> Type[BaseConfig]:
    """Get the config class for a verification profile."""
    profile = profile.lower()

    if profile == "quick":
        return QuickProfile
    elif profile == "full":
        return FullProfile
    else:
        raise ValueError(f"Unknown profile: {profile}")


@lru_cache()
def get_config(profile: str = "quick") -> Union[QuickProfile, FullProfile]:
    """Get cached configuration instance."""
    config_class = get_config_class(profile)
    return config_class()


def reload_config(profile: str = "quick") -> Union[QuickProfile, FullProfile]:
    """Reload configuration."""
    get_config.cache_clear()
    return get_config(profile)


__all__ = [
    "BaseConfig",
    "QuickProfile",
    "FullProfile",
    "get_config",
    "get_config_class",
    "reload_config"
]
