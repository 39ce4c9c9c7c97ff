"""
Settings loader
===============
Reads ``config.yaml`` from the project root (or the file named by the
``QSN_CONFIG`` environment variable, which may come from a ``.env``
file) and exposes it as an immutable Settings object.
"""

import logging
import os
from contextlib import contextmanager
from dataclasses import dataclass, fields, replace
from functools import lru_cache

import yaml
from dotenv import find_dotenv, load_dotenv

from src.exceptions import ConfigError

logger = logging.getLogger(__name__)

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DEFAULT_CONFIG_PATH = os.path.join(PROJECT_ROOT, "config.yaml")


@dataclass(frozen=True)
class Settings:
    bisymmetry_guard: int = 2 ** 24
    enumeration_guard: int = 10 ** 8
    chunk_size: int = 2 ** 18
    samples: int = 2000
    seed: int = 0
    jobs: int = 1
    log_level: str = "WARNING"

    def __post_init__(self):
        for name in ("bisymmetry_guard", "enumeration_guard", "chunk_size", "samples", "jobs"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if self.log_level.upper() not in logging.getLevelNamesMapping():
            raise ConfigError(f"unknown log_level {self.log_level!r}")

    def with_overrides(self, **overrides):
        """Return a copy with every non-None override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def load_config(config_path=None):
    """
    Load settings from YAML.

    Parameters
    ----------
    config_path : str or None
        Explicit path. When None, ``QSN_CONFIG`` is consulted and then the
        project's ``config.yaml``.

    Returns
    -------
    Settings
        Defaults are used for every key the file does not set, and for
        everything when the file does not exist.
    """
    load_dotenv(find_dotenv(usecwd=True))
    path = config_path or os.getenv("QSN_CONFIG") or DEFAULT_CONFIG_PATH

    if not os.path.isfile(path):
        if config_path is not None:
            raise ConfigError(f"config file not found: {path}")
        logger.debug("no config file at %s, using defaults", path)
        return Settings()

    with open(path, "r") as f:
        raw = yaml.safe_load(f) or {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{path} must contain a mapping at top level")

    known = {f.name for f in fields(Settings)}
    for key in sorted(set(raw) - known):
        logger.warning("ignoring unknown config key %r in %s", key, path)
    return Settings(**{k: v for k, v in raw.items() if k in known})


_active = None


@lru_cache(maxsize=1)
def _file_settings():
    return load_config()


def get_settings():
    """Settings in effect: those installed by settings_scope, else the cached config file."""
    return _active if _active is not None else _file_settings()


def reset_settings():
    """Forget the cached config file and any installed settings."""
    global _active
    _active = None
    _file_settings.cache_clear()


@contextmanager
def settings_scope(settings):
    """Make get_settings() return ``settings`` inside the block."""
    global _active
    previous, _active = _active, settings
    try:
        yield settings
    finally:
        _active = previous
