#!/usr/bin/env python3
"""
Configuration
Defaults for the CLI, read from a dotenv-style file (jcd.env by default).
The process environment is not consulted; command-line flags win over the
file.
"""

from pathlib import Path
from typing import Literal, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, Field, ValidationError

from errors import ConfigError

DEFAULT_CONFIG_PATH = "jcd.env"

_FILE_KEYS = {
    "JCD_PICK": "pick",
    "JCD_VIA": "via",
    "JCD_WORKERS": "workers",
    "JCD_DIAG_RANGE": "diag_range",
    "JCD_ENTRY_RANGE": "entry_range",
}


class Settings(BaseModel):
    pick: Literal["lowest-band", "first"] = "lowest-band"
    via: Literal["neweigm", "decomp"] = "neweigm"
    workers: int = Field(default=1, ge=1)
    diag_range: int = Field(default=3, ge=1)
    entry_range: int = Field(default=3, ge=1)


def load_settings(path: Optional[str] = None) -> Settings:
    """Settings from `path`, or from jcd.env when it exists."""
    config_file = Path(path or DEFAULT_CONFIG_PATH)
    values = {}
    if config_file.exists():
        raw = dotenv_values(config_file)
        for key, field in _FILE_KEYS.items():
            if raw.get(key) is not None:
                values[field] = raw[key]
    elif path is not None:
        raise ConfigError(f"config file not found: {path}")
    try:
        return Settings(**values)
    except ValidationError as e:
        raise ConfigError(f"{config_file}: {e.errors()[0]['msg']}")
