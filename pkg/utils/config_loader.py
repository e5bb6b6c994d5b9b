"""
Configuration loader with YAML support and ${ENV_VAR} expansion
"""
import os
import re
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from utils.errors import ConfigurationError
from utils.logger import setup_logger

logger = setup_logger("config_loader")

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / 'config' / 'config.yaml'

_ENV_PATTERN = re.compile(r'\$\{([^}]+)\}')


def expand_env(text: str) -> str:
    """Replace ${NAME} with the environment value; unset names are kept as written"""
    def replace_env(match):
        env_var = match.group(1)
        env_value = os.getenv(env_var)
        if env_value is None:
            logger.warning(f"[WARN] Environment variable {env_var} not set, keeping placeholder")
            return match.group(0)
        return env_value
    return _ENV_PATTERN.sub(replace_env, text)


class ConfigLoader:
    """Load a sectioned YAML configuration file"""

    SECTIONS = ('paths', 'corpus', 'training', 'scoring', 'mapping', 'evaluation', 'logging')

    def __init__(self, config_path: Optional[Union[str, Path]] = None):
        self.config_path = Path(config_path) if config_path is not None else DEFAULT_CONFIG_PATH
        if not self.config_path.exists():
            raise ConfigurationError(f"Config not found: {self.config_path}")
        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                content = expand_env(f.read())
            self.config = yaml.safe_load(content) or {}
        except (OSError, yaml.YAMLError) as e:
            logger.error(f"[ERROR] Error loading config: {e}")
            raise ConfigurationError(f"Failed to load config {self.config_path}: {e}") from e

        self._validate()
        logger.debug(f"[OK] Configuration loaded from {self.config_path}")

    def _validate(self):
        """Only known sections, each a mapping"""
        if not isinstance(self.config, dict):
            raise ConfigurationError(f"{self.config_path}: top level must be a mapping of sections")
        for section, body in self.config.items():
            if section not in self.SECTIONS:
                raise ConfigurationError(f"{self.config_path}: unknown config section '{section}'")
            if body is not None and not isinstance(body, dict):
                raise ConfigurationError(f"{self.config_path}: section '{section}' must be a mapping")

    def get_section(self, name: str) -> Dict[str, Any]:
        return dict(self.config.get(name) or {})

    def sections(self) -> Dict[str, Dict[str, Any]]:
        return {name: self.get_section(name) for name in self.SECTIONS if name in self.config}


def dump_yaml(data: Dict[str, Any], path: Union[str, Path]):
    """Write a mapping as YAML, keys in insertion order"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            yaml.safe_dump(data, f, sort_keys=False, default_flow_style=False, allow_unicode=True)
    except OSError as e:
        raise ConfigurationError(f"cannot write config to {path}: {e}") from e
