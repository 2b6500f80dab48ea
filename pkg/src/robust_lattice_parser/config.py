"""
Configuration loading.

Layers, lowest first: built-in defaults, a YAML or JSON config file,
``LATTICE_PARSER_*`` environment variables, explicit overrides (CLI flags).
"""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, FrozenSet, Mapping, Optional, Union

import yaml

from .errors import ConfigError
from .models import ScoreConfig

ENV_PREFIX = "LATTICE_PARSER_"

SCORING_KEYS = {"pr_match", "pr_nomatch", "sc_mode", "length_mode"}
PARSING_KEYS = {"max_steps", "result_categories"}

ENV_KEYS = {
    "PR_MATCH": "pr_match",
    "PR_NOMATCH": "pr_nomatch",
    "SC_MODE": "sc_mode",
    "MAX_STEPS": "max_steps",
    "RESULT_CATEGORIES": "result_categories",
}


@dataclass(frozen=True)
class AppConfig:
    """Everything a parse or corpus run is configured with."""

    score: ScoreConfig = field(default_factory=ScoreConfig)
    max_steps: Optional[int] = None  # None = unlimited
    result_categories: Optional[FrozenSet[str]] = None  # None = any saturated

    def __post_init__(self):
        if self.max_steps is not None and self.max_steps < 1:
            raise ConfigError(f"max_steps must be positive, got {self.max_steps}")
        if self.result_categories is not None and not self.result_categories:
            raise ConfigError("result_categories must not be empty")


def _as_float(key: str, value: Any) -> float:
    if isinstance(value, bool):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected a number, got {value!r}")


def _as_steps(value: Any) -> Optional[int]:
    if value is None or (isinstance(value, str) and value.lower() in ("", "unlimited")):
        return None
    if isinstance(value, bool):
        raise ConfigError(f"max_steps: expected an integer, got {value!r}")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"max_steps: expected an integer, got {value!r}")


def _as_categories(value: Any) -> Optional[FrozenSet[str]]:
    if value is None:
        return None
    if isinstance(value, str):
        items = [part.strip() for part in value.split(",")]
    elif isinstance(value, (list, tuple, set, frozenset)):
        items = [str(part).strip() for part in value]
    else:
        raise ConfigError(f"result_categories: expected a list, got {value!r}")
    items = [item for item in items if item]
    if not items or items == ["any"]:
        return None
    return frozenset(items)


def _read_file(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}")
    try:
        data = yaml.safe_load(text) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid config file {path}: {e}")
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must contain a mapping")

    unknown = set(data) - {"scoring", "parsing"}
    if unknown:
        raise ConfigError(f"unknown config sections: {', '.join(sorted(unknown))}")

    values: Dict[str, Any] = {}
    for section, allowed in (("scoring", SCORING_KEYS), ("parsing", PARSING_KEYS)):
        block = data.get(section) or {}
        if not isinstance(block, dict):
            raise ConfigError(f"config section '{section}' must be a mapping")
        bad = set(block) - allowed
        if bad:
            raise ConfigError(f"unknown keys in '{section}': {', '.join(sorted(bad))}")
        values.update(block)
    return values


def _read_env(environ: Mapping[str, str]) -> Dict[str, Any]:
    values = {}
    for suffix, key in ENV_KEYS.items():
        name = ENV_PREFIX + suffix
        if name in environ:
            values[key] = environ[name]
    return values


def load_config(
    path: Optional[Union[str, Path]] = None,
    environ: Optional[Mapping[str, str]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> AppConfig:
    """Merge all configuration layers into a validated AppConfig.

    ``overrides`` entries that are None count as "not given".
    """
    values: Dict[str, Any] = {}
    if path is not None:
        values.update(_read_file(path))
    values.update(_read_env(os.environ if environ is None else environ))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})

    unknown = set(values) - SCORING_KEYS - PARSING_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(sorted(unknown))}")

    defaults = ScoreConfig()
    score = ScoreConfig(
        pr_match=_as_float("pr_match", values.get("pr_match", defaults.pr_match)),
        pr_nomatch=_as_float("pr_nomatch", values.get("pr_nomatch", defaults.pr_nomatch)),
        sc_mode=values.get("sc_mode", defaults.sc_mode),
        length_mode=values.get("length_mode", defaults.length_mode),
    )
    return AppConfig(
        score=score,
        max_steps=_as_steps(values.get("max_steps")),
        result_categories=_as_categories(values.get("result_categories")),
    )
