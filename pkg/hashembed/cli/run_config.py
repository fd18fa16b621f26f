"""Per-run configuration: config files, flag precedence and echoing."""

import json
from enum import Enum
from pathlib import Path
from typing import Annotated, Any, Dict, Mapping, Optional, Tuple, Type, TypeVar

from pydantic import BaseModel, BeforeValidator, ConfigDict, ValidationError

from hashembed.core.exceptions import ConfigError
from hashembed.core.logger import logger

R = TypeVar("R", bound="RunConfig")


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return tuple(part.strip() for part in value.split(",") if part.strip())
    return value


# comma-separated on the command line and in config files
IntList = Annotated[Tuple[int, ...], BeforeValidator(_split_list)]


class RunConfig(BaseModel):
    """Base of every command's settings; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid", frozen=True)


def normalize_key(key: str) -> str:
    return key.strip().replace("-", "_")


def parse_config_file(path: Path) -> Dict[str, str]:
    """
    Read ``key = value`` lines; '#' starts a comment line.

    Raises:
        ConfigError: On a line without '=' or a key given twice
    """
    values: Dict[str, str] = {}
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise ConfigError(f"{path}: line {lineno}: expected 'key = value'")
            key = normalize_key(key)
            if key in values:
                raise ConfigError(f"{path}: line {lineno}: duplicate key {key!r}")
            values[key] = value.strip()
    return values


def _describe(error: ValidationError) -> str:
    first = error.errors()[0]
    where = ".".join(str(part) for part in first["loc"])
    message = first["msg"].removeprefix("Value error, ")
    if first["type"] == "extra_forbidden":
        return f"unknown key {where!r}"
    return f"{where}: {message}" if where else message


def resolve(
    model: Type[R],
    flags: Mapping[str, Any],
    config_file: Optional[Path] = None,
) -> R:
    """
    Build a run config; flags override file keys, which override defaults.

    Raises:
        ConfigError: On unknown keys or values failing validation
    """
    values: Dict[str, Any] = parse_config_file(config_file) if config_file else {}
    values.update({normalize_key(k): v for k, v in flags.items() if v is not None})
    try:
        return model(**values)
    except ValidationError as e:
        raise ConfigError(_describe(e)) from None


def _plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (tuple, list)):
        return ",".join(str(_plain(v)) for v in value)
    return value


def config_items(cfg: RunConfig) -> Tuple[Tuple[str, Any], ...]:
    """Field values as plain text-friendly pairs, unset optionals skipped."""
    return tuple(
        (name, _plain(value)) for name, value in cfg.model_dump().items() if value is not None
    )


def format_config(cfg: RunConfig) -> str:
    """``key = value`` lines that parse back into the same config."""
    return "\n".join(f"{key} = {value}" for key, value in config_items(cfg))


def log_config(command: str, cfg: RunConfig) -> None:
    logger.info(f"Resolved {command} config: {json.dumps(dict(config_items(cfg)), sort_keys=True)}")


M = TypeVar("M", bound=BaseModel)


def build(model: Type[M], **values: Any) -> M:
    """Construct a library config from run settings, as a ConfigError on failure."""
    try:
        return model(**values)
    except ValidationError as e:
        raise ConfigError(_describe(e)) from None
