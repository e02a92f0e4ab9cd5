"""
Configuration management for Vocalis.

Settings are layered: the shipped ``defaults.ini``, then ``VOCALIS_<SECTION>_<KEY>``
environment variables (a ``.env`` file is loaded first), then an optional user file.
"""

import configparser
import os
import pathlib
from typing import Iterable, Optional, Union

from dotenv import load_dotenv
from loguru import logger

from vocalis.common.errors import ConfigurationError

DEFAULTS_FILE = pathlib.Path(__file__).resolve().parent.parent / "defaults.ini"
ENV_PREFIX = "VOCALIS"

PathLike = Union[str, os.PathLike]


def _new_parser() -> configparser.ConfigParser:
    return configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)


def read_ini(path: PathLike, parser: Optional[configparser.ConfigParser] = None) -> configparser.ConfigParser:
    """Read an INI file into ``parser`` (or a fresh one), raising ConfigurationError on failure."""
    parser = parser if parser is not None else _new_parser()
    path = pathlib.Path(path)
    if not path.is_file():
        raise ConfigurationError(f"Config file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            parser.read_file(f, source=str(path))
    except configparser.Error as e:
        raise ConfigurationError(f"Malformed config file {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise ConfigurationError(f"Config file {path} is not valid UTF-8: {e.reason}") from e
    return parser


def apply_env_overrides(parser: configparser.ConfigParser) -> None:
    """Override known keys from the environment."""
    load_dotenv()
    for section in parser.sections():
        for key in parser[section]:
            env_name = f"{ENV_PREFIX}_{section}_{key}".upper()
            value = os.getenv(env_name)
            if value is not None:
                logger.debug(f"Config override from {env_name}")
                parser[section][key] = value


def load_settings(path: Optional[PathLike] = None, use_env: bool = True) -> configparser.ConfigParser:
    """Load defaults, environment overrides and an optional user file."""
    parser = read_ini(DEFAULTS_FILE)
    if use_env:
        apply_env_overrides(parser)
    if path is not None:
        read_ini(path, parser)
    return parser


def get_float(section: configparser.SectionProxy, key: str, default: Optional[float] = None) -> float:
    """Fetch a float, reporting the section and key on failure."""
    raw = section.get(key, fallback=None)
    if raw is None or raw.strip() == "":
        if default is None:
            raise ConfigurationError(f"Missing required key '{key}' in [{section.name}]")
        return default
    try:
        return float(raw)
    except ValueError as e:
        raise ConfigurationError(f"[{section.name}] {key}: expected a number, got '{raw}'") from e


def get_optional_float(section: configparser.SectionProxy, key: str) -> Optional[float]:
    raw = section.get(key, fallback="")
    if raw is None or raw.strip() == "":
        return None
    return get_float(section, key)


def get_int(section: configparser.SectionProxy, key: str, default: Optional[int] = None) -> int:
    value = get_float(section, key, None if default is None else float(default))
    if value != int(value):
        raise ConfigurationError(f"[{section.name}] {key}: expected an integer, got {value}")
    return int(value)


def get_bool(section: configparser.SectionProxy, key: str, default: bool = False) -> bool:
    try:
        return section.getboolean(key, fallback=default)
    except ValueError as e:
        raise ConfigurationError(f"[{section.name}] {key}: expected a boolean") from e


def get_choice(section: configparser.SectionProxy, key: str, choices: Iterable[str], default: str) -> str:
    value = section.get(key, fallback=default).strip().lower()
    choices = tuple(choices)
    if value not in choices:
        raise ConfigurationError(f"[{section.name}] {key}: expected one of {', '.join(choices)}, got '{value}'")
    return value
