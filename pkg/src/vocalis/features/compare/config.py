"""
ABOUTME: Comparison config files: global acoustics, solver sections and one section per vowel.
ABOUTME: Values are merged over the shipped defaults; relative paths resolve against the config file.
"""

import configparser
import pathlib
from dataclasses import dataclass
from typing import Optional, Tuple

from loguru import logger

from vocalis.common.config import PathLike, load_settings, read_ini
from vocalis.common.errors import ConfigurationError
from vocalis.features.geometry.primitives import TUBE_SHAPES

VOWEL_PREFIX = "vowel "
VOWEL_KEYS = ("area", "tube", "mesh", "cylinder_mesh", "audio")
GLOBAL_KEYS = {
    "c": "acoustics",
    "alpha": "acoustics",
    "rho0": "acoustics",
    "glottis_admittance": "acoustics",
    "k": "eigen",
    "shift_hz": "eigen",
    "spurious_hz": "eigen",
    "min_elements": "eigen",
    "scaling_modes": "eigen",
}
OVERRIDE_SECTIONS = ("tube", "walls", "glottis", "formant")
REQUIRED_GLOBALS = ("c", "alpha")


@dataclass(frozen=True)
class TubeSpec:
    shape: str
    length: float
    area0: float
    n_segments: int


@dataclass(frozen=True)
class CylinderSpec:
    length: float
    radius: float
    target_h: float


@dataclass(frozen=True)
class VowelEntry:
    """One vowel: a 1D geometry (file or analytic tube), optional 3D geometry and recordings."""

    label: str
    area: Optional[pathlib.Path] = None
    tube: Optional[TubeSpec] = None
    mesh: Optional[pathlib.Path] = None
    cylinder_mesh: Optional[CylinderSpec] = None
    audio: Tuple[pathlib.Path, ...] = ()


@dataclass(frozen=True)
class CompareConfig:
    path: pathlib.Path
    settings: configparser.ConfigParser
    vowels: Tuple[VowelEntry, ...]

    @property
    def duration(self) -> float:
        return self.settings["tube"].getfloat("duration")


def _numbers(raw: str, count: int, what: str, section: str):
    parts = raw.split()
    if len(parts) != count:
        raise ConfigurationError(f"[{section}] {what}: expected {count} values, got '{raw}'")
    try:
        return [float(p) for p in parts]
    except ValueError as e:
        raise ConfigurationError(f"[{section}] {what}: expected numbers, got '{raw}'") from e


def _parse_tube(raw: str, section: str) -> TubeSpec:
    parts = raw.split()
    if not parts or parts[0] not in TUBE_SHAPES:
        raise ConfigurationError(f"[{section}] tube: expected '<{'|'.join(TUBE_SHAPES)}> L A0 N', got '{raw}'")
    length, area0, n = _numbers(" ".join(parts[1:]), 3, "tube", section)
    if n != int(n):
        raise ConfigurationError(f"[{section}] tube: segment count must be an integer, got {n}")
    return TubeSpec(parts[0], length, area0, int(n))


def _parse_vowel(section: configparser.SectionProxy, base: pathlib.Path) -> VowelEntry:
    name = section.name
    label = name[len(VOWEL_PREFIX):].strip()
    if not label:
        raise ConfigurationError(f"[{name}] vowel label is empty")
    unknown = sorted(set(section.keys()) - set(VOWEL_KEYS))
    if unknown:
        raise ConfigurationError(f"[{name}] unknown key(s): {', '.join(unknown)}")

    def path(key: str) -> Optional[pathlib.Path]:
        raw = section.get(key, "").strip()
        return (base / raw) if raw else None

    tube = _parse_tube(section["tube"], name) if section.get("tube", "").strip() else None
    area = path("area")
    if area is None and tube is None:
        raise ConfigurationError(f"[{name}] needs an area function ('area' or 'tube')")
    if area is not None and tube is not None:
        raise ConfigurationError(f"[{name}] give either 'area' or 'tube', not both")

    cylinder = None
    if section.get("cylinder_mesh", "").strip():
        cylinder = CylinderSpec(*_numbers(section["cylinder_mesh"], 3, "cylinder_mesh", name))
    mesh = path("mesh")
    if mesh is not None and cylinder is not None:
        raise ConfigurationError(f"[{name}] give either 'mesh' or 'cylinder_mesh', not both")

    audio = tuple(base / p.strip() for p in section.get("audio", "").split(",") if p.strip())
    return VowelEntry(label, area, tube, mesh, cylinder, audio)


def _apply_section(settings: configparser.ConfigParser, target: str, key: str, value: str, origin: str) -> None:
    if key not in settings[target]:
        raise ConfigurationError(f"[{origin}] unknown key '{key}'")
    settings[target][key] = value


def load_compare_config(path: PathLike, use_env: bool = True) -> CompareConfig:
    """Parse and validate a comparison config; files are not opened here."""
    path = pathlib.Path(path)
    raw = read_ini(path)
    settings = load_settings(use_env=use_env)

    if not raw.has_section("global"):
        raise ConfigurationError(f"{path}: missing [global] section")
    for key in REQUIRED_GLOBALS:
        if not raw["global"].get(key, "").strip():
            raise ConfigurationError(f"{path}: [global] must set '{key}'")

    vowels = []
    for name in raw.sections():
        section = raw[name]
        if name == "global":
            for key, value in section.items():
                if key not in GLOBAL_KEYS:
                    raise ConfigurationError(f"[global] unknown key '{key}'")
                settings[GLOBAL_KEYS[key]][key] = value
        elif name in OVERRIDE_SECTIONS:
            for key, value in section.items():
                _apply_section(settings, name, key, value, name)
        elif name.startswith(VOWEL_PREFIX):
            vowels.append(_parse_vowel(section, path.parent))
        else:
            raise ConfigurationError(f"{path}: unknown section [{name}]")

    if not vowels:
        raise ConfigurationError(f"{path}: no [vowel <label>] sections")
    labels = [v.label for v in vowels]
    if len(set(labels)) != len(labels):
        raise ConfigurationError(f"{path}: vowel labels must be unique")
    logger.debug(f"Compare config {path}: {len(vowels)} vowel(s)")
    return CompareConfig(path, settings, tuple(vowels))
