"""
Models for resonance computations.

This module provides the parameter and result types shared by the 3D Helmholtz and
1D Webster eigen solvers.
"""

import configparser
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np

from vocalis.common.config import get_float, get_int
from vocalis.common.errors import ValidationError


class Method(str, Enum):
    """Comparison methods, in reporting order."""

    H_R = "H_R"  # Helmholtz resonances
    W_R = "W_R"  # Webster resonances
    S_R = "S_R"  # length-scaled Webster resonances
    W_F = "W_F"  # formants of the synthesized vowel
    A_F = "A_F"  # formants of recorded audio

    @property
    def rank(self) -> int:
        return list(Method).index(self)


@dataclass(frozen=True)
class HelmholtzParams:
    """Sound speed, wall dissipation and glottis-plane coefficient."""

    c: float = 350.0
    alpha: float = 0.0
    glottis_admittance: float = 1.0

    def __post_init__(self):
        if not self.c > 0:
            raise ValidationError(f"Sound speed must be positive, got {self.c}")
        if self.alpha < 0:
            raise ValidationError(f"Wall dissipation must be non-negative, got {self.alpha}")
        if self.glottis_admittance < 0:
            raise ValidationError(f"Glottis admittance must be non-negative, got {self.glottis_admittance}")

    @classmethod
    def from_settings(cls, settings: configparser.ConfigParser) -> "HelmholtzParams":
        section = settings["acoustics"]
        return cls(
            c=get_float(section, "c"),
            alpha=get_float(section, "alpha"),
            glottis_admittance=get_float(section, "glottis_admittance", 1.0),
        )


@dataclass(frozen=True)
class EigenSettings:
    """How many modes to report and where to look for them."""

    k: int = 4
    shift_hz: float = 300.0
    spurious_hz: float = 20.0
    min_elements: int = 200
    scaling_modes: int = 3

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError(f"Mode count must be at least 1, got {self.k}")
        if self.min_elements < 2:
            raise ValidationError("At least 2 elements are needed")
        if self.scaling_modes < 1:
            raise ValidationError("Scaling needs at least one mode")

    @property
    def shift(self) -> complex:
        return 2j * np.pi * self.shift_hz

    @classmethod
    def from_settings(cls, settings: configparser.ConfigParser) -> "EigenSettings":
        section = settings["eigen"]
        return cls(
            k=get_int(section, "k"),
            shift_hz=get_float(section, "shift_hz"),
            spurious_hz=get_float(section, "spurious_hz"),
            min_elements=get_int(section, "min_elements"),
            scaling_modes=get_int(section, "scaling_modes"),
        )


@dataclass(frozen=True, eq=False)
class Mode:
    """One resonance: eigenvalue, frequency and optional mode shape."""

    lam: complex
    shape: Optional[np.ndarray] = None

    @property
    def frequency(self) -> float:
        return float(self.lam.imag / (2.0 * np.pi))

    @property
    def bandwidth(self) -> float:
        """-3 dB bandwidth implied by the decay rate, Hz."""
        return float(-self.lam.real / np.pi)


@dataclass(frozen=True, eq=False)
class ResonanceSet:
    """Resonances computed by one method, sorted by frequency."""

    method: Method
    modes: Tuple[Mode, ...]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        modes = tuple(self.modes)
        freqs = [m.frequency for m in modes]
        if any(f <= 0 for f in freqs):
            raise ValidationError("Retained resonances must have positive frequency")
        if any(b < a for a, b in zip(freqs, freqs[1:])):
            raise ValidationError("Resonances must be sorted by frequency")
        object.__setattr__(self, "modes", modes)

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([m.frequency for m in self.modes])

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([m.lam for m in self.modes])

    def relabel(self, method: Method, **metadata) -> "ResonanceSet":
        return ResonanceSet(method, self.modes, {**self.metadata, **metadata})

    def __len__(self) -> int:
        return len(self.modes)
