"""
Models for the 1D Webster resonance problem.
"""

import configparser
from dataclasses import dataclass

from vocalis.common.config import get_float
from vocalis.common.errors import ValidationError


@dataclass(frozen=True)
class WebsterParams:
    """Sound speed, wall dissipation and glottis-end Robin coefficient."""

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
    def from_settings(cls, settings: configparser.ConfigParser) -> "WebsterParams":
        section = settings["acoustics"]
        return cls(
            c=get_float(section, "c"),
            alpha=get_float(section, "alpha"),
            glottis_admittance=get_float(section, "glottis_admittance", 1.0),
        )
