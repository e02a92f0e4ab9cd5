"""
Models for the two-mass glottal source.
"""

import configparser
import math
from dataclasses import dataclass

from vocalis.common.config import get_float
from vocalis.common.errors import ValidationError

# below this an open section is treated as a slit of this area
MIN_OPEN_AREA = 1e-12


@dataclass(frozen=True)
class TwoMassParams:
    """Lumped vocal-fold parameters. Defaults are the classic two-mass values, not measurements."""

    m1: float = 0.125e-3  # kg
    m2: float = 0.025e-3
    k1: float = 80.0  # N/m
    k2: float = 8.0
    kc: float = 25.0
    zeta1: float = 0.1
    zeta2: float = 0.6
    a01: float = 0.0  # rest area, m^2
    a02: float = 0.0
    p_sub: float = 800.0  # Pa
    collision_factor: float = 3.0
    length: float = 0.014  # m
    thickness1: float = 0.0025
    thickness2: float = 0.0005
    initial_displacement: float = 1.0e-4
    viscosity: float = 1.8e-5  # Pa s
    rho0: float = 1.2
    c: float = 350.0

    def __post_init__(self):
        for name in ("m1", "m2", "k1", "k2", "kc", "length", "thickness1", "thickness2", "rho0", "c", "viscosity"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"Glottis parameter {name} must be positive, got {getattr(self, name)}")
        for name in ("a01", "a02", "zeta1", "zeta2", "collision_factor", "p_sub"):
            if getattr(self, name) < 0:
                raise ValidationError(f"Glottis parameter {name} must be non-negative, got {getattr(self, name)}")

    @property
    def r1(self) -> float:
        return 2.0 * self.zeta1 * math.sqrt(self.m1 * self.k1)

    @property
    def r2(self) -> float:
        return 2.0 * self.zeta2 * math.sqrt(self.m2 * self.k2)

    def section_resistance(self, area: float, thickness: float) -> float:
        """Poiseuille resistance 12 mu l^2 d / A^3 of one rectangular glottal section (Pa s/m^3)."""
        return 12.0 * self.viscosity * self.length**2 * thickness / max(area, MIN_OPEN_AREA) ** 3

    def viscous_resistance(self, a1: float, a2: float) -> float:
        return self.section_resistance(a1, self.thickness1) + self.section_resistance(a2, self.thickness2)

    @classmethod
    def from_settings(cls, settings: configparser.ConfigParser) -> "TwoMassParams":
        section = settings["glottis"]
        values = {name: get_float(section, name) for name in (
            "m1", "m2", "k1", "k2", "kc", "zeta1", "zeta2", "a01", "a02", "p_sub",
            "collision_factor", "length", "thickness1", "thickness2", "initial_displacement", "viscosity",
        )}
        acoustics = settings["acoustics"]
        return cls(**values, rho0=get_float(acoustics, "rho0"), c=get_float(acoustics, "c"))


@dataclass(frozen=True)
class GlottalState:
    """Displacements (m) and velocities of both masses and the current flow (m^3/s)."""

    x1: float = 0.0
    v1: float = 0.0
    x2: float = 0.0
    v2: float = 0.0
    u_g: float = 0.0

    @classmethod
    def initial(cls, params: TwoMassParams) -> "GlottalState":
        """Rest position with the lower mass displaced to break the symmetric equilibrium."""
        return cls(x1=params.initial_displacement)

    def areas(self, params: TwoMassParams):
        return params.a01 + 2.0 * params.length * self.x1, params.a02 + 2.0 * params.length * self.x2
