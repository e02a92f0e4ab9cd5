"""
Models for time-domain vowel synthesis.

This module provides the tube parameters, the wall model and the mutable simulation state.
"""

import configparser
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from vocalis.common.config import get_bool, get_choice, get_float, get_int
from vocalis.common.errors import ValidationError

WALL_KINDS = ("rigid", "vibrating")
OUTPUT_KINDS = ("derivative", "flow")


@dataclass(frozen=True)
class WallModel:
    """Per-unit-area mass-spring-damper of the tract walls (kg/m^2, kg/(m^2 s), N/m^3)."""

    kind: str = "vibrating"
    mass: float = 21.0
    damping: float = 8000.0
    stiffness: float = 845000.0

    def __post_init__(self):
        if self.kind not in WALL_KINDS:
            raise ValidationError(f"Wall model must be one of {', '.join(WALL_KINDS)}, got '{self.kind}'")
        if self.vibrating:
            if not self.mass > 0:
                raise ValidationError(f"Wall mass must be positive, got {self.mass}")
            if self.damping < 0 or self.stiffness < 0:
                raise ValidationError("Wall damping and stiffness must be non-negative")

    @property
    def vibrating(self) -> bool:
        return self.kind == "vibrating"

    @classmethod
    def rigid(cls) -> "WallModel":
        return cls(kind="rigid")

    def as_vibrating(self) -> "WallModel":
        return WallModel("vibrating", self.mass, self.damping, self.stiffness)


@dataclass(frozen=True)
class TubeParams:
    c: float = 350.0
    rho0: float = 1.2
    d0: float = 1.6
    diffusion_d0: float = 0.002
    n_segments: int = 20
    fs: float = 44100.0
    walls: WallModel = field(default_factory=WallModel)
    output: str = "derivative"
    glottal_feedback: bool = True

    def __post_init__(self):
        if not self.c > 0 or not self.rho0 > 0:
            raise ValidationError("Sound speed and density must be positive")
        if self.d0 < 0 or self.diffusion_d0 < 0:
            raise ValidationError(f"Loss coefficients must be non-negative, got d0={self.d0} D0={self.diffusion_d0}")
        if self.n_segments < 2:
            raise ValidationError(f"At least 2 tube segments are needed, got {self.n_segments}")
        if self.fs < 8000:
            raise ValidationError(f"Sample rate must be at least 8000 Hz, got {self.fs}")
        if self.output not in OUTPUT_KINDS:
            raise ValidationError(f"Output must be one of {', '.join(OUTPUT_KINDS)}, got '{self.output}'")

    @classmethod
    def from_settings(cls, settings: configparser.ConfigParser) -> "TubeParams":
        tube, walls, acoustics = settings["tube"], settings["walls"], settings["acoustics"]
        return cls(
            c=get_float(acoustics, "c"),
            rho0=get_float(acoustics, "rho0"),
            d0=get_float(tube, "loss_d0"),
            diffusion_d0=get_float(tube, "diffusion_d0"),
            n_segments=get_int(tube, "n_segments"),
            fs=get_float(tube, "fs"),
            walls=WallModel(
                kind=get_choice(walls, "model", WALL_KINDS, "vibrating"),
                mass=get_float(walls, "mass"),
                damping=get_float(walls, "damping"),
                stiffness=get_float(walls, "stiffness"),
            ),
            output=get_choice(tube, "output", OUTPUT_KINDS, "derivative"),
            glottal_feedback=get_bool(tube, "glottal_feedback", True),
        )


@dataclass
class TubeState:
    """Staggered-grid state: p on the N+1 nodes, u on the N segment centres, wall y and y' on nodes.

    ``p`` is the relative density deviation and ``u`` the volume velocity divided by c.
    """

    p: np.ndarray
    u: np.ndarray
    y: np.ndarray
    v: np.ndarray
    u_g: float = 0.0

    @classmethod
    def rest(cls, n_segments: int) -> "TubeState":
        return cls(
            p=np.zeros(n_segments + 1),
            u=np.zeros(n_segments),
            y=np.zeros(n_segments + 1),
            v=np.zeros(n_segments + 1),
        )

    def is_finite(self) -> bool:
        return bool(
            np.isfinite(self.p).all() and np.isfinite(self.u).all() and np.isfinite(self.y).all() and np.isfinite(self.v).all()
        )


@dataclass(frozen=True)
class ShiftResult:
    """First formant of the same tract with and without wall motion."""

    f1_rigid: float
    f1_vibrating: float
    f2_rigid: Optional[float] = None
    f2_vibrating: Optional[float] = None

    def __iter__(self):
        # unpacks as (F1 rigid, F1 vibrating)
        return iter((self.f1_rigid, self.f1_vibrating))

    @property
    def relative_shift(self) -> float:
        return (self.f1_vibrating - self.f1_rigid) / self.f1_rigid
