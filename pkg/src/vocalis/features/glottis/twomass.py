"""
ABOUTME: Two-mass vocal-fold oscillator driven by the glottal flow, with kinetic and viscous losses.
ABOUTME: Integrated with RK4 on four substeps per sample; produces glottal volume velocity.
"""

import math
from typing import Tuple

import numpy as np

from vocalis.common.errors import InstabilityError, ValidationError
from vocalis.features.glottis.models import GlottalState, TwoMassParams

SUBSTEPS = 4
MAX_DT = 1.0 / 8000.0


def glottal_flow(a1: float, a2: float, p_sub: float, p_inlet: float, rho0: float, resistance: float = 0.0) -> float:
    """Volume velocity through the narrowest open section, never negative.

    Solves drop = resistance u + rho0/2 (u / a_min)^2; ``resistance = 0`` is pure Bernoulli flow.
    """
    a_min = min(a1, a2)
    drop = p_sub - p_inlet
    if a_min <= 0.0 or drop <= 0.0:
        return 0.0
    kinetic = 0.5 * rho0 / (a_min * a_min)
    return 2.0 * drop / (resistance + math.sqrt(resistance * resistance + 4.0 * kinetic * drop))


def _accelerations(x1, v1, x2, v2, p_inlet: float, p: TwoMassParams) -> Tuple[float, float]:
    a1 = p.a01 + 2.0 * p.length * x1
    a2 = p.a02 + 2.0 * p.length * x2

    if a1 <= 0.0:
        p1 = 0.0
    elif a2 <= 0.0:
        p1 = p.p_sub
    else:
        u = glottal_flow(a1, a2, p.p_sub, p_inlet, p.rho0, p.viscous_resistance(a1, a2))
        # mean pressure along the lower section: entrance drop plus half its viscous drop
        p1 = p.p_sub - 0.5 * p.rho0 * (u / a1) ** 2 - 0.5 * p.section_resistance(a1, p.thickness1) * u
    # the upper mass faces the tract
    p2 = p_inlet

    f1 = p.length * p.thickness1 * p1 - p.r1 * v1 - p.k1 * x1 - p.kc * (x1 - x2)
    f2 = p.length * p.thickness2 * p2 - p.r2 * v2 - p.k2 * x2 - p.kc * (x2 - x1)
    # folds in contact push back with a stiffened spring on the overlap
    if a1 < 0.0:
        f1 -= p.collision_factor * p.k1 * a1 / (2.0 * p.length)
    if a2 < 0.0:
        f2 -= p.collision_factor * p.k2 * a2 / (2.0 * p.length)
    return f1 / p.m1, f2 / p.m2


def step(state: GlottalState, p_tract_inlet: float, params: TwoMassParams, dt: float) -> Tuple[GlottalState, float]:
    """Advance one sample.

    ``p_tract_inlet`` is the tract's scaled pressure at the glottis; the fold load uses
    the physical pressure rho0 c^2 p.
    """
    if not 0.0 < dt <= MAX_DT:
        raise ValidationError(f"Glottis time step must be in (0, {MAX_DT:.6g}] s, got {dt}")
    p_inlet = params.rho0 * params.c**2 * p_tract_inlet
    h = dt / SUBSTEPS
    x1, v1, x2, v2 = state.x1, state.v1, state.x2, state.v2

    for _ in range(SUBSTEPS):
        a11, a21 = _accelerations(x1, v1, x2, v2, p_inlet, params)
        k1x1, k1v1, k1x2, k1v2 = v1, a11, v2, a21
        a12, a22 = _accelerations(x1 + 0.5 * h * k1x1, v1 + 0.5 * h * k1v1, x2 + 0.5 * h * k1x2, v2 + 0.5 * h * k1v2, p_inlet, params)
        k2x1, k2v1, k2x2, k2v2 = v1 + 0.5 * h * k1v1, a12, v2 + 0.5 * h * k1v2, a22
        a13, a23 = _accelerations(x1 + 0.5 * h * k2x1, v1 + 0.5 * h * k2v1, x2 + 0.5 * h * k2x2, v2 + 0.5 * h * k2v2, p_inlet, params)
        k3x1, k3v1, k3x2, k3v2 = v1 + 0.5 * h * k2v1, a13, v2 + 0.5 * h * k2v2, a23
        a14, a24 = _accelerations(x1 + h * k3x1, v1 + h * k3v1, x2 + h * k3x2, v2 + h * k3v2, p_inlet, params)
        k4x1, k4v1, k4x2, k4v2 = v1 + h * k3v1, a14, v2 + h * k3v2, a24

        x1 += h / 6.0 * (k1x1 + 2.0 * k2x1 + 2.0 * k3x1 + k4x1)
        v1 += h / 6.0 * (k1v1 + 2.0 * k2v1 + 2.0 * k3v1 + k4v1)
        x2 += h / 6.0 * (k1x2 + 2.0 * k2x2 + 2.0 * k3x2 + k4x2)
        v2 += h / 6.0 * (k1v2 + 2.0 * k2v2 + 2.0 * k3v2 + k4v2)

    a1, a2 = GlottalState(x1, v1, x2, v2).areas(params)
    u_g = glottal_flow(a1, a2, params.p_sub, p_inlet, params.rho0, params.viscous_resistance(a1, a2))
    new_state = GlottalState(x1, v1, x2, v2, u_g)
    if not all(math.isfinite(v) for v in (x1, v1, x2, v2, u_g)):
        raise InstabilityError("Non-finite glottal state, reduce the time step", step=0)
    return new_state, u_g


class TwoMassGlottis:
    """Stateful glottal source for one simulation; call :meth:`next` once per sample."""

    def __init__(self, params: TwoMassParams, fs: float, state: GlottalState = None):
        self.params = params
        self.dt = 1.0 / fs
        self.state = state if state is not None else GlottalState.initial(params)
        self.samples = 0

    def next(self, p_tract_inlet: float = 0.0) -> float:
        try:
            self.state, u_g = step(self.state, p_tract_inlet, self.params, self.dt)
        except InstabilityError as e:
            raise InstabilityError("Non-finite glottal state, reduce the time step", step=self.samples) from e
        self.samples += 1
        return u_g


def free_flow(params: TwoMassParams, fs: float, duration: float) -> np.ndarray:
    """Glottal flow with no tract load, one value per sample."""
    source = TwoMassGlottis(params, fs)
    return np.array([source.next(0.0) for _ in range(int(round(duration * fs)))])
