"""
ABOUTME: Time-domain lossy Webster tube with optional vibrating walls, producing vowel waveforms.
ABOUTME: Staggered grid with implicit losses and diffusion; the glottal source is coupled sample by sample.
"""

import math
from typing import Union

import numpy as np
from loguru import logger
from scipy.linalg import solve_banded

from vocalis.common.errors import InstabilityError, ValidationError
from vocalis.features.formant.models import Waveform
from vocalis.features.geometry.models import AreaFunction
from vocalis.features.synth.models import TubeParams, TubeState
from vocalis.features.synth.sources import FlowSource, PrescribedFlow

COURANT = 0.9
LIP_CONDITIONS = ("open", "closed")


class TubeSimulator:
    """One tract, one state. Advance with :meth:`advance` or :meth:`run`.

    ``lips="closed"`` replaces the pressure-release lip condition by a rigid end;
    together with a silent source this gives a closed reflective tube.
    """

    def __init__(self, af: AreaFunction, params: TubeParams, lips: str = "open"):
        if lips not in LIP_CONDITIONS:
            raise ValidationError(f"Lip condition must be one of {', '.join(LIP_CONDITIONS)}, got '{lips}'")
        self.params = params
        self.lips = lips
        n = params.n_segments
        self.n = n
        self.dx = af.length / n

        centers = (np.arange(n) + 0.5) * self.dx
        sampled = af.sample_at(centers)
        self.seg_area = sampled["area"]
        self.seg_circ = sampled["circumference"]
        self.node_area = np.concatenate([[self.seg_area[0]], 0.5 * (self.seg_area[:-1] + self.seg_area[1:]), [self.seg_area[-1]]])
        self.node_circ = np.concatenate([[self.seg_circ[0]], 0.5 * (self.seg_circ[:-1] + self.seg_circ[1:]), [self.seg_circ[-1]]])
        self.weights = np.full(n + 1, self.dx)
        self.weights[[0, -1]] = 0.5 * self.dx

        self.loss = params.d0 * self.seg_area**-1.5
        self.diffusion = params.diffusion_d0 * self.seg_area**-1.5

        # Gershgorin bound on the squared wave frequency; 6 for a uniform tube with half end cells
        cell_area = self.node_area * self.weights / self.dx
        spread = float(np.max(2.0 * self.seg_area * (1.0 / cell_area[:-1] + 1.0 / cell_area[1:])))
        courant = params.c / (params.fs * self.dx) * math.sqrt(spread) / 2.0
        self.substeps = max(1, math.ceil(courant / COURANT))
        self.dt = 1.0 / (params.fs * self.substeps)
        self.state = TubeState.rest(n)
        self.samples = 0
        logger.debug(
            f"Tube: {n} segments, dx={self.dx * 1000:.3f} mm, {self.substeps} substeps per sample, walls {params.walls.kind}"
        )

    def _areas(self, y: np.ndarray):
        if not self.params.walls.vibrating:
            return self.node_area, self.seg_area
        return self.node_area + self.node_circ * y, self.seg_area + self.seg_circ * 0.5 * (y[:-1] + y[1:])

    def _wall_step(self) -> None:
        walls, st, dt = self.params.walls, self.state, self.dt
        force = self.params.rho0 * self.params.c**2 * st.p
        # backward Euler on m y'' + b y' + k y = F
        st.v = (st.v + dt / walls.mass * (force - walls.stiffness * st.y)) / (
            1.0 + dt * walls.damping / walls.mass + dt * dt * walls.stiffness / walls.mass
        )
        st.y = st.y + dt * st.v

    def _momentum(self, a_old: np.ndarray, a_new: np.ndarray, u_g: float) -> np.ndarray:
        st, dt, dx = self.state, self.dt, self.dx
        lap = self.diffusion / dx**2
        diag_lap = 2.0 * lap
        diag_lap[0] = 3.0 * lap[0]
        diag_lap[-1] = lap[-1] if self.lips == "open" else 3.0 * lap[-1]

        ab = np.zeros((3, self.n))
        ab[0, 1:] = -lap[:-1]
        ab[1] = 1.0 / (a_new * dt) + self.loss + diag_lap
        ab[2, :-1] = -lap[1:]
        rhs = st.u / (a_old * dt) - self.params.c * (st.p[1:] - st.p[:-1]) / dx
        rhs[0] += 2.0 * lap[0] * u_g
        return solve_banded((1, 1), ab, rhs)

    def _continuity(self, area_old: np.ndarray, area_new: np.ndarray, u_g: float) -> np.ndarray:
        st, dx = self.state, self.dx
        div = np.empty(self.n + 1)
        div[0] = 2.0 * (st.u[0] - u_g) / dx
        div[1:-1] = (st.u[1:] - st.u[:-1]) / dx
        div[-1] = -2.0 * st.u[-1] / dx
        p = (area_old * st.p - self.params.c * self.dt * div - (area_new - area_old)) / area_new
        if self.lips == "open":
            p[-1] = 0.0
        return p

    def _substep(self, u_g: float) -> None:
        st = self.state
        area_old, a_old = self._areas(st.y)
        if self.params.walls.vibrating:
            self._wall_step()
        area_new, a_new = self._areas(st.y)
        st.u = self._momentum(a_old, a_new, u_g)
        st.p = self._continuity(area_old, area_new, u_g)
        st.u_g = u_g

    def advance(self, flow: float) -> float:
        """Advance one output sample with glottal volume velocity ``flow`` (m^3/s).

        Returns the volume velocity at the lip end.
        """
        start, target = self.state.u_g, flow / self.params.c
        for k in range(1, self.substeps + 1):
            self._substep(start + (target - start) * k / self.substeps)
        step = self.samples
        self.samples += 1
        if not self.state.is_finite():
            raise InstabilityError("Non-finite tube state", step=step)
        area, _ = self._areas(self.state.y)
        if np.any(area <= 0.0):
            raise InstabilityError("Wall displacement closed the tract", step=step)
        return self.params.c * float(self.state.u[-1])

    def run(self, source: FlowSource, n_samples: int) -> np.ndarray:
        """Lip volume velocity for ``n_samples`` samples driven by ``source``."""
        feedback = self.params.glottal_feedback
        out = np.empty(n_samples)
        for i in range(n_samples):
            flow = source.next(float(self.state.p[0]) if feedback else 0.0)
            out[i] = self.advance(flow)
        return out

    def energy(self) -> float:
        """Discrete acoustic energy sum(A p^2) + sum(u u' / A).

        ``u'`` is the lossless update of ``u`` one substep ahead; pairing consecutive
        velocities makes this an exact invariant of the rigid lossless closed tube.
        """
        area, a_seg = self._areas(self.state.y)
        st = self.state
        u_next = st.u - a_seg * self.params.c * self.dt * np.diff(st.p) / self.dx
        return float(np.sum(self.weights * area * st.p**2) + np.sum(self.dx * st.u * u_next / a_seg))


def simulate(
    af: AreaFunction,
    source: Union[FlowSource, np.ndarray],
    params: TubeParams,
    duration: float,
    lips: str = "open",
) -> Waveform:
    """Synthesize ``duration`` seconds; a raw array is taken as a prescribed glottal flow."""
    if not duration > 0:
        raise ValidationError(f"Duration must be positive, got {duration}")
    if isinstance(source, np.ndarray):
        source = PrescribedFlow(source)
    simulator = TubeSimulator(af, params, lips)
    n_samples = int(round(duration * params.fs))
    flow = simulator.run(source, n_samples)
    if params.output == "derivative":
        signal = np.diff(flow, prepend=0.0) * params.fs
    else:
        signal = flow
    logger.debug(f"Synthesized {n_samples} samples, peak {np.max(np.abs(signal)) if n_samples else 0.0:.3e}")
    return Waveform(signal, params.fs)
