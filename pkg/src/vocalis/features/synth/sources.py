"""
ABOUTME: Prescribed glottal flow sources for the tube simulator.
ABOUTME: Any object with ``next(p_inlet) -> volume velocity`` can drive a simulation.
"""

from typing import Protocol

import numpy as np

from vocalis.common.errors import ValidationError


class FlowSource(Protocol):
    def next(self, p_tract_inlet: float = 0.0) -> float: ...


class PrescribedFlow:
    """Replays a fixed volume-velocity series (m^3/s); silent after it runs out."""

    def __init__(self, samples):
        self.samples = np.asarray(samples, dtype=float).reshape(-1)
        if not np.isfinite(self.samples).all():
            raise ValidationError("Prescribed flow contains non-finite samples")
        self.index = 0

    def next(self, p_tract_inlet: float = 0.0) -> float:
        i = self.index
        self.index += 1
        return float(self.samples[i]) if i < self.samples.size else 0.0


def impulse(n_samples: int, amplitude: float = 1.0) -> PrescribedFlow:
    samples = np.zeros(n_samples)
    if n_samples:
        samples[0] = amplitude
    return PrescribedFlow(samples)


def rosenberg_flow(
    fs: float,
    duration: float,
    f0: float = 100.0,
    open_quotient: float = 0.62,
    speed_quotient: float = 1.2,
    amplitude: float = 3e-4,
) -> np.ndarray:
    """Periodic raised-cosine opening and quarter-cosine closing pulses."""
    if not 0.1 <= open_quotient <= 0.95:
        raise ValidationError(f"Open quotient must lie in [0.1, 0.95], got {open_quotient}")
    if not f0 > 0 or not speed_quotient > 0:
        raise ValidationError("Pitch and speed quotient must be positive")

    phase = np.mod(np.arange(int(round(duration * fs))) * f0 / fs, 1.0)
    t_open = open_quotient * speed_quotient / (speed_quotient + 1.0)
    flow = np.zeros_like(phase)
    opening = phase < t_open
    closing = (phase >= t_open) & (phase < open_quotient)
    flow[opening] = 0.5 * (1.0 - np.cos(np.pi * phase[opening] / t_open))
    flow[closing] = np.cos(0.5 * np.pi * (phase[closing] - t_open) / (open_quotient - t_open))
    return amplitude * flow


def click_train(fs: float, duration: float, rate: float = 20.0, amplitude: float = 1e-4) -> np.ndarray:
    """Single-sample flow impulses ``rate`` times per second, first one at t=0."""
    if not rate > 0:
        raise ValidationError(f"Click rate must be positive, got {rate}")
    flow = np.zeros(int(round(duration * fs)))
    flow[np.arange(0, flow.size, max(1, int(round(fs / rate))))] = amplitude
    return flow
