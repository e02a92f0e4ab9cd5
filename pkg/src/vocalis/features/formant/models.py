"""
Models for formant analysis.

This module provides the audio container, the estimate type and the analysis settings.
"""

import configparser
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from vocalis.common.config import get_float, get_optional_float
from vocalis.common.errors import FormantError, ValidationError


@dataclass(frozen=True, eq=False)
class Waveform:
    """Uniformly sampled mono signal."""

    samples: np.ndarray
    fs: float

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float).reshape(-1)
        if not self.fs > 0:
            raise ValidationError(f"Sample rate must be positive, got {self.fs}")
        if not np.all(np.isfinite(samples)):
            raise ValidationError("Waveform contains non-finite samples")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def duration(self) -> float:
        return self.samples.size / self.fs

    def scaled(self, gain: float) -> "Waveform":
        return Waveform(self.samples * gain, self.fs)

    def __len__(self) -> int:
        return int(self.samples.size)


@dataclass(frozen=True)
class FormantEstimate:
    """Formant frequencies F1..Fn with their bandwidths, both in Hz."""

    frequencies: Tuple[float, ...]
    bandwidths: Tuple[float, ...]

    def __post_init__(self):
        freqs = tuple(float(f) for f in self.frequencies)
        bws = tuple(float(b) for b in self.bandwidths)
        if len(freqs) != len(bws):
            raise FormantError("Each formant needs one bandwidth")
        if any(b <= a for a, b in zip(freqs, freqs[1:])):
            raise FormantError(f"Formant frequencies must be strictly increasing: {freqs}")
        if any(b <= 0 for b in bws):
            raise FormantError(f"Formant bandwidths must be positive: {bws}")
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "bandwidths", bws)

    @property
    def n(self) -> int:
        return len(self.frequencies)

    @property
    def f1(self) -> float:
        return self.frequencies[0]

    @property
    def f2(self) -> float:
        return self.frequencies[1]


@dataclass(frozen=True)
class FormantSettings:
    """LPC analysis constants."""

    preemphasis: float = 0.97
    frame_ms: float = 25.0
    hop_ms: float = 10.0
    max_bandwidth: float = 400.0
    min_frequency: float = 90.0
    voicing_threshold: float = 0.01
    max_f1: float = 1200.0
    resample_to: Optional[float] = 16000.0

    def __post_init__(self):
        if not 0.0 <= self.preemphasis < 1.0:
            raise ValidationError(f"Pre-emphasis must lie in [0, 1), got {self.preemphasis}")
        if self.frame_ms <= 0 or self.hop_ms <= 0:
            raise ValidationError("Frame and hop lengths must be positive")
        if not self.max_f1 > self.min_frequency:
            raise ValidationError(f"max_f1 must exceed min_frequency, got {self.max_f1}")
        if self.resample_to is not None and self.resample_to <= 0:
            raise ValidationError("Resampling rate must be positive")

    @classmethod
    def from_settings(cls, settings: configparser.ConfigParser) -> "FormantSettings":
        section = settings["formant"]
        return cls(
            preemphasis=get_float(section, "preemphasis"),
            frame_ms=get_float(section, "frame_ms"),
            hop_ms=get_float(section, "hop_ms"),
            max_bandwidth=get_float(section, "max_bandwidth"),
            min_frequency=get_float(section, "min_frequency"),
            voicing_threshold=get_float(section, "voicing_threshold"),
            max_f1=get_float(section, "max_f1"),
            resample_to=get_optional_float(section, "resample_to"),
        )
