"""
ABOUTME: 16-bit PCM mono WAV reading and writing.
ABOUTME: Written files are peak-normalized to -3 dBFS.
"""

import pathlib

import numpy as np
from loguru import logger
from scipy.io import wavfile

from vocalis.common.errors import ParseError, ValidationError
from vocalis.features.formant.models import Waveform

FULL_SCALE = 32768.0
PEAK_DBFS = -3.0


def read_wav(path) -> Waveform:
    """Read a mono WAV file; int16 samples map to [-1, 1)."""
    path = pathlib.Path(path)
    if not path.is_file():
        raise ParseError("WAV file not found", str(path))
    try:
        fs, data = wavfile.read(path)
    except (ValueError, EOFError) as e:
        raise ParseError(f"Unreadable WAV file: {e}", str(path)) from e

    if data.ndim != 1:
        raise ParseError(f"Expected mono audio, got {data.shape[1]} channels", str(path))
    if data.dtype == np.int16:
        samples = data.astype(float) / FULL_SCALE
    elif data.dtype in (np.float32, np.float64):
        samples = data.astype(float)
    else:
        raise ParseError(f"Unsupported sample format {data.dtype}, expected 16-bit PCM", str(path))
    logger.debug(f"Read {samples.size} samples at {fs} Hz from {path}")
    return Waveform(samples, float(fs))


def write_wav(w: Waveform, path) -> None:
    """Write ``w`` as 16-bit PCM with its peak at -3 dBFS."""
    if w.fs != int(w.fs):
        raise ValidationError(f"WAV sample rate must be an integer, got {w.fs}")
    peak = float(np.max(np.abs(w.samples))) if len(w) else 0.0
    scaled = w.samples * (10.0 ** (PEAK_DBFS / 20.0) / peak) if peak > 0 else w.samples
    pcm = np.clip(np.round(FULL_SCALE * scaled), -FULL_SCALE, FULL_SCALE - 1).astype(np.int16)
    wavfile.write(pathlib.Path(path), int(w.fs), pcm)
    logger.debug(f"Wrote {pcm.size} samples to {path}")
