"""
ABOUTME: Linear-prediction formant estimation: Levinson-Durbin LPC, root picking and frame medians.
ABOUTME: Also averages estimates over repeated utterances.
"""

from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np
from loguru import logger
from numpy.lib.stride_tricks import sliding_window_view
from scipy import signal
from scipy.linalg import LinAlgError, solve_toeplitz

from vocalis.common.errors import DegenerateFrameError, FormantError, ValidationError
from vocalis.features.formant.models import FormantEstimate, FormantSettings, Waveform

MIN_DURATION = 0.1


def lpc(frame: np.ndarray, order: int) -> Tuple[np.ndarray, float]:
    """Autocorrelation-method prediction coefficients.

    Returns ``(a, gain)`` where the inverse filter is 1 + a[0] z^-1 + ... + a[p-1] z^-p
    and ``gain`` is the square root of the residual energy.
    """
    frame = np.asarray(frame, dtype=float)
    if order < 2:
        raise ValidationError(f"LPC order must be at least 2, got {order}")
    if frame.size <= 2 * order:
        raise ValidationError(f"Frame of {frame.size} samples is too short for order {order}")

    r = signal.correlate(frame, frame, mode="full")[frame.size - 1 : frame.size + order]
    if not r[0] > 0:
        raise DegenerateFrameError("Frame has no energy")
    try:
        # Levinson-Durbin recursion on the Toeplitz normal equations
        predictor = solve_toeplitz(r[:order], r[1 : order + 1])
    except LinAlgError as e:
        raise DegenerateFrameError(f"Singular autocorrelation: {e}") from e
    error = float(r[0] - np.dot(predictor, r[1 : order + 1]))
    return -predictor, float(np.sqrt(max(error, 0.0)))


def lpc_order(fs: float) -> int:
    return int(round(2 + fs / 1000.0))


def _frame_candidates(coefficients: np.ndarray, fs: float, settings: FormantSettings):
    roots = np.roots(np.concatenate([[1.0], coefficients]))
    roots = roots[np.imag(roots) > 0]
    freqs = np.angle(roots) * fs / (2.0 * np.pi)
    bws = -np.log(np.abs(roots)) * fs / np.pi
    keep = (freqs > settings.min_frequency) & (bws < settings.max_bandwidth) & (bws > 0)
    order = np.argsort(freqs[keep])
    return freqs[keep][order], bws[keep][order]


def _analysis_signal(w: Waveform, settings: FormantSettings) -> Tuple[np.ndarray, float]:
    x, fs = w.samples, float(w.fs)
    if settings.resample_to is not None and fs > settings.resample_to:
        ratio = Fraction(settings.resample_to / fs).limit_denominator(1000)
        x = signal.resample_poly(x, ratio.numerator, ratio.denominator)
        fs = fs * ratio.numerator / ratio.denominator
    if settings.preemphasis > 0:
        x = signal.lfilter([1.0, -settings.preemphasis], [1.0], x)
    return x, fs


def formants_from_wave(w: Waveform, n: int = 2, settings: FormantSettings = None) -> FormantEstimate:
    """Median formants over the voiced frames of an utterance."""
    settings = settings or FormantSettings()
    if w.duration < MIN_DURATION:
        raise FormantError(f"Waveform of {w.duration * 1000:.1f} ms is shorter than {MIN_DURATION * 1000:.0f} ms")
    if n < 1:
        raise ValidationError("Need at least one formant")

    x, fs = _analysis_signal(w, settings)
    frame_len = int(round(settings.frame_ms * fs / 1000.0))
    hop = max(1, int(round(settings.hop_ms * fs / 1000.0)))
    if x.size < frame_len:
        raise FormantError("Waveform shorter than one analysis frame")

    frames = sliding_window_view(x, frame_len)[::hop]
    rms = np.sqrt(np.mean(frames**2, axis=1))
    peak = rms.max()
    if not peak > 0:
        raise DegenerateFrameError("Waveform is silent")
    voiced = frames[rms >= settings.voicing_threshold * peak]

    window = signal.windows.hamming(frame_len)
    order = lpc_order(fs)
    freq_rows: List[np.ndarray] = []
    bw_rows: List[np.ndarray] = []
    for frame in voiced:
        try:
            coefficients, _ = lpc(frame * window, order)
        except DegenerateFrameError:
            continue
        freqs, bws = _frame_candidates(coefficients, fs, settings)
        if freqs.size >= n:
            freq_rows.append(freqs[:n])
            bw_rows.append(bws[:n])

    if not freq_rows:
        raise FormantError(f"Fewer than {n} formants found in every voiced frame")
    logger.debug(f"Formants from {len(freq_rows)} of {frames.shape[0]} frames, order {order}")
    freqs = np.median(np.array(freq_rows), axis=0)
    if freqs[0] > settings.max_f1:
        # the lowest resonance fell through the bandwidth gate; later ones would shift down an index
        raise FormantError(
            f"F1 of {freqs[0]:.1f} Hz is above max_f1 = {settings.max_f1:.0f} Hz; the first resonance was not resolved"
        )
    return FormantEstimate(tuple(freqs), tuple(np.median(np.array(bw_rows), axis=0)))


def average_formants(estimates: Sequence[FormantEstimate]) -> FormantEstimate:
    """Per-index arithmetic mean over repeated utterances."""
    if not estimates:
        raise FormantError("Cannot average an empty list of estimates")
    n = estimates[0].n
    if any(e.n != n for e in estimates):
        raise FormantError("Estimates disagree on the number of formants")
    freqs = np.mean([e.frequencies for e in estimates], axis=0)
    bws = np.mean([e.bandwidths for e in estimates], axis=0)
    return FormantEstimate(tuple(freqs), tuple(bws))
