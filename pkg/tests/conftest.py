import io

import numpy as np
import pytest
from scipy import signal

from vocalis.features.formant.models import Waveform
from vocalis.features.formant.wavio import write_wav
from vocalis.features.geometry.io import parse_mesh
from vocalis.features.geometry.primitives import make_tube

# Unit cube split into five tets; vertex i sits at (i & 1, (i >> 1) & 1, (i >> 2) & 1).
# Tets 1 and 3 are listed with negative orientation.
CUBE_MESH = """\
# unit cube
vertices 8
0 0 0
1 0 0
0 1 0
1 1 0
0 0 1
1 0 1
0 1 1
1 1 1
tets 5
0 1 2 4
3 1 2 7
5 1 4 7
6 2 4 7
1 2 4 7
boundary 12
0 1 2 2
3 1 2 2
5 4 7 2
6 4 7 2
0 2 4 3
6 2 4 3
3 1 7 1
5 1 7 1
0 1 4 2
5 1 4 2
3 2 7 2
6 2 7 2
"""


@pytest.fixture
def cube_text():
    return CUBE_MESH


@pytest.fixture
def cube_mesh():
    return parse_mesh(io.StringIO(CUBE_MESH), source="cube")


@pytest.fixture
def uniform_tube():
    return make_tube("cylinder", 0.175, 3e-4, 20)


@pytest.fixture
def cosine_horn():
    return make_tube("cosine-horn", 0.175, 3e-4, 40)


def two_resonance_wave(f1=700.0, f2=1200.0, bandwidth=80.0, fs=16000, duration=1.0, seed=0) -> Waveform:
    """Noise through a -6 dB/octave tilt and two resonators, like a whispered vowel."""
    rng = np.random.default_rng(seed)
    excitation = signal.lfilter([1.0], [1.0, -0.97], rng.standard_normal(int(duration * fs)))
    r = np.exp(-np.pi * bandwidth / fs)
    poles = [1.0]
    for f in (f1, f2):
        poles = np.convolve(poles, [1.0, -2.0 * r * np.cos(2.0 * np.pi * f / fs), r * r])
    x = signal.lfilter([1.0], poles, excitation)
    return Waveform(x / np.max(np.abs(x)), fs)


@pytest.fixture
def vowel_wave():
    return two_resonance_wave()


@pytest.fixture
def wav_file(tmp_path, vowel_wave):
    path = tmp_path / "vowel.wav"
    write_wav(vowel_wave, path)
    return path
