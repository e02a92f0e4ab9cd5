from dataclasses import replace

import numpy as np
import pytest

from vocalis.common.errors import FormantError, ValidationError
from vocalis.features.formant.lpc import formants_from_wave
from vocalis.features.synth.experiments import formant_shift_experiment
from vocalis.features.synth.models import ShiftResult, TubeParams, WallModel
from vocalis.features.synth.sources import PrescribedFlow, click_train, impulse, rosenberg_flow
from vocalis.features.synth.tube import TubeSimulator, simulate
from vocalis.features.webster.models import WebsterParams
from vocalis.features.webster.solver import webster_resonances

LOSSLESS = TubeParams(d0=0.0, diffusion_d0=0.0, walls=WallModel.rigid(), glottal_feedback=False)
RIGID = TubeParams(walls=WallModel.rigid(), glottal_feedback=False)


def _peak(samples: np.ndarray, fs: float, low: float, high: float) -> float:
    spectrum = np.abs(np.fft.rfft(samples * np.hanning(samples.size)))
    freqs = np.fft.rfftfreq(samples.size, 1.0 / fs)
    band = (freqs >= low) & (freqs <= high)
    return float(freqs[band][np.argmax(spectrum[band])])


class TestSources:
    def test_prescribed_flow_falls_silent(self):
        source = PrescribedFlow([1.0, 2.0])
        assert [source.next(), source.next(), source.next()] == [1.0, 2.0, 0.0]

    def test_impulse(self):
        source = impulse(3, 5.0)
        assert [source.next() for _ in range(3)] == [5.0, 0.0, 0.0]

    def test_rosenberg_pulses_are_periodic_and_closed(self):
        flow = rosenberg_flow(16000, 0.1, f0=100.0)
        np.testing.assert_allclose(flow[:160], flow[160:320])
        assert flow.min() >= 0.0
        assert flow[159] == 0.0

    def test_click_train_spacing(self):
        clicks = click_train(8000, 0.25, rate=20.0)
        assert np.flatnonzero(clicks).tolist() == [0, 400, 800, 1200, 1600]

    def test_bad_open_quotient(self):
        with pytest.raises(ValidationError):
            rosenberg_flow(16000, 0.1, open_quotient=1.5)


class TestTube:
    def test_silence_in_silence_out(self, uniform_tube):
        wave = simulate(uniform_tube, np.zeros(4410), TubeParams(), 0.1)
        assert np.all(wave.samples == 0.0)

    def test_courant_bound_sets_substeps(self, uniform_tube):
        assert TubeSimulator(uniform_tube, replace(LOSSLESS, fs=44100)).substeps == 2
        assert TubeSimulator(uniform_tube, replace(LOSSLESS, fs=16000)).substeps == 4

    def test_unknown_lip_condition(self, uniform_tube):
        with pytest.raises(ValidationError):
            TubeSimulator(uniform_tube, LOSSLESS, lips="half-open")

    @pytest.mark.slow
    def test_impulse_response_peaks_at_webster_modes(self, uniform_tube):
        wave = simulate(uniform_tube, impulse(22050, 1e-4), LOSSLESS, 0.5)
        w_r = webster_resonances(uniform_tube, WebsterParams(350.0, 0.0, 0.0), k=2).frequencies
        assert _peak(wave.samples, wave.fs, 300.0, 1000.0) == pytest.approx(w_r[0], rel=0.03)
        assert _peak(wave.samples, wave.fs, 1000.0, 2000.0) == pytest.approx(w_r[1], rel=0.03)

    def test_losses_remove_energy(self, uniform_tube):
        clicks = click_train(44100, 0.1, rate=20.0)
        lossless = simulate(uniform_tube, clicks, LOSSLESS, 0.1).samples
        lossy = simulate(uniform_tube, clicks, replace(LOSSLESS, d0=1.6, diffusion_d0=0.002), 0.1).samples
        assert np.sum(lossy**2) < np.sum(lossless**2)

    def test_closed_tube_conserves_energy(self, uniform_tube):
        simulator = TubeSimulator(uniform_tube, replace(LOSSLESS, fs=8000), lips="closed")
        x = np.linspace(0.0, 1.0, simulator.n + 1)
        simulator.state.p = 1e-3 * np.exp(-((x - 0.3) ** 2) / 0.01)
        start = simulator.energy()
        for _ in range(8000):
            simulator.advance(0.0)
        assert simulator.energy() == pytest.approx(start, rel=1e-3)
        assert start > 0.0

    def test_flow_output_is_lip_flow(self, uniform_tube):
        flow = simulate(uniform_tube, click_train(44100, 0.02), replace(LOSSLESS, output="flow"), 0.02)
        derivative = simulate(uniform_tube, click_train(44100, 0.02), LOSSLESS, 0.02)
        np.testing.assert_allclose(np.diff(flow.samples, prepend=0.0) * 44100, derivative.samples)


@pytest.mark.slow
class TestSynthesizedFormants:
    def _click_formants(self, af, **changes):
        params = replace(RIGID, **changes)
        return formants_from_wave(simulate(af, click_train(params.fs, 0.5), params, 0.5))

    def test_impulse_response_formants_match_webster(self, uniform_tube):
        wave = simulate(uniform_tube, impulse(22050, 1e-4), RIGID, 0.5)
        w_r = webster_resonances(uniform_tube, WebsterParams(350.0, 0.0, 0.0), k=2).frequencies
        np.testing.assert_allclose(formants_from_wave(wave).frequencies, w_r[:2], rtol=0.03)

    def test_lossless_impulse_response_is_rejected(self, uniform_tube):
        wave = simulate(uniform_tube, impulse(22050, 1e-4), LOSSLESS, 0.5)
        with pytest.raises(FormantError):
            formants_from_wave(wave)

    def test_segment_count_barely_moves_formants(self, cosine_horn):
        coarse = self._click_formants(cosine_horn, n_segments=20)
        fine = self._click_formants(cosine_horn, n_segments=40)
        np.testing.assert_allclose(fine.frequencies, coarse.frequencies, rtol=0.03)

    def test_doubling_the_sample_rate(self, cosine_horn):
        base = self._click_formants(cosine_horn, n_segments=40)
        doubled = self._click_formants(cosine_horn, n_segments=40, fs=88200.0)
        np.testing.assert_allclose(doubled.frequencies, base.frequencies, rtol=0.01)


class TestWallShift:
    def test_shift_result_unpacks_f1_pair(self):
        rigid, vibrating = ShiftResult(500.0, 530.0, 1500.0, 1510.0)
        assert (rigid, vibrating) == (500.0, 530.0)
        assert ShiftResult(500.0, 530.0).relative_shift == pytest.approx(0.06)

    @pytest.mark.slow
    @pytest.mark.parametrize("geometry", ["uniform_tube", "cosine_horn"])
    def test_wall_motion_raises_f1(self, geometry, request):
        af = request.getfixturevalue(geometry)
        rigid, vibrating = formant_shift_experiment(af, TubeParams(), duration=0.3)
        assert rigid < vibrating

    @pytest.mark.slow
    def test_stiff_walls_act_rigid(self, uniform_tube):
        stiff = TubeParams(walls=WallModel(stiffness=1e12))
        rigid, vibrating = formant_shift_experiment(uniform_tube, stiff, duration=0.3)
        assert abs(vibrating - rigid) < 0.01 * rigid
