import numpy as np
import pytest

from vocalis.common.errors import ValidationError
from vocalis.features.glottis.models import GlottalState, TwoMassParams
from vocalis.features.glottis.twomass import TwoMassGlottis, free_flow, glottal_flow, step

FS = 16000


def _f0(flow: np.ndarray, fs: float) -> float:
    x = flow - flow.mean()
    ac = np.correlate(x, x, mode="full")[x.size - 1 :]
    low, high = int(fs / 400), int(fs / 50)
    return fs / (low + int(np.argmax(ac[low:high])))


def test_bernoulli_flow():
    assert glottal_flow(1e-5, 2e-5, 800.0, 0.0, 1.2) == pytest.approx(1e-5 * np.sqrt(2 * 800.0 / 1.2))
    assert glottal_flow(-1e-6, 2e-5, 800.0, 0.0, 1.2) == 0.0
    assert glottal_flow(1e-5, 2e-5, 800.0, 900.0, 1.2) == 0.0


def test_viscous_flow_balances_the_pressure_drop():
    u = glottal_flow(1e-5, 2e-5, 800.0, 0.0, 1.2, resistance=1e6)
    assert 1e6 * u + 0.6 * (u / 1e-5) ** 2 == pytest.approx(800.0)
    assert u < glottal_flow(1e-5, 2e-5, 800.0, 0.0, 1.2)


def test_poiseuille_resistance_of_a_slit():
    params = TwoMassParams()
    expected = 12 * 1.8e-5 * 0.014**2 * 0.0025 / 1e-15
    assert params.section_resistance(1e-5, params.thickness1) == pytest.approx(expected)
    assert params.viscous_resistance(0.0, 1e-5) > 1e20


def test_trajectories_are_bit_identical():
    params = TwoMassParams()
    np.testing.assert_array_equal(free_flow(params, FS, 0.1), free_flow(params, FS, 0.1))


def test_step_rejects_coarse_time_step():
    params = TwoMassParams()
    with pytest.raises(ValidationError):
        step(GlottalState.initial(params), 0.0, params, 1.0 / 4000)


def test_negative_mass_is_rejected():
    with pytest.raises(ValidationError, match="m1"):
        TwoMassParams(m1=-1.0)


def test_no_pressure_no_flow():
    flow = free_flow(TwoMassParams(p_sub=0.0), FS, 0.2)
    assert np.all(flow[int(0.05 * FS) :] == 0.0)


def test_no_pressure_decays_to_rest():
    params = TwoMassParams(p_sub=0.0)
    source = TwoMassGlottis(params, FS)
    for _ in range(int(0.5 * FS)):
        source.next(0.0)
    assert abs(source.state.x1) < 0.01 * params.initial_displacement


@pytest.mark.slow
def test_lung_pressure_sustains_voicing():
    flow = free_flow(TwoMassParams(p_sub=800.0), FS, 1.0)
    tail = flow[FS // 2 :]
    assert tail.std() > 1e-6
    assert 80.0 <= _f0(tail, FS) <= 200.0
    assert np.all(flow >= 0.0)


@pytest.mark.slow
def test_low_pressure_stays_below_the_onset_threshold():
    window = int(0.2 * FS)
    weak = free_flow(TwoMassParams(p_sub=50.0), FS, 1.0)[-window:]
    strong = free_flow(TwoMassParams(p_sub=800.0), FS, 1.0)[-window:]
    assert np.sqrt(np.mean(weak**2)) < 0.01 * np.sqrt(np.mean(strong**2))
