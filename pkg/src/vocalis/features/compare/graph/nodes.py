"""
Node definitions for the comparison workflow.

Each node computes one method for the vowel in the state. A failing method adds a
failure message instead of a row; the other methods still run.
"""

from loguru import logger

from vocalis.common.errors import VocalisError
from vocalis.features.compare.models import FormantRow
from vocalis.features.formant.lpc import average_formants, formants_from_wave
from vocalis.features.glottis.twomass import TwoMassGlottis
from vocalis.features.helmholtz.models import Method
from vocalis.features.helmholtz.solver import first_two, resonances
from vocalis.features.synth.tube import simulate
from vocalis.features.webster.solver import scale_to_helmholtz, webster_resonances


def _row(state, method: Method, f1: float, f2: float):
    row = FormantRow(state.label, method, float(f1), float(f2))
    logger.info(f"{state.label} {method.value}: F1={row.f1:.1f} Hz F2={row.f2:.1f} Hz")
    return state.rows + [row]


def _failure(state, method: Method, error: Exception):
    message = f"{state.label} {method.value}: {error}"
    if isinstance(error, VocalisError):
        logger.warning(message)
    else:
        logger.opt(exception=error).warning(f"{message} ({type(error).__name__})")
    return state.failures + [message]


def webster_node(state):
    """W_R from the area function."""
    p = state.params
    try:
        rs = webster_resonances(state.area, p.webster, p.eigen.k, p.eigen)
        return {"rows": _row(state, Method.W_R, *first_two(rs))}
    except Exception as e:
        return {"failures": _failure(state, Method.W_R, e)}


def helmholtz_node(state):
    """H_R from the mesh; kept as the reference for length scaling."""
    p = state.params
    try:
        rs = resonances(state.mesh, p.helmholtz, p.eigen.k, p.eigen)
        return {"rows": _row(state, Method.H_R, *first_two(rs)), "reference": rs}
    except Exception as e:
        return {"failures": _failure(state, Method.H_R, e)}


def scaled_node(state):
    """S_R: Webster resonances with the centerline scaled to H_R."""
    p = state.params
    if state.reference is None:
        return {"failures": _failure(state, Method.S_R, VocalisError("no Helmholtz reference available"))}
    try:
        _, rs = scale_to_helmholtz(state.area, state.reference, p.webster, p.eigen)
        return {"rows": _row(state, Method.S_R, *first_two(rs))}
    except Exception as e:
        return {"failures": _failure(state, Method.S_R, e)}


def synth_node(state):
    """W_F: formants of the vowel synthesized with the two-mass source."""
    p = state.params
    try:
        source = TwoMassGlottis(p.glottis, p.tube.fs)
        wave = simulate(state.area, source, p.tube, p.duration)
        estimate = formants_from_wave(wave, 2, p.formant)
        return {"rows": _row(state, Method.W_F, estimate.f1, estimate.f2)}
    except Exception as e:
        return {"failures": _failure(state, Method.W_F, e)}


def audio_node(state):
    """A_F: formants averaged over the recordings."""
    p = state.params
    try:
        estimate = average_formants([formants_from_wave(w, 2, p.formant) for w in state.waves])
        return {"rows": _row(state, Method.A_F, estimate.f1, estimate.f2)}
    except Exception as e:
        return {"failures": _failure(state, Method.A_F, e)}
