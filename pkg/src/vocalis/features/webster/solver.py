"""
ABOUTME: Webster horn-equation resonances (W_R) and their centerline-length scaling (S_R).
ABOUTME: Also hosts a lossless two-port chain scan used as an independent resonance oracle.
"""

from typing import List, Tuple

import numpy as np
import scipy.sparse as sps
from loguru import logger
from scipy.optimize import brentq

from vocalis.common.errors import ScalingError
from vocalis.features.geometry.models import AreaFunction
from vocalis.features.helmholtz.models import EigenSettings, Method, Mode, ResonanceSet
from vocalis.features.helmholtz.solver import solve_resonances
from vocalis.features.webster.models import WebsterParams
from vocalis.numlin import scatter_local

SCALE_BRACKET = (0.5, 2.0)

_LINE_MASS = np.array([[2.0, 1.0], [1.0, 2.0]]) / 6.0
_LINE_STIFFNESS = np.array([[1.0, -1.0], [-1.0, 1.0]])


def assemble(af: AreaFunction, params: WebsterParams, min_elements: int = 200):
    """P1 matrices on [0, L] with the lip node eliminated.

    The weak form multiplies the horn equation by A and integrates by parts: mass
    weight A/Sigma^2, damping weight c^2 2 pi alpha W, stiffness c^2 A. The glottis
    Robin condition adds beta c A(0) to the damping at s=0.
    """
    n_el = max(min_elements, len(af) - 1)
    h = af.length / n_el
    cells = np.column_stack([np.arange(n_el), np.arange(1, n_el + 1)])
    mid = af.sample_at((np.arange(n_el) + 0.5) * h)
    n = n_el + 1

    mass = scatter_local(cells, (mid["area"] / mid["sigma"] ** 2 * h)[:, None, None] * _LINE_MASS, n)
    damping = scatter_local(
        cells, (params.c**2 * 2.0 * np.pi * params.alpha * mid["circumference"] * h)[:, None, None] * _LINE_MASS, n
    )
    stiffness = scatter_local(cells, (params.c**2 * mid["area"] / h)[:, None, None] * _LINE_STIFFNESS, n)
    glottis = sps.csr_matrix(([params.glottis_admittance * params.c * af.area[0]], ([0], [0])), shape=(n, n))
    damping = damping + glottis

    free = np.arange(n_el)
    return (
        mass[free][:, free].tocsr(),
        damping[free][:, free].tocsr(),
        stiffness[free][:, free].tocsr(),
        np.linspace(0.0, af.length, n),
    )


def webster_resonances(af: AreaFunction, params: WebsterParams, k: int = 4, settings: EigenSettings = None) -> ResonanceSet:
    """Lowest ``k`` Webster resonances of the area function (method W_R)."""
    settings = settings or EigenSettings(k=k)
    mass, damping, stiffness, nodes = assemble(af, params, settings.min_elements)
    pairs = solve_resonances(mass, damping, stiffness, k, settings)
    modes = []
    for pair in pairs:
        shape = np.zeros(nodes.size, dtype=np.complex128)
        shape[:-1] = pair.vector
        modes.append(Mode(pair.lam, shape))
    return ResonanceSet(
        Method.W_R,
        tuple(modes),
        {"c": params.c, "alpha": params.alpha, "glottis_admittance": params.glottis_admittance, "length": af.length},
    )


def scale_to_helmholtz(
    af: AreaFunction, href: ResonanceSet, params: WebsterParams, settings: EigenSettings = None
) -> Tuple[float, ResonanceSet]:
    """Stretch the centerline until the lowest Webster resonances match ``href`` on average.

    Returns the length factor and the resonances of the stretched geometry labelled S_R.
    """
    settings = settings or EigenSettings()
    n_modes = settings.scaling_modes
    if len(href) < n_modes:
        raise ScalingError(f"Length scaling needs {n_modes} reference resonances, got {len(href)}")
    target = href.frequencies[:n_modes]

    def mismatch(gamma: float) -> float:
        rs = webster_resonances(af.scaled(gamma), params, n_modes, settings)
        if len(rs) < n_modes:
            raise ScalingError(f"Only {len(rs)} Webster resonances found at scale {gamma:.6f}")
        return float(np.mean((rs.frequencies - target) / target))

    low, high = SCALE_BRACKET
    g_low, g_high = mismatch(low), mismatch(high)
    if g_low == 0.0:
        gamma = low
    elif g_high == 0.0:
        gamma = high
    elif np.sign(g_low) == np.sign(g_high):
        raise ScalingError(
            f"No length scale in [{low}, {high}] matches the reference (mismatch {g_low:+.4f} .. {g_high:+.4f})"
        )
    else:
        gamma = brentq(mismatch, low, high, xtol=1e-10)

    scaled = webster_resonances(af.scaled(gamma), params, settings.k, settings)
    logger.info(f"S_R: length scale {gamma:.6f}")
    return gamma, scaled.relabel(Method.S_R, gamma=gamma)


def _chain_admittance_term(af: AreaFunction, c: float, freqs: np.ndarray, n_sections: int) -> np.ndarray:
    """Glottis-end volume velocity for unit lip flow with the lips pressure-released."""
    edges = np.linspace(0.0, af.length, n_sections + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    sampled = af.sample_at(centers)
    dl = af.length / n_sections

    # state (p, U) is propagated from the lips back to the glottis
    p = np.zeros_like(freqs, dtype=np.complex128)
    u = np.ones_like(freqs, dtype=np.complex128)
    for area, sigma in zip(sampled["area"][::-1], sampled["sigma"][::-1]):
        kl = 2.0 * np.pi * freqs * dl / (c * sigma)
        z = 1.0 / area
        cos, sin = np.cos(kl), np.sin(kl)
        p, u = cos * p + 1j * z * sin * u, 1j * sin / z * p + cos * u
    return u.real


def transfer_matrix_resonances(
    af: AreaFunction, c: float = 350.0, f_max: float = 5000.0, df: float = 1.0, n_sections: int = 1000
) -> List[float]:
    """Resonances of the lossless rigid-glottis tract from a two-port chain scan."""
    freqs = np.arange(df, f_max + df, df)
    values = _chain_admittance_term(af, c, freqs, n_sections)
    roots = []
    for i in np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0):
        roots.append(
            brentq(lambda f: float(_chain_admittance_term(af, c, np.array([f]), n_sections)[0]), freqs[i], freqs[i + 1])
        )
    return roots
