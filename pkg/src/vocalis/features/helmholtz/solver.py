"""
ABOUTME: P1 finite element assembly and resonance solve of the 3D Helmholtz problem.
ABOUTME: Produces lam^2 M + lam C + K with the mouth opening eliminated and reports H_R.
"""

from typing import Iterable, List, Tuple

import numpy as np
import scipy.sparse as sps
from loguru import logger

from vocalis.common.errors import MeshError, SolverError
from vocalis.features.geometry.models import BoundaryTag, TetMesh, signed_volumes, triangle_areas
from vocalis.features.helmholtz.models import EigenSettings, HelmholtzParams, Method, Mode, ResonanceSet
from vocalis.numlin import EigenPair, qep_solve, scatter_local


def tet_stiffness(vertices: np.ndarray, tets: np.ndarray) -> np.ndarray:
    """Local integrals of grad(phi_i) . grad(phi_j) for every tet, shape (m, 4, 4)."""
    v0 = vertices[tets[:, 0]]
    edges = np.stack([vertices[tets[:, i]] - v0 for i in (1, 2, 3)], axis=1)
    volume = np.abs(np.linalg.det(edges)) / 6.0
    # barycentric gradients are the columns of the inverse edge matrix
    grads = np.empty((tets.shape[0], 4, 3))
    grads[:, 1:, :] = np.transpose(np.linalg.inv(edges), (0, 2, 1))
    grads[:, 0, :] = -grads[:, 1:, :].sum(axis=1)
    return volume[:, None, None] * np.einsum("mik,mjk->mij", grads, grads)


def tet_mass(vertices: np.ndarray, tets: np.ndarray) -> np.ndarray:
    volume = np.abs(signed_volumes(vertices, tets))
    pattern = (np.ones((4, 4)) + np.eye(4)) / 20.0
    return volume[:, None, None] * pattern


def tri_mass(vertices: np.ndarray, tris: np.ndarray) -> np.ndarray:
    area = triangle_areas(vertices, tris)
    pattern = (np.ones((3, 3)) + np.eye(3)) / 12.0
    return area[:, None, None] * pattern


def _require_tags(mesh: TetMesh) -> None:
    for tag in (BoundaryTag.MOUTH, BoundaryTag.GLOTTIS):
        if not np.any(mesh.boundary_tags == int(tag)):
            raise MeshError(f"Mesh has no {tag.name.lower()} boundary (tag {int(tag)})")


def assemble_full(mesh: TetMesh, params: HelmholtzParams) -> Tuple[sps.csr_matrix, sps.csr_matrix, sps.csr_matrix]:
    """M, C and K over all vertices, before the mouth opening is eliminated."""
    _require_tags(mesh)
    n = mesh.n_vertices
    if np.any(np.abs(signed_volumes(mesh.vertices, mesh.tets)) == 0):
        raise MeshError("Zero-volume element")

    mass = scatter_local(mesh.tets, tet_mass(mesh.vertices, mesh.tets), n)
    stiffness = params.c**2 * scatter_local(mesh.tets, tet_stiffness(mesh.vertices, mesh.tets), n)

    wall = mesh.tris_with_tag(BoundaryTag.WALL)
    glottis = mesh.tris_with_tag(BoundaryTag.GLOTTIS)
    damping = sps.csr_matrix((n, n))
    if params.alpha > 0 and wall.size:
        damping = damping + params.c**2 * params.alpha * scatter_local(wall, tri_mass(mesh.vertices, wall), n)
    if params.glottis_admittance > 0:
        damping = damping + params.c * params.glottis_admittance * scatter_local(glottis, tri_mass(mesh.vertices, glottis), n)
    return mass, damping.tocsr(), stiffness


def assemble(mesh: TetMesh, params: HelmholtzParams):
    """Galerkin matrices on the free (non-mouth) vertices and the free-vertex index map."""
    mass, damping, stiffness = assemble_full(mesh, params)
    fixed = np.zeros(mesh.n_vertices, dtype=bool)
    fixed[mesh.tag_vertices(BoundaryTag.MOUTH)] = True
    free = np.flatnonzero(~fixed)
    if free.size == 0:
        raise MeshError("Every vertex lies on the mouth opening")

    def restrict(matrix):
        return matrix[free][:, free].tocsr()

    logger.debug(f"Assembled Helmholtz system: {free.size} free of {mesh.n_vertices} vertices")
    return restrict(mass), restrict(damping), restrict(stiffness), free


def retain_modes(pairs: Iterable[EigenPair], spurious_hz: float) -> List[EigenPair]:
    """Keep one eigenvalue of each conjugate pair, above the spurious-mode floor, sorted by frequency."""
    kept = [p for p in pairs if p.frequency >= spurious_hz]
    return sorted(kept, key=lambda p: p.frequency)


def solve_resonances(mass, damping, stiffness, k: int, settings: EigenSettings) -> List[EigenPair]:
    """The ``k`` lowest retained modes, widening the search until enough are found."""
    size = 2 * mass.shape[0]
    request = min(size, 2 * k + 4)
    while True:
        pairs = qep_solve(mass, damping, stiffness, request, settings.shift)
        kept = retain_modes(pairs, settings.spurious_hz)
        if len(kept) >= k or request >= size:
            break
        request = min(size, 2 * request)
    if len(kept) < k:
        logger.warning(f"Only {len(kept)} of {k} requested resonances retained")
    return kept[:k]


def resonances(mesh: TetMesh, params: HelmholtzParams, k: int = 4, settings: EigenSettings = None) -> ResonanceSet:
    """Lowest ``k`` Helmholtz resonances of the mesh (method H_R)."""
    settings = settings or EigenSettings(k=k)
    mass, damping, stiffness, free = assemble(mesh, params)
    pairs = solve_resonances(mass, damping, stiffness, k, settings)

    modes = []
    for pair in pairs:
        shape = np.zeros(mesh.n_vertices, dtype=np.complex128)
        shape[free] = pair.vector
        modes.append(Mode(pair.lam, shape))
    logger.info(f"H_R: {', '.join(f'{m.frequency:.1f}' for m in modes)} Hz")
    return ResonanceSet(
        Method.H_R,
        tuple(modes),
        {"c": params.c, "alpha": params.alpha, "glottis_admittance": params.glottis_admittance, "tets": mesh.n_tets},
    )


def first_two(rs: ResonanceSet) -> Tuple[float, float]:
    """The two lowest resonance frequencies (F1, F2)."""
    if len(rs) < 2:
        raise SolverError(f"{rs.method.value}: need two resonances, only {len(rs)} retained")
    return float(rs.modes[0].frequency), float(rs.modes[1].frequency)
