"""
Analytic test geometries: uniform and cosine-horn tubes, extruded cylinder and box meshes.

Meshes are built by extruding a triangulated cross-section along +x and splitting each
prism into three tetrahedra. The split of every quad side is decided by global vertex
order alone, so neighbouring prisms always agree and the mesh is conforming.
"""

import math
from typing import Tuple

import numpy as np
from loguru import logger
from scipy.spatial import Delaunay

from vocalis.common.errors import ValidationError
from vocalis.features.geometry.models import AreaFunction, BoundaryTag, TetMesh

TUBE_SHAPES = ("cylinder", "cosine-horn")


def make_tube(shape: str, length: float, area0: float, n_segments: int) -> AreaFunction:
    """Uniformly sampled analytic area function with ``n_segments + 1`` samples."""
    if shape not in TUBE_SHAPES:
        raise ValidationError(f"Unknown tube shape '{shape}', expected one of {', '.join(TUBE_SHAPES)}")
    if length <= 0 or area0 <= 0:
        raise ValidationError(f"Tube dimensions must be positive (L={length}, A0={area0})")
    if n_segments < 2:
        raise ValidationError(f"Tube needs at least 2 segments, got {n_segments}")

    s = np.linspace(0.0, length, n_segments + 1)
    if shape == "cylinder":
        area = np.full_like(s, area0)
    else:
        area = area0 * (1.0 + 0.5 * np.cos(2.0 * np.pi * s / length))
    return AreaFunction.from_samples(s, area)


def _boundary_edges(tris: np.ndarray) -> np.ndarray:
    """Edges used by exactly one triangle of a planar triangulation."""
    edges = np.sort(np.concatenate([tris[:, [0, 1]], tris[:, [1, 2]], tris[:, [0, 2]]]), axis=1)
    unique, counts = np.unique(edges, axis=0, return_counts=True)
    return unique[counts == 1]


def _extrude(points: np.ndarray, tris: np.ndarray, length: float, n_layers: int) -> TetMesh:
    """Extrude a 2D section (y, z) along x from 0 to ``length``.

    The section at x=0 becomes the glottis plane, the one at x=length the mouth
    opening, and the swept section outline the wall.
    """
    n2 = points.shape[0]
    tris = np.sort(tris, axis=1)
    xs = np.linspace(0.0, length, n_layers + 1)

    vertices = np.column_stack(
        [np.repeat(xs, n2), np.tile(points[:, 0], n_layers + 1), np.tile(points[:, 1], n_layers + 1)]
    )

    layers = np.arange(n_layers)[:, None] * n2
    a = (tris[:, 0][None, :] + layers).ravel()
    b = (tris[:, 1][None, :] + layers).ravel()
    c = (tris[:, 2][None, :] + layers).ravel()
    a2, b2, c2 = a + n2, b + n2, c + n2
    # with a < b < c every quad side is cut from its lower-index bottom vertex to its higher-index top vertex
    tets = np.concatenate(
        [np.column_stack([a, b, c, c2]), np.column_stack([a, b, b2, c2]), np.column_stack([a, a2, b2, c2])]
    )

    edges = _boundary_edges(tris)
    e0 = (edges[:, 0][None, :] + layers).ravel()
    e1 = (edges[:, 1][None, :] + layers).ravel()
    walls = np.concatenate([np.column_stack([e0, e1, e1 + n2]), np.column_stack([e0, e0 + n2, e1 + n2])])
    glottis = tris
    mouth = tris + n_layers * n2

    boundary = np.concatenate([glottis, walls, mouth])
    tags = np.concatenate(
        [
            np.full(glottis.shape[0], BoundaryTag.GLOTTIS),
            np.full(walls.shape[0], BoundaryTag.WALL),
            np.full(mouth.shape[0], BoundaryTag.MOUTH),
        ]
    )
    return TetMesh(vertices, tets, boundary, tags)


def _disk_section(radius: float, target_h: float) -> Tuple[np.ndarray, np.ndarray]:
    n_outer = math.ceil(2.0 * math.pi * radius / target_h)
    if n_outer < 3:
        raise ValidationError(
            f"Cross-section resolution too coarse: {n_outer} angular subdivisions for r={radius}, h={target_h}"
        )
    n_rings = max(1, math.ceil(radius / target_h))
    points = [np.zeros((1, 2))]
    for ring in range(1, n_rings + 1):
        r = radius * ring / n_rings
        count = n_outer if ring == n_rings else max(3, math.ceil(2.0 * math.pi * r / target_h))
        theta = 2.0 * np.pi * (np.arange(count) + 0.5 * (ring % 2)) / count
        points.append(np.column_stack([r * np.cos(theta), r * np.sin(theta)]))
    points = np.concatenate(points)
    return points, Delaunay(points).simplices


def _rectangle_section(width: float, height: float, target_h: float) -> Tuple[np.ndarray, np.ndarray]:
    ny = max(1, math.ceil(width / target_h))
    nz = max(1, math.ceil(height / target_h))
    yy, zz = np.meshgrid(np.linspace(-width / 2, width / 2, ny + 1), np.linspace(-height / 2, height / 2, nz + 1))
    points = np.column_stack([yy.ravel(), zz.ravel()])
    index = np.arange(points.shape[0]).reshape(nz + 1, ny + 1)
    p00, p10 = index[:-1, :-1].ravel(), index[:-1, 1:].ravel()
    p01, p11 = index[1:, :-1].ravel(), index[1:, 1:].ravel()
    tris = np.concatenate([np.column_stack([p00, p10, p11]), np.column_stack([p00, p11, p01])])
    return points, tris


def _layers(length: float, target_h: float) -> int:
    if target_h > length:
        raise ValidationError(f"Target element size {target_h} exceeds length {length}")
    return max(1, math.ceil(length / target_h))


def make_cylinder_mesh(length: float, radius: float, target_h: float) -> TetMesh:
    """Tetrahedralized cylinder along +x with the glottis disk at x=0 and the mouth at x=length."""
    if length <= 0 or radius <= 0 or target_h <= 0:
        raise ValidationError(f"Cylinder dimensions must be positive (L={length}, r={radius}, h={target_h})")
    n_layers = _layers(length, target_h)
    points, tris = _disk_section(radius, target_h)
    mesh = _extrude(points, tris, length, n_layers)
    logger.debug(f"Cylinder mesh: {mesh.n_vertices} vertices, {mesh.n_tets} tets")
    return mesh


def make_box_mesh(length: float, width: float, height: float, target_h: float) -> TetMesh:
    """Tetrahedralized rectangular duct along +x, tagged like the cylinder."""
    if min(length, width, height, target_h) <= 0:
        raise ValidationError("Box dimensions must be positive")
    n_layers = _layers(length, target_h)
    points, tris = _rectangle_section(width, height, target_h)
    mesh = _extrude(points, tris, length, n_layers)
    logger.debug(f"Box mesh: {mesh.n_vertices} vertices, {mesh.n_tets} tets")
    return mesh
