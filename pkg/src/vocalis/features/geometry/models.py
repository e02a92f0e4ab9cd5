"""
Models for tract geometry.

Two representations are used by the solvers: a 1D area function sampled along the
centerline and a tetrahedral volume mesh with tagged boundary triangles.
"""

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, Optional

import numpy as np
from loguru import logger

from vocalis.common.errors import MeshError, ValidationError


class BoundaryTag(IntEnum):
    """Boundary classes of a tract mesh."""

    MOUTH = 1  # Dirichlet opening
    WALL = 2  # dissipative tissue interface
    GLOTTIS = 3  # virtual plane above the glottis


def circular_circumference(area: np.ndarray) -> np.ndarray:
    """Circumference of a circle with the given area."""
    return 2.0 * np.sqrt(np.pi * np.asarray(area, dtype=float))


@dataclass(frozen=True, eq=False)
class AreaFunction:
    """Area function A(s) with circumference W(s) and curvature correction Sigma(s)."""

    s: np.ndarray
    area: np.ndarray
    circumference: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        for name in ("s", "area", "circumference", "sigma"):
            values = np.array(getattr(self, name), dtype=float)
            values.setflags(write=False)
            object.__setattr__(self, name, values)

        n = self.s.size
        if n < 2:
            raise ValidationError("Area function needs at least 2 samples")
        if any(arr.shape != (n,) for arr in (self.area, self.circumference, self.sigma)):
            raise ValidationError("Area function columns must have equal length")
        if not all(np.all(np.isfinite(arr)) for arr in (self.s, self.area, self.circumference, self.sigma)):
            raise ValidationError("Area function contains non-finite values")
        if self.s[0] != 0.0:
            raise ValidationError(f"Area function must start at s=0, got {self.s[0]}")
        bad = np.flatnonzero(np.diff(self.s) <= 0)
        if bad.size:
            raise ValidationError(f"Arc length not strictly increasing at sample {bad[0] + 1}")
        for name, arr in (("A", self.area), ("W", self.circumference), ("Sigma", self.sigma)):
            bad = np.flatnonzero(arr <= 0)
            if bad.size:
                raise ValidationError(f"{name} must be positive, sample {bad[0]} has {arr[bad[0]]}")

    @classmethod
    def from_samples(cls, s, area, circumference=None, sigma=None) -> "AreaFunction":
        """Build an area function, defaulting W to a circular section and Sigma to 1."""
        area = np.asarray(area, dtype=float)
        if circumference is None:
            circumference = circular_circumference(np.maximum(area, 0.0))
        if sigma is None:
            sigma = np.ones_like(area)
        return cls(np.asarray(s, dtype=float), area, np.asarray(circumference, dtype=float), np.asarray(sigma, dtype=float))

    @property
    def length(self) -> float:
        return float(self.s[-1])

    def __len__(self) -> int:
        return int(self.s.size)

    def sample_at(self, s_points: np.ndarray) -> Dict[str, np.ndarray]:
        """Interpolated A, W and Sigma at arbitrary arc lengths."""
        return {
            "area": np.interp(s_points, self.s, self.area),
            "circumference": np.interp(s_points, self.s, self.circumference),
            "sigma": np.interp(s_points, self.s, self.sigma),
        }

    def scaled(self, gamma: float) -> "AreaFunction":
        """Stretch the centerline by ``gamma`` keeping cross-sections unchanged."""
        if gamma <= 0:
            raise ValidationError(f"Length scale must be positive, got {gamma}")
        return AreaFunction(self.s * gamma, self.area, self.circumference, self.sigma)

    def with_sigma(self, sigma: float) -> "AreaFunction":
        return AreaFunction(self.s, self.area, self.circumference, np.full_like(self.s, sigma))

    def equals(self, other: "AreaFunction") -> bool:
        return all(
            np.array_equal(a, b)
            for a, b in (
                (self.s, other.s),
                (self.area, other.area),
                (self.circumference, other.circumference),
                (self.sigma, other.sigma),
            )
        )


def signed_volumes(vertices: np.ndarray, tets: np.ndarray) -> np.ndarray:
    """Signed volume of every tetrahedron."""
    v0 = vertices[tets[:, 0]]
    edges = np.stack([vertices[tets[:, i]] - v0 for i in (1, 2, 3)], axis=1)
    return np.linalg.det(edges) / 6.0


def triangle_areas(vertices: np.ndarray, tris: np.ndarray) -> np.ndarray:
    a = vertices[tris[:, 1]] - vertices[tris[:, 0]]
    b = vertices[tris[:, 2]] - vertices[tris[:, 0]]
    return 0.5 * np.linalg.norm(np.cross(a, b), axis=1)


def _tet_faces(tets: np.ndarray) -> np.ndarray:
    """All four faces of every tet with vertex indices sorted, shape (4M, 3)."""
    faces = np.concatenate([tets[:, [1, 2, 3]], tets[:, [0, 2, 3]], tets[:, [0, 1, 3]], tets[:, [0, 1, 2]]])
    return np.sort(faces, axis=1)


@dataclass(frozen=True, eq=False)
class TetMesh:
    """Tetrahedral mesh of the tract air volume with tagged boundary triangles.

    Construction validates the mesh: tets with negative volume are re-ordered,
    degenerate tets are rejected and the boundary must be exactly the set of
    faces belonging to a single tet, each with a known tag.
    """

    vertices: np.ndarray
    tets: np.ndarray
    boundary_tris: np.ndarray
    boundary_tags: np.ndarray
    repaired: int = field(default=0, compare=False)

    def __post_init__(self):
        vertices = np.array(self.vertices, dtype=float).reshape(-1, 3)
        tets = np.array(self.tets, dtype=np.int64).reshape(-1, 4)
        tris = np.array(self.boundary_tris, dtype=np.int64).reshape(-1, 3)
        tags = np.array(self.boundary_tags, dtype=np.int64).reshape(-1)

        if tets.shape[0] == 0:
            raise MeshError("Mesh has no tetrahedra")
        if tags.shape[0] != tris.shape[0]:
            raise MeshError("Every boundary triangle needs exactly one tag")
        n = vertices.shape[0]
        for name, idx in (("tet", tets), ("boundary", tris)):
            if idx.size and (idx.min() < 0 or idx.max() >= n):
                raise MeshError(f"{name} index out of range [0, {n})")
        if np.any(np.sort(tets, axis=1)[:, 1:] == np.sort(tets, axis=1)[:, :-1]):
            raise MeshError("Tetrahedron with repeated vertex")
        unknown = sorted(set(tags.tolist()) - {t.value for t in BoundaryTag})
        if unknown:
            raise MeshError(f"Unknown boundary tag(s): {unknown}")

        volumes = signed_volumes(vertices, tets)
        scale = np.max(np.abs(volumes))
        degenerate = np.flatnonzero(np.abs(volumes) <= 1e-14 * scale)
        if degenerate.size:
            raise MeshError(f"Zero-volume tetrahedron {degenerate[0]}")
        flipped = volumes < 0
        repaired = int(flipped.sum())
        if repaired:
            tets = tets.copy()
            tets[flipped] = tets[flipped][:, [0, 1, 3, 2]]
            logger.warning(f"Re-oriented {repaired} tetrahedra with negative volume")

        self._check_incidence(tets, tris)

        for name, arr in (("vertices", vertices), ("tets", tets), ("boundary_tris", tris), ("boundary_tags", tags)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "repaired", repaired)

    @staticmethod
    def _check_incidence(tets: np.ndarray, tris: np.ndarray) -> None:
        faces, counts = np.unique(_tet_faces(tets), axis=0, return_counts=True)
        if np.any(counts > 2):
            bad = faces[np.argmax(counts > 2)]
            raise MeshError(f"Face {tuple(bad.tolist())} shared by more than two tetrahedra")

        incidence = {tuple(f): int(c) for f, c in zip(faces.tolist(), counts.tolist())}
        listed = set()
        for tri in np.sort(tris, axis=1).tolist():
            key = tuple(tri)
            if key in listed:
                raise MeshError(f"Boundary triangle {key} listed twice")
            listed.add(key)
            count = incidence.get(key, 0)
            if count == 0:
                raise MeshError(f"Boundary triangle {key} is not a face of any tetrahedron")
            if count == 2:
                raise MeshError(f"Boundary triangle {key} is an interior face")

        untagged = [face for face, count in incidence.items() if count == 1 and face not in listed]
        if untagged:
            raise MeshError(f"{len(untagged)} untagged boundary face(s), first {untagged[0]}")

    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def n_tets(self) -> int:
        return int(self.tets.shape[0])

    def volume(self) -> float:
        return float(np.sum(signed_volumes(self.vertices, self.tets)))

    def tris_with_tag(self, tag: BoundaryTag) -> np.ndarray:
        return self.boundary_tris[self.boundary_tags == int(tag)]

    def tag_area(self, tag: BoundaryTag) -> float:
        return float(np.sum(triangle_areas(self.vertices, self.tris_with_tag(tag))))

    def tag_vertices(self, tag: BoundaryTag) -> np.ndarray:
        return np.unique(self.tris_with_tag(tag))

    def scaled(self, gamma: float) -> "TetMesh":
        return TetMesh(self.vertices * gamma, self.tets, self.boundary_tris, self.boundary_tags)

    def summary(self) -> Dict[str, Optional[float]]:
        info: Dict[str, Optional[float]] = {
            "vertices": self.n_vertices,
            "tets": self.n_tets,
            "volume": self.volume(),
        }
        for tag in BoundaryTag:
            info[f"{tag.name.lower()}_triangles"] = int(np.sum(self.boundary_tags == int(tag)))
            info[f"{tag.name.lower()}_area"] = self.tag_area(tag)
        return info
