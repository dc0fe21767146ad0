"""Nonempty closed convex sets that can be projected onto.

Every variant is a frozen dataclass with an ``ambient_dim``. Open or otherwise
non-closed sets cannot be expressed: a nearest point need not exist for them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .cone import PolyhedralCone, is_subspace
from .linalg import DimensionMismatch, Subspace, as_matrix, as_vector


def _frozen(a: np.ndarray) -> np.ndarray:
    a = a + 0.0
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Cone:
    cone: PolyhedralCone

    @property
    def ambient_dim(self) -> int:
        return self.cone.ambient_dim


@dataclass(frozen=True, eq=False)
class Plane:
    """Affine plane ``point + directions``."""

    point: np.ndarray
    directions: Subspace

    def __post_init__(self):
        p = as_vector(self.point)
        if p.size != self.directions.ambient_dim:
            raise DimensionMismatch("plane point and directions differ in dimension")
        object.__setattr__(self, "point", _frozen(p))

    @property
    def ambient_dim(self) -> int:
        return self.point.size


@dataclass(frozen=True, eq=False)
class Halfspace:
    """Closed halfspace ``{x : x·normal <= offset}``."""

    normal: np.ndarray
    offset: float = 0.0

    def __post_init__(self):
        n = as_vector(self.normal)
        if np.linalg.norm(n) == 0.0:
            raise ValueError("halfspace normal must be nonzero")
        object.__setattr__(self, "normal", _frozen(n))
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def ambient_dim(self) -> int:
        return self.normal.size


@dataclass(frozen=True, eq=False)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _frozen(as_vector(self.center)))
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise ValueError("ball radius must be positive")
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def ambient_dim(self) -> int:
        return self.center.size


@dataclass(frozen=True, eq=False)
class Polytope:
    """Convex hull of finitely many ``vertices`` (rows)."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.atleast_2d(np.array(self.vertices, dtype=float))
        if v.shape[0] < 1 or v.size == 0:
            raise ValueError("polytope needs at least one vertex")
        v = as_matrix(v, v.shape[1])
        object.__setattr__(self, "vertices", _frozen(v))

    @property
    def ambient_dim(self) -> int:
        return self.vertices.shape[1]


@dataclass(frozen=True, eq=False)
class Segment:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a, b = as_vector(self.a), as_vector(self.b)
        if a.size != b.size:
            raise DimensionMismatch("segment endpoints differ in dimension")
        if np.array_equal(a, b):
            raise ValueError("segment endpoints must differ")
        object.__setattr__(self, "a", _frozen(a))
        object.__setattr__(self, "b", _frozen(b))

    @property
    def ambient_dim(self) -> int:
        return self.a.size


@dataclass(frozen=True, eq=False)
class ShiftedCone:
    """Translate ``translation + cone``."""

    cone: PolyhedralCone
    translation: np.ndarray = field(default=None)

    def __post_init__(self):
        t = as_vector(self.translation, self.cone.ambient_dim)
        object.__setattr__(self, "translation", _frozen(t))

    @property
    def ambient_dim(self) -> int:
        return self.cone.ambient_dim


ConvexSet = Union[Cone, Plane, Halfspace, Ball, Polytope, Segment, ShiftedCone]
CONVEX_SET_TYPES = (Cone, Plane, Halfspace, Ball, Polytope, Segment, ShiftedCone)


def generators(s) -> np.ndarray:
    """Finitely many points that characterize ``s`` (used for sampling and checks).

    Cones give rays and ``±`` lineality vectors; planes give the base point and
    ``point ± direction``; bounded sets give vertices, endpoints or axis points.
    """
    n = s.ambient_dim
    if isinstance(s, Cone):
        return s.cone.generators()
    if isinstance(s, ShiftedCone):
        return np.vstack([s.translation[None, :], s.translation + s.cone.generators()])
    if isinstance(s, Plane):
        d = s.directions.basis
        return np.vstack([s.point[None, :], s.point + d, s.point - d])
    if isinstance(s, Halfspace):
        e = s.normal / np.linalg.norm(s.normal)
        base = (s.offset / np.linalg.norm(s.normal)) * e
        return np.vstack([base[None, :], base - e])
    if isinstance(s, Ball):
        return np.vstack([s.center + s.radius * np.eye(n), s.center - s.radius * np.eye(n)])
    if isinstance(s, Polytope):
        return np.array(s.vertices)
    if isinstance(s, Segment):
        return np.vstack([s.a, s.b])
    if hasattr(s, "generators"):
        return np.asarray(s.generators())
    raise TypeError(f"no generators for {type(s).__name__}")


def as_plane(s):
    """``(point, directions)`` when ``s`` is an affine plane, else ``None``."""
    if isinstance(s, Plane):
        return s.point, s.directions
    if isinstance(s, Cone) and is_subspace(s.cone):
        return np.zeros(s.ambient_dim), s.cone.lineality
    if isinstance(s, ShiftedCone) and is_subspace(s.cone):
        return s.translation, s.cone.lineality
    if isinstance(s, Polytope) and np.allclose(s.vertices, s.vertices[0], atol=0.0):
        return s.vertices[0], Subspace.trivial(s.ambient_dim)
    return None


def as_cone(s):
    """The :class:`PolyhedralCone` behind ``s`` when ``s`` is a cone, else ``None``."""
    if isinstance(s, Cone):
        return s.cone
    if isinstance(s, ShiftedCone) and np.all(s.translation == 0.0):
        return s.cone
    return None
