"""Polyhedral closed convex cones held in both V- and H-representation.

A cone is stored as

* generators: unit ``rays`` plus an orthonormal ``lineality`` basis, so that
  ``C = Pos(rays) + Lin C``;
* constraints: unit ``facets`` (``x·n <= 0``) plus an orthonormal basis of
  ``equalities`` (``x·m = 0``).

Both sides are minimal: rays are the extreme rays of the pointed part
``C ∩ (Lin C)⊥`` and facets are the extreme rays of the polar. Because of
this, taking the polar is an exact swap of the two representations.
Conversion between them is a double-description method.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .linalg import (
    DimensionMismatch,
    Subspace,
    as_matrix,
    as_vector,
    null_space,
    orthogonal_complement,
    orthonormal_basis,
    project_subspace,
)

DD_TOL = 1e-9
STRICT_TOL = 1e-9


def _unit_rows(rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] == 0:
        return rows
    norms = np.linalg.norm(rows, axis=1)
    keep = norms > DD_TOL
    return rows[keep] / norms[keep, None]


def _lex_sorted(rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] <= 1:
        return rows
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def double_description(
    inequalities: np.ndarray, equalities: np.ndarray, dim: int
) -> tuple[np.ndarray, Subspace]:
    """Generators of ``{x : A x <= 0, E x = 0}``.

    Returns
    -------
    rays : ndarray, shape (k, dim)
        Unit extreme rays of the pointed part, orthogonal to the lineality space.
    lineality : Subspace
    """
    A = _lex_sorted(_unit_rows(np.asarray(inequalities, dtype=float).reshape(-1, dim)))
    lin = null_space(np.asarray(equalities, dtype=float).reshape(-1, dim), dim)
    L = [b for b in lin.basis]
    rays: list[np.ndarray] = []
    # zero sets: indices of processed inequalities tight at each ray
    zeros: list[frozenset] = []

    for k, a in enumerate(A):
        if L:
            Lm = np.vstack(L)
            comp = Lm.T @ (Lm @ a)
            if np.linalg.norm(comp) > DD_TOL:
                # a cuts the lineality space: one line becomes a ray
                lstar = comp / np.linalg.norm(comp)
                al = a @ lstar
                rays = [r - ((a @ r) / al) * lstar for r in rays]
                rays = [r / np.linalg.norm(r) for r in rays]
                zeros = [z | {k} for z in zeros]
                rest = orthonormal_basis(L, dim)
                # remove lstar from the lineality basis
                reduced = []
                for b in rest.basis:
                    w = b - (b @ lstar) * lstar
                    for c in reduced:
                        w = w - (w @ c) * c
                    if np.linalg.norm(w) > 1e-10:
                        reduced.append(w / np.linalg.norm(w))
                L = reduced
                # all previously processed constraints are orthogonal to lstar
                rays.append(-lstar)
                zeros.append(frozenset(range(k)))
                continue

        vals = [a @ r for r in rays]
        pos = [i for i, v in enumerate(vals) if v > DD_TOL]
        if not pos:
            zeros = [z | {k} if abs(v) <= DD_TOL else z for z, v in zip(zeros, vals)]
            continue
        neg = [i for i, v in enumerate(vals) if v < -DD_TOL]
        zer = [i for i, v in enumerate(vals) if abs(v) <= DD_TOL]
        new_rays = [rays[i] for i in neg] + [rays[i] for i in zer]
        new_zeros = [zeros[i] for i in neg] + [zeros[i] | {k} for i in zer]
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                adjacent = True
                for r in range(len(rays)):
                    if r != p and r != q and common <= zeros[r]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                v = vals[p] * rays[q] - vals[q] * rays[p]
                nv = np.linalg.norm(v)
                if nv <= DD_TOL:
                    continue
                new_rays.append(v / nv)
                new_zeros.append(common | {k})
        rays, zeros = new_rays, new_zeros

    R = np.vstack(rays) if rays else np.zeros((0, dim))
    Lsub = Subspace(dim, np.vstack(L)) if L else Subspace.trivial(dim)
    return _lex_sorted(R), Lsub


@dataclass(frozen=True, eq=False)
class PolyhedralCone:
    """Closed convex polyhedral cone in R^n with synced V- and H-representations.

    Build instances with :func:`positive_hull` or :meth:`from_constraints`;
    the raw constructor trusts its arguments.
    """

    ambient_dim: int
    rays: np.ndarray
    lineality: Subspace
    facets: np.ndarray
    equalities: Subspace
    rep_synced: bool = True

    def __post_init__(self):
        for name in ("rays", "facets"):
            arr = np.array(getattr(self, name), dtype=float).reshape(-1, self.ambient_dim) + 0.0
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_constraints(cls, inequalities=None, equalities=None, ambient_dim=None) -> "PolyhedralCone":
        """Cone ``{x : x·n <= 0 for n in inequalities, x·m = 0 for m in equalities}``."""
        if ambient_dim is None:
            first = list(inequalities or []) + list(equalities or [])
            if not first:
                raise ValueError("ambient_dim is required without constraints")
            ambient_dim = as_vector(first[0]).size
        A = as_matrix(inequalities, ambient_dim)
        E = as_matrix(equalities, ambient_dim)
        rays, lin = double_description(A, E, ambient_dim)
        return _from_vrep(rays, lin)

    @property
    def dim(self) -> int:
        return self.ambient_dim

    def generators(self) -> np.ndarray:
        """Rays followed by ``±`` lineality basis vectors."""
        parts = [self.rays, self.lineality.basis, -self.lineality.basis]
        return np.vstack(parts)

    def is_trivial(self) -> bool:
        return self.rays.shape[0] == 0 and self.lineality.rank == 0

    def is_full(self) -> bool:
        return self.lineality.rank == self.ambient_dim

    def __contains__(self, u) -> bool:
        return contains(self, u)

    def __repr__(self):
        return (
            f"PolyhedralCone(dim={self.ambient_dim}, rays={self.rays.shape[0]}, "
            f"lineality={self.lineality.rank}, facets={self.facets.shape[0]}, "
            f"equalities={self.equalities.rank})"
        )


def _from_vrep(rays: np.ndarray, lin: Subspace) -> PolyhedralCone:
    n = lin.ambient_dim
    # H-rep = V-rep of the polar: {x : x·r <= 0, x·l = 0}
    facets, eq = double_description(rays, lin.basis, n)
    return PolyhedralCone(n, rays, lin, facets, eq)


def positive_hull(points: Iterable, ambient_dim: Optional[int] = None) -> PolyhedralCone:
    """Closed positive hull ``Cl Pos(points)``; an empty list gives ``{o}``."""
    points = list(points)
    if ambient_dim is None:
        if not points:
            raise ValueError("ambient_dim is required for an empty point list")
        ambient_dim = as_vector(points[0]).size
    P = as_matrix(points, ambient_dim)
    # polar first, then its polar gives the minimal V-rep
    pol_rays, pol_lin = double_description(P, np.zeros((0, ambient_dim)), ambient_dim)
    rays, lin = double_description(pol_rays, pol_lin.basis, ambient_dim)
    return PolyhedralCone(ambient_dim, rays, lin, pol_rays, pol_lin)


def polar(c: PolyhedralCone) -> PolyhedralCone:
    return PolyhedralCone(c.ambient_dim, c.facets, c.equalities, c.rays, c.lineality)


def lineality_space(c: PolyhedralCone) -> Subspace:
    return c.lineality


def span_of(c: PolyhedralCone) -> Subspace:
    return orthonormal_basis(list(c.rays) + list(c.lineality.basis), c.ambient_dim)


def _check_dim(c: PolyhedralCone, u) -> np.ndarray:
    return as_vector(u, c.ambient_dim)


def contains(c: PolyhedralCone, u, tol: float = 1e-9) -> bool:
    u = _check_dim(c, u)
    if c.facets.shape[0] and np.max(c.facets @ u) > tol:
        return False
    if c.equalities.rank and np.max(np.abs(c.equalities.basis @ u)) > tol:
        return False
    return True


def is_subspace(c: PolyhedralCone) -> bool:
    return c.rays.shape[0] == 0


def in_relative_interior(c: PolyhedralCone, u, tol: float = STRICT_TOL) -> bool:
    u = _check_dim(c, u)
    if is_subspace(c):
        return contains(c, u, tol)
    return _rint_by_polar(c, u, tol)


def _rint_by_polar(c: PolyhedralCone, u: np.ndarray, tol: float) -> bool:
    # u in Span C and u·v < 0 for every v in C° \ Lin C°; rays of C° suffice.
    if span_of(c).residual(u) > tol:
        return False
    pc = polar(c)
    return bool(np.all(pc.rays @ u < -tol))


def is_subspace_by_interior(c: PolyhedralCone) -> bool:
    """Subspace test through ``o ∈ Rint C`` on the polar-ray route."""
    return _rint_by_polar(c, np.zeros(c.ambient_dim), STRICT_TOL)


def cone_sum(a: PolyhedralCone, b: PolyhedralCone) -> PolyhedralCone:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("cones live in different spaces")
    return positive_hull(list(a.generators()) + list(b.generators()), a.ambient_dim)


def intersection(*cones: PolyhedralCone) -> PolyhedralCone:
    n = cones[0].ambient_dim
    if any(c.ambient_dim != n for c in cones):
        raise DimensionMismatch("cones live in different spaces")
    ineq = [f for c in cones for f in c.facets]
    eq = [m for c in cones for m in c.equalities.basis]
    return PolyhedralCone.from_constraints(ineq, eq, n)


def cones_equal(a: PolyhedralCone, b: PolyhedralCone, tol: float = 1e-8) -> bool:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("cones live in different spaces")
    return all(contains(b, g, tol) for g in a.generators()) and all(
        contains(a, g, tol) for g in b.generators()
    )


def rebuild(c: PolyhedralCone) -> PolyhedralCone:
    """Round trip through the H-representation only."""
    return PolyhedralCone.from_constraints(c.facets, c.equalities.basis, c.ambient_dim)


def orthant(dim: int, sign: float = 1.0) -> PolyhedralCone:
    return positive_hull(sign * np.eye(dim), dim)


def subspace_cone(s: Subspace) -> PolyhedralCone:
    return PolyhedralCone(
        s.ambient_dim, np.zeros((0, s.ambient_dim)), s, np.zeros((0, s.ambient_dim)),
        orthogonal_complement(s),
    )


__all__ = [
    "PolyhedralCone",
    "positive_hull",
    "polar",
    "lineality_space",
    "span_of",
    "contains",
    "in_relative_interior",
    "is_subspace",
    "cone_sum",
    "cones_equal",
    "intersection",
    "rebuild",
    "orthant",
    "subspace_cone",
    "double_description",
    "project_subspace",
]
