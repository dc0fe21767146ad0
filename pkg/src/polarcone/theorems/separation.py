"""Separating a cone from the orthogonal complement of a boundary face in its polar."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from ..cone import (
    PolyhedralCone,
    contains,
    in_relative_interior,
    is_subspace,
    polar,
)
from ..linalg import DimensionMismatch, Subspace, orthogonal_complement, orthonormal_basis
from .random import XorShift64Star

MARGIN = 1e-7
SIDE_TOL = 1e-9


class HypothesisViolated(ValueError):
    """The inputs do not satisfy the preconditions of the construction."""


class SeparationNotFound(RuntimeError):
    """No separating hyperplane was found although one must exist."""


@dataclass(frozen=True, eq=False)
class SeparationResult:
    S: Subspace
    normal: np.ndarray
    D: PolyhedralCone
    contains_B: bool
    strict_sides: bool


def _check_face(c: PolyhedralCone, b: PolyhedralCone) -> None:
    if c.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("cone and face live in different spaces")
    if is_subspace(c):
        raise HypothesisViolated("the cone is a subspace")
    gens = b.generators()
    if not all(contains(c, g) for g in gens):
        raise HypothesisViolated("B is not contained in C")
    # B ⊆ Rbd C iff one relative-interior point of B misses Rint C
    inner = b.rays.sum(axis=0) if b.rays.shape[0] else np.zeros(c.ambient_dim)
    if in_relative_interior(c, inner):
        raise HypothesisViolated("B meets the relative interior of C")


def orthogonal_face_complement(c: PolyhedralCone, b: PolyhedralCone) -> PolyhedralCone:
    """``D = {x ∈ C° : x·g = 0 for every g ∈ B}``.

    Raises
    ------
    HypothesisViolated
        If ``c`` is a subspace or ``b`` does not lie in the relative boundary of ``c``.
    """
    _check_face(c, b)
    pc = polar(c)
    eqs = list(pc.equalities.basis) + list(b.rays) + list(b.lineality.basis)
    return PolyhedralCone.from_constraints(pc.facets, eqs, c.ambient_dim)


def _interior_direction(k: PolyhedralCone) -> np.ndarray:
    s = k.rays.sum(axis=0)
    return s / np.linalg.norm(s)


def separate_face(c: PolyhedralCone, b: PolyhedralCone, seed: int = 0, n_check: int = 64) -> SeparationResult:
    """Hyperplane through ``b`` with ``Rint C`` and ``Rint D`` on opposite open sides.

    The normal ``e`` is found by a linear program: ``e ⊥ B``, ``e·r <= 0`` on
    the rays of ``C``, ``e·d >= 0`` on the rays of ``D``, with the margin on
    the relative-interior directions of ``C`` and ``D`` maximized inside the
    box ``||e||_inf <= 1``. The orientation puts ``C`` on the side ``x·e <= 0``.
    """
    D = orthogonal_face_complement(c, b)
    n = c.ambient_dim
    if D.rays.shape[0] == 0 or c.rays.shape[0] == 0:
        raise SeparationNotFound("C or D has no relative-interior direction off its lineality")

    # equalities: B, Lin C, Lin D all lie in S
    eq_space = orthonormal_basis(
        list(b.rays) + list(b.lineality.basis) + list(c.lineality.basis) + list(D.lineality.basis), n
    )
    ic, idd = _interior_direction(c), _interior_direction(D)
    # variables (e, t); maximize t
    obj = np.r_[np.zeros(n), -1.0]
    A_ub = [np.r_[r, 0.0] for r in c.rays] + [np.r_[-d, 0.0] for d in D.rays]
    A_ub += [np.r_[ic, 1.0], np.r_[-idd, 1.0]]
    A_eq = [np.r_[g, 0.0] for g in eq_space.basis]
    res = linprog(
        obj,
        A_ub=np.array(A_ub),
        b_ub=np.zeros(len(A_ub)),
        A_eq=np.array(A_eq) if A_eq else None,
        b_eq=np.zeros(len(A_eq)) if A_eq else None,
        bounds=[(-1.0, 1.0)] * n + [(None, 1.0)],
        method="highs",
    )
    if res.status != 0 or -res.fun < MARGIN:
        raise SeparationNotFound(f"separating LP failed (status {res.status})")

    e = res.x[:n]
    e = e - eq_space.basis.T @ (eq_space.basis @ e) if eq_space.rank else e
    e = e / np.linalg.norm(e) + 0.0
    S = orthogonal_complement(orthonormal_basis([e], n))

    contains_B = bool(all(abs(g @ e) <= SIDE_TOL for g in b.generators()))
    closed_sides = bool(np.all(c.generators() @ e <= SIDE_TOL) and np.all(D.generators() @ e >= -SIDE_TOL))
    strict = closed_sides and _strict_sides(c, D, e, seed, n_check)
    if not (contains_B and closed_sides and strict):
        raise SeparationNotFound("LP certificate failed verification")
    return SeparationResult(S, e, D, contains_B, strict)


def relative_interior_samples(k: PolyhedralCone, count: int, rng: XorShift64Star) -> list[np.ndarray]:
    """Points with all ray coefficients positive plus random lineality parts."""
    out = []
    for _ in range(count):
        lam = np.array([0.05 + rng.uniform() for _ in range(k.rays.shape[0])])
        x = lam @ k.rays if k.rays.shape[0] else np.zeros(k.ambient_dim)
        if k.lineality.rank:
            x = x + k.lineality.basis.T @ rng.normal_vector(k.lineality.rank)
        out.append(x)
    return out


def _strict_sides(c, D, e, seed, count) -> bool:
    rng = XorShift64Star(seed)
    for x in relative_interior_samples(c, count, rng):
        if not x @ e < -SIDE_TOL * np.linalg.norm(x):
            return False
    for x in relative_interior_samples(D, count, rng):
        if not x @ e > SIDE_TOL * np.linalg.norm(x):
            return False
    return True


def separates(normal, c1: PolyhedralCone, c2: PolyhedralCone, tol: float = SIDE_TOL) -> bool:
    """Do the closed halfspaces of ``{normal}⊥`` hold ``c1`` and ``c2`` on opposite sides?"""
    g1, g2 = c1.generators() @ normal, c2.generators() @ normal
    return bool(
        (np.all(g1 <= tol) and np.all(g2 >= -tol)) or (np.all(g1 >= -tol) and np.all(g2 <= tol))
    )
