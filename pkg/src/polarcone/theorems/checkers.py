"""Sampled checkers for the polar-pair and complementary-plane characterizations.

Each ``check_*`` function evaluates one universally quantified assertion over
the points of a :class:`Sampler` and returns a :class:`PairVerdict`. Sampling
can only refute such an assertion, so for cones (and planes) the verdict also
carries the exact algebraic classification that the assertion is equivalent
to; callers compare the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ..cone import cones_equal, intersection, polar
from ..linalg import DimensionMismatch, as_vector, orthonormal_basis
from ..project import project
from ..sets import as_cone, as_plane
from .random import Sampler, XorShift64Star

SUM_MISMATCH = "SUM_MISMATCH"
NOT_ORTHOGONAL = "NOT_ORTHOGONAL"
NON_UNIQUE = "NON_UNIQUE"
NO_REPRESENTATION = "NO_REPRESENTATION"

SOLVE_TOL = 1e-7
DEDUP_RADIUS = 1e-4


@dataclass
class PairVerdict:
    theorem: int
    property_holds: bool
    witness: Optional[np.ndarray] = None
    witness_detail: Optional[str] = None
    samples_tested: int = 0
    classified_polar_pair: Optional[bool] = None
    classified_complementary_planes: Optional[bool] = None
    decompositions: list = field(default_factory=list)

    def __post_init__(self):
        if self.property_holds and self.witness is not None:
            raise ValueError("a holding property carries no witness")
        if not self.property_holds and self.witness is None:
            raise ValueError("a failing property needs a witness")


def _same_dim(e, f):
    if e.ambient_dim != f.ambient_dim:
        raise DimensionMismatch("sets live in different spaces")


def polar_pair_classification(e, f) -> Optional[bool]:
    """Exact polar-pair test when both sets are cones, else ``None``."""
    ce, cf = as_cone(e), as_cone(f)
    if ce is None or cf is None:
        return None
    return cones_equal(ce, polar(cf)) and cones_equal(cf, polar(ce))


def complementary_planes(e, f) -> bool:
    """True iff both sets are planes whose direction spaces split R^n."""
    pe, pf = as_plane(e), as_plane(f)
    if pe is None or pf is None:
        return False
    se, sf = pe[1], pf[1]
    n = e.ambient_dim
    joint = orthonormal_basis(list(se.basis) + list(sf.basis), n)
    return se.rank + sf.rank == n and joint.rank == n


def _run(theorem, e, f, sampler, n_samples, evaluate):
    _same_dim(e, f)
    tested = 0
    for u in sampler.points(e, f, n_samples):
        tested += 1
        code = evaluate(e, f, u)
        if code is not None:
            return PairVerdict(theorem, False, u, code, tested)
    return PairVerdict(theorem, True, samples_tested=tested)


# -- decomposition u = p_E(u) + p_F(u) ---------------------------------------------


def _eval_decomposition(e, f, u) -> Optional[str]:
    r = np.linalg.norm(u - project(e, u) - project(f, u))
    return SUM_MISMATCH if r > SOLVE_TOL * (1 + np.linalg.norm(u)) else None


def check_decomposition_pair(e, f, sampler: Sampler = Sampler(), n_samples: int = 200) -> PairVerdict:
    """Does every sampled ``u`` satisfy ``u = p_E(u) + p_F(u)``?"""
    v = _run(2, e, f, sampler, n_samples, _eval_decomposition)
    v.classified_polar_pair = polar_pair_classification(e, f)
    return v


# -- E + F = R^n and orthogonal projections ----------------------------------------


def _sum_is_everything(e, f):
    """Exact test of ``E + F = R^n`` for cones; returns (holds, witness)."""
    ce, cf = as_cone(e), as_cone(f)
    common = intersection(polar(ce), polar(cf))
    if common.is_trivial():
        return True, None
    # a nonzero d with d·x <= 0 on E + F is never in E + F
    return False, np.array(common.generators()[0])


def _eval_orthogonal_projection(e, f, u) -> Optional[str]:
    if as_cone(e) is not None and as_cone(f) is not None:
        if not _sum_is_everything(e, f)[0] and not in_minkowski_sum(e, f, u):
            return SUM_MISMATCH
    elif not in_minkowski_sum(e, f, u):
        return SUM_MISMATCH
    pe, pf = project(e, u), project(f, u)
    if abs(pe @ pf) > SOLVE_TOL * (1 + u @ u):
        return NOT_ORTHOGONAL
    return None


def check_orthogonal_projection_pair(
    e, f, sampler: Sampler = Sampler(), n_samples: int = 200
) -> PairVerdict:
    """Is ``E + F = R^n`` and ``p_E(u) ⊥ p_F(u)`` at every sampled ``u``?

    For cones the sum condition is decided exactly (``E°∩F° = {o}``) and a
    failure yields a witness direction in that intersection.
    """
    _same_dim(e, f)
    classified = polar_pair_classification(e, f)
    if classified is not None:
        ok, w = _sum_is_everything(e, f)
        if not ok:
            return PairVerdict(3, False, w, SUM_MISMATCH, 0, classified)
    v = _run(3, e, f, sampler, n_samples, _eval_orthogonal_projection)
    v.classified_polar_pair = classified
    return v


# -- local search for representations --------------------------------------------
#
# Every representation u = y + z with y in E and z in F has y in the set
# K = E ∩ (u - F), which is convex when E and F are. Sum searches look for
# points of K; orthogonal searches look for points of K on the sphere
# ||y - u/2|| = ||u||/2, which is exactly the locus of y·(u - y) = 0.


def _alternate(proj_a, proj_b, y0, max_iter=200, tol=1e-15):
    """Alternating projections; converges to a point of ``A ∩ B`` when one exists."""
    y = proj_a(y0)
    for _ in range(max_iter):
        y_new = proj_a(proj_b(y))
        if np.linalg.norm(y_new - y) <= tol * (1.0 + np.linalg.norm(y)):
            return y_new
        y = y_new
    return y


def _dykstra(proj_a, proj_b, x0, max_iter=2000, tol=1e-14):
    """Dykstra's algorithm for the projection of ``x0`` onto ``A ∩ B``."""
    x = proj_a(x0)
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    for _ in range(max_iter):
        y = proj_b(x + p)
        p = x + p - y
        x_new = proj_a(y + q)
        q = y + q - x_new
        if np.linalg.norm(x_new - x) <= tol * (1.0 + np.linalg.norm(x)) and np.linalg.norm(
            x_new - y
        ) <= tol * (1.0 + np.linalg.norm(x)):
            return x_new
        x = x_new
    return x


def _gauss_newton(residual: Callable, proj_e: Callable, y0: np.ndarray, max_iter: int = 20, h: float = 1e-7):
    """Projected Gauss-Newton polish of ``||residual(y)||`` with a forward-difference Jacobian."""
    y = proj_e(y0)
    r = residual(y)
    nr = np.linalg.norm(r)
    n = y.size
    for _ in range(max_iter):
        if nr <= 1e-14:
            break
        J = np.empty((r.size, n))
        for i in range(n):
            yi = y.copy()
            yi[i] += h
            # differentiate through proj_e so the step stays tangent to E
            J[:, i] = (residual(proj_e(yi)) - r) / h
        d = -np.linalg.lstsq(J, r, rcond=None)[0]
        t, moved = 1.0, False
        for _ in range(20):
            y_new = proj_e(y + t * d)
            r_new = residual(y_new)
            n_new = np.linalg.norm(r_new)
            if n_new < nr:
                y, r, nr, moved = y_new, r_new, n_new, True
                break
            t *= 0.5
        if not moved:
            break
    return y, nr


def _starts(e, u, budget, seed):
    rng = XorShift64Star(seed)
    n = u.size
    scale = max(1.0, float(np.linalg.norm(u)))
    pts = [project(e, u), project(e, np.zeros(n))]
    while len(pts) < budget:
        pts.append(project(e, u + 2.0 * scale * rng.normal_vector(n)))
    return pts[:budget]


def _dedup(pairs):
    out = []
    for y, z in pairs:
        if all(np.linalg.norm(y - y2) > DEDUP_RADIUS for y2, _ in out):
            out.append((y, z))
    return out


def _split_tools(e, f, u):
    def proj_e(y):
        return project(e, y)

    def proj_k(y):
        # projection onto u - F
        return u - project(f, u - y)

    def residual(y):
        z = u - y
        return z - project(f, z)

    return proj_e, proj_k, residual


def find_sum_decompositions(e, f, u, budget: int = 32, max_iter: int = 200, seed: int = 0):
    """Search for ``u = y + z`` with ``y ∈ E`` and ``z ∈ F``; returns distinct solutions.

    Each start runs alternating projections between ``E`` and ``u - F``
    followed by a short Gauss-Newton polish; a start whose polish fails
    after 20 alternating steps gets the full ``max_iter`` budget. Solutions closer than ``1e-4``
    are merged.
    """
    _same_dim(e, f)
    u = as_vector(u, e.ambient_dim)
    proj_e, proj_k, residual = _split_tools(e, f, u)
    tol = SOLVE_TOL * (1 + np.linalg.norm(u))
    found = []
    for y0 in _starts(e, u, budget, seed):
        y = y0
        # a short alternating phase usually suffices to hand over to Gauss-Newton
        for n_iter in (min(20, max_iter), max_iter):
            y = _alternate(proj_e, proj_k, y, n_iter)
            nr = np.linalg.norm(residual(y))
            if nr > 1e-14:
                y, nr = _gauss_newton(residual, proj_e, y)
            if nr <= tol:
                found.append((y, u - y))
                break
    return _dedup(found)


def find_orthogonal_decompositions(e, f, u, budget: int = 32, max_iter: int = 200, seed: int = 0):
    """Search for ``u = y + z`` with ``y ∈ E``, ``z ∈ F`` and ``y ⊥ z``.

    Solutions are the points of ``K = E ∩ (u - F)`` on the sphere with
    diameter ``[o, u]``. The function ``g(y) = y·(u - y)`` is maximized over
    ``K`` at the projection ``p`` of ``u/2`` (Dykstra). If ``g(p) ≈ 0`` the
    solution ``p`` is the only one; if ``g(p) > 0`` each start is carried into
    ``K`` by alternating projections and, when it lands outside the ball, the
    segment from ``p`` to it crosses the sphere at exactly one solution.

    Returns the distinct solutions (merge radius ``1e-4``). Two or more
    entries refute uniqueness.
    """
    _same_dim(e, f)
    u = as_vector(u, e.ambient_dim)
    proj_e, proj_k, residual = _split_tools(e, f, u)
    c, r = u / 2.0, np.linalg.norm(u) / 2.0

    def valid(y):
        z = u - y
        return (
            abs(y @ z) <= SOLVE_TOL
            and np.linalg.norm(residual(y)) <= SOLVE_TOL
            and np.linalg.norm(y - proj_e(y)) <= SOLVE_TOL
        )

    p = _dykstra(proj_e, proj_k, c, max_iter=10 * max_iter)
    if np.linalg.norm(residual(p)) > SOLVE_TOL:
        p, _ = _gauss_newton(residual, proj_e, p)
        if np.linalg.norm(residual(p)) > SOLVE_TOL:
            return []
    g = p @ (u - p)
    if g < -SOLVE_TOL:
        return []
    if g <= SOLVE_TOL:
        return [(p, u - p)] if valid(p) else []

    found = []
    for y0 in _starts(e, u, budget, seed):
        q = _alternate(proj_e, proj_k, y0, max_iter)
        d = q - p
        a = d @ d
        if np.linalg.norm(q - c) < r or a == 0.0:
            continue
        b = (p - c) @ d
        cc = (p - c) @ (p - c) - r * r
        t = (-b + np.sqrt(b * b - a * cc)) / a
        y = p + min(max(t, 0.0), 1.0) * d
        if valid(y):
            found.append((y, u - y))
    return _dedup(found)


def in_minkowski_sum(e, f, u, budget: int = 8) -> bool:
    u = as_vector(u, e.ambient_dim)
    return bool(find_sum_decompositions(e, f, u, budget=budget))


def _eval_orthogonal_sum(e, f, u, budget=32) -> Optional[str]:
    sols = find_orthogonal_decompositions(e, f, u, budget)
    if not sols:
        return NO_REPRESENTATION
    if len(sols) > 1:
        return NON_UNIQUE
    return None


def check_orthogonal_sum_pair(
    e, f, sampler: Sampler = Sampler(), n_samples: int = 50, budget: int = 32
) -> PairVerdict:
    """Is every sampled ``u`` uniquely ``y + z`` with orthogonal ``y ∈ E``, ``z ∈ F``?"""
    _same_dim(e, f)
    tested = 0
    for u in sampler.points(e, f, n_samples):
        tested += 1
        sols = find_orthogonal_decompositions(e, f, u, budget)
        code = NO_REPRESENTATION if not sols else NON_UNIQUE if len(sols) > 1 else None
        if code is not None:
            return PairVerdict(4, False, u, code, tested, polar_pair_classification(e, f), decompositions=sols)
    return PairVerdict(4, True, samples_tested=tested, classified_polar_pair=polar_pair_classification(e, f))


def _eval_unique_sum(e, f, u, budget=32) -> Optional[str]:
    sols = find_sum_decompositions(e, f, u, budget)
    if not sols:
        return NO_REPRESENTATION
    if len(sols) > 1:
        return NON_UNIQUE
    return None


def check_unique_sum_pair(
    e, f, sampler: Sampler = Sampler(), n_samples: int = 50, budget: int = 32
) -> PairVerdict:
    """Is every sampled ``u`` uniquely ``y + z`` with ``y ∈ E`` and ``z ∈ F``?"""
    _same_dim(e, f)
    tested = 0
    planes = complementary_planes(e, f)
    for u in sampler.points(e, f, n_samples):
        tested += 1
        sols = find_sum_decompositions(e, f, u, budget)
        code = NO_REPRESENTATION if not sols else NON_UNIQUE if len(sols) > 1 else None
        if code is not None:
            return PairVerdict(
                5, False, u, code, tested, polar_pair_classification(e, f), planes, decompositions=sols
            )
    return PairVerdict(
        5, True, samples_tested=tested,
        classified_polar_pair=polar_pair_classification(e, f),
        classified_complementary_planes=planes,
    )


def plane_decomposition(e, f, u):
    """Unique ``(y, z)`` for complementary planes by a direct linear solve."""
    (c1, s1), (c2, s2) = as_plane(e), as_plane(f)
    u = as_vector(u, e.ambient_dim)
    M = np.hstack([s1.basis.T, s2.basis.T])
    x = np.linalg.solve(M, u - c1 - c2)
    y = c1 + s1.basis.T @ x[: s1.rank]
    return y, u - y


CHECKS = {
    2: check_decomposition_pair,
    3: check_orthogonal_projection_pair,
    4: check_orthogonal_sum_pair,
    5: check_unique_sum_pair,
}

_EVALUATORS = {
    2: _eval_decomposition,
    3: _eval_orthogonal_projection,
    4: _eval_orthogonal_sum,
    5: _eval_unique_sum,
}


def replay_witness(e, f, verdict: PairVerdict) -> Optional[str]:
    """Re-evaluate a failing verdict's assertion at its witness alone."""
    if verdict.witness is None:
        return None
    return _EVALUATORS[verdict.theorem](e, f, verdict.witness)
