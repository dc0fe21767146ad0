"""Metric projection onto convex sets, a slow independent oracle, and Moreau splits.

The fast path for cones and polytopes is an active-set least-squares solver in
the style of Lawson and Hanson: cone projection solves
``min ||u - [G | B] w||`` with ``w >= 0`` on the ray columns ``G`` and free on the
lineality columns ``B``; polytope projection adds the constraint ``sum(w) = 1``.

The oracle is plain projected gradient descent in coefficient space (or in
``x`` for sets with a closed-form feasibility map) and shares no code with the
fast path.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cone import PolyhedralCone, contains, polar
from .linalg import DimensionMismatch, as_vector, project_subspace
from .sets import Ball, Cone, Halfspace, Plane, Polytope, Segment, ShiftedCone

log = logging.getLogger(__name__)

DUAL_TOL = 1e-10


class ConvergenceError(RuntimeError):
    pass


def _solve_passive(A, b, passive, eq):
    """Least squares on the passive columns, optionally with ``sum(w_P) = 1``."""
    n = A.shape[1]
    z = np.zeros(n)
    idx = np.flatnonzero(passive)
    if idx.size == 0:
        return z
    AP = A[:, idx]
    if not eq:
        z[idx] = np.linalg.lstsq(AP, b, rcond=None)[0]
        return z
    k = idx.size
    w0 = np.full(k, 1.0 / k)
    if k == 1:
        z[idx] = w0
        return z
    # null space of the all-ones row
    N = np.linalg.svd(np.ones((1, k)))[2][1:].T
    t = np.linalg.lstsq(AP @ N, b - AP @ w0, rcond=None)[0]
    z[idx] = w0 + N @ t
    return z


def active_set_lsq(A, b, nonneg, x0=None, simplex=False, tol=DUAL_TOL, max_iter=None):
    """Solve ``min ||A x - b||`` with ``x[nonneg] >= 0`` (and ``sum(x) = 1`` if ``simplex``).

    Parameters
    ----------
    A : ndarray, shape (m, n)
    b : ndarray, shape (m,)
    nonneg : ndarray of bool, shape (n,)
        Sign-constrained columns; the rest are free.
    x0 : ndarray, optional
        Feasible starting point. Defaults to zero (or the first vertex when
        ``simplex``). Positive entries start in the passive set.
    simplex : bool
        Add the equality ``sum(x) = 1``; all columns must then be nonneg.
    tol : float
        Dual feasibility tolerance for termination.

    Returns
    -------
    x : ndarray, shape (n,)

    Notes
    -----
    Columns enter by largest dual violation, lowest index on ties.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    n = A.shape[1]
    nonneg = np.asarray(nonneg, dtype=bool)
    if x0 is None:
        x0 = np.zeros(n)
        if simplex:
            x0[0] = 1.0
    x = np.array(x0, dtype=float)
    passive = (~nonneg) | (x > 0)
    if max_iter is None:
        max_iter = 30 * (n + 1) + 100

    for _ in range(max_iter):
        # inner loop: feasible minimizer over the passive set
        for _ in range(n + 2):
            z = _solve_passive(A, b, passive, simplex)
            bad = passive & nonneg & (z <= 0.0)
            if not bad.any():
                x = z
                break
            ratios = x[bad] / (x[bad] - z[bad])
            alpha = float(np.min(ratios))
            x = x + alpha * (z - x)
            passive &= ~(nonneg & (x <= 1e-15))
            x[~passive] = 0.0
            if simplex and not passive.any():
                raise ConvergenceError("active set emptied")
        else:
            raise ConvergenceError("inner active-set loop did not settle")

        w = A.T @ (b - A @ x)
        if simplex:
            w = w - np.mean(w[passive])
        cand = nonneg & ~passive & (w > tol)
        if not cand.any():
            return x
        j = int(np.argmax(np.where(cand, w, -np.inf)))
        passive[j] = True
    raise ConvergenceError("active-set solver exceeded its iteration budget")


def _check(s, u) -> np.ndarray:
    u = as_vector(u)
    if u.size != s.ambient_dim:
        raise DimensionMismatch(f"point has dimension {u.size}, set has {s.ambient_dim}")
    return u


def project_cone(c: PolyhedralCone, u) -> np.ndarray:
    u = as_vector(u, c.ambient_dim)
    G, B = c.rays, c.lineality.basis
    if G.shape[0] == 0:
        return project_subspace(c.lineality, u)
    A = np.hstack([G.T, B.T])
    nonneg = np.r_[np.ones(G.shape[0], bool), np.zeros(B.shape[0], bool)]
    w = active_set_lsq(A, u, nonneg)
    return A @ w


@functools.singledispatch
def project(s, u) -> np.ndarray:
    """Metric projection of ``u`` onto the closed convex set ``s``."""
    raise TypeError(f"cannot project onto {type(s).__name__}")


@project.register
def _(s: Cone, u):
    return project_cone(s.cone, _check(s, u))


@project.register
def _(s: ShiftedCone, u):
    u = _check(s, u)
    return s.translation + project_cone(s.cone, u - s.translation)


@project.register
def _(s: Plane, u):
    u = _check(s, u)
    return s.point + project_subspace(s.directions, u - s.point)


@project.register
def _(s: Halfspace, u):
    u = _check(s, u)
    viol = u @ s.normal - s.offset
    if viol <= 0.0:
        return u.copy()
    return u - (viol / (s.normal @ s.normal)) * s.normal


@project.register
def _(s: Ball, u):
    u = _check(s, u)
    d = u - s.center
    r = np.linalg.norm(d)
    if r <= s.radius:
        return u.copy()
    return s.center + (s.radius / r) * d


@project.register
def _(s: Segment, u):
    u = _check(s, u)
    d = s.b - s.a
    t = float(np.clip((u - s.a) @ d / (d @ d), 0.0, 1.0))
    return s.a + t * d


@project.register
def _(s: Polytope, u):
    u = _check(s, u)
    V = s.vertices
    if V.shape[0] == 1:
        return V[0].copy()
    x0 = np.zeros(V.shape[0])
    x0[int(np.argmin(np.linalg.norm(V - u, axis=1)))] = 1.0
    w = active_set_lsq(V.T, u, np.ones(V.shape[0], bool), x0=x0, simplex=True)
    return V.T @ w


def distance(s, u) -> float:
    u = as_vector(u)
    return float(np.linalg.norm(u - project(s, u)))


# -- oracle -------------------------------------------------------------------


@dataclass
class OracleResult:
    point: np.ndarray
    iterations: int
    converged: bool


def _simplex_projection(v: np.ndarray) -> np.ndarray:
    # sort-based Euclidean projection onto the probability simplex
    mu = np.sort(v)[::-1]
    cssv = np.cumsum(mu) - 1.0
    ind = np.arange(1, v.size + 1)
    rho = ind[mu - cssv / ind > 0][-1]
    theta = cssv[rho - 1] / rho
    return np.maximum(v - theta, 0.0)


def _pgd(M, u, feasible, w0, max_iter, stop_tol):
    """Projected gradient on ``0.5 ||M w - u||^2`` with step ``1/L``.

    Nesterov momentum with gradient-based adaptive restart keeps badly
    conditioned generator matrices within the iteration budget.
    """
    L = max(np.linalg.norm(M, 2) ** 2, 1e-300)
    w = v = w0
    t = 1.0
    move = np.inf
    for it in range(1, max_iter + 1):
        w_new = feasible(v - (M.T @ (M @ v - u)) / L)
        step = M @ (w_new - w)
        move = np.linalg.norm(step)
        if (v - w_new) @ (w_new - w) > 0:
            # momentum points uphill: restart from a plain gradient step
            t = 1.0
        t_new = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        v = w_new + ((t - 1.0) / t_new) * (w_new - w)
        w, t = w_new, t_new
        if move <= stop_tol:
            break
    return M @ w, it, move


def project_oracle(
    s, u, max_iter: int = 100_000, stop_tol: float = 1e-15, *, full: bool = False
):
    """Slow projection by (accelerated) projected gradient descent.

    Cones and polytopes are handled in coefficient space (clip at zero,
    simplex projection), segments and planes through their parameters, and
    halfspaces and balls in ``x`` with their closed-form feasibility maps.

    Iteration stops early once an iterate moves less than ``stop_tol``; a
    final move above ``1e-7`` at the budget end sets ``converged=False``.
    With ``full=True`` an :class:`OracleResult` is returned.
    """
    u = _check(s, u)
    n = u.size
    shift = np.zeros(n)
    c = None
    if isinstance(s, ShiftedCone):
        shift, c = s.translation, s.cone
    elif isinstance(s, Cone):
        c = s.cone

    if c is not None:
        G, B = c.rays, c.lineality.basis
        M = np.hstack([G.T, B.T]) if G.shape[0] + B.shape[0] else np.zeros((n, 0))
        k = G.shape[0]
        if M.shape[1] == 0:
            x, it, move = np.zeros(n), 0, 0.0
        else:
            def feas(w):
                w = w.copy()
                w[:k] = np.maximum(w[:k], 0.0)
                return w
            x, it, move = _pgd(M, u - shift, feas, np.zeros(M.shape[1]), max_iter, stop_tol)
        x = x + shift
    elif isinstance(s, Polytope):
        V = s.vertices
        m = V.shape[0]
        x, it, move = _pgd(V.T, u, _simplex_projection, np.full(m, 1.0 / m), max_iter, stop_tol)
    elif isinstance(s, Segment):
        M = (s.b - s.a)[:, None]
        x, it, move = _pgd(M, u - s.a, lambda w: np.clip(w, 0.0, 1.0), np.zeros(1), max_iter, stop_tol)
        x = x + s.a
    elif isinstance(s, Plane):
        D = s.directions.basis.T
        if D.shape[1] == 0:
            x, it, move = s.point.copy(), 0, 0.0
        else:
            x, it, move = _pgd(D, u - s.point, lambda w: w, np.zeros(D.shape[1]), max_iter, stop_tol)
            x = x + s.point
    elif isinstance(s, (Halfspace, Ball)):
        if isinstance(s, Halfspace):
            nn = s.normal @ s.normal

            def feas(x):
                v = x @ s.normal - s.offset
                return x if v <= 0 else x - (v / nn) * s.normal
        else:
            def feas(x):
                d = x - s.center
                r = np.linalg.norm(d)
                return x if r <= s.radius else s.center + (s.radius / r) * d
        x, it, move = _pgd(np.eye(n), u, feas, feas(np.zeros(n)), max_iter, stop_tol)
    else:
        raise TypeError(f"no oracle for {type(s).__name__}")

    converged = bool(move <= 1e-7)
    if not converged:
        log.warning("projection oracle did not converge (last move %.3g)", move)
    if full:
        return OracleResult(x, it, converged)
    return x


# -- Moreau decomposition --------------------------------------------------------


@dataclass(frozen=True)
class MoreauDecomposition:
    u: np.ndarray
    y: np.ndarray
    z: np.ndarray
    residual_sum: float
    residual_orth: float


def moreau_decompose(c: PolyhedralCone, u) -> MoreauDecomposition:
    """Split ``u`` into its projections onto ``c`` and onto the polar of ``c``."""
    u = as_vector(u, c.ambient_dim)
    y = project_cone(c, u)
    z = project_cone(polar(c), u)
    return MoreauDecomposition(
        u=u,
        y=y,
        z=z,
        residual_sum=float(np.linalg.norm(u - y - z)),
        residual_orth=float(abs(y @ z)),
    )


def moreau_holds(c: PolyhedralCone, d: MoreauDecomposition, scale: float = 1e-8) -> bool:
    nu = np.linalg.norm(d.u)
    return (
        contains(c, d.y, scale)
        and contains(polar(c), d.z, scale)
        and d.residual_sum <= scale * (1 + nu)
        and d.residual_orth <= scale * (1 + nu**2)
    )
