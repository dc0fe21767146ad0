"""Dense small-dimension linear algebra: vectors, subspaces, orthogonal projection.

Vectors are plain 1-D ``float64`` numpy arrays. :func:`as_vector` is the single
entry point that validates them (finite coordinates, expected dimension).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

RANK_TOL = 1e-10


class DimensionMismatch(ValueError):
    """Raised when vectors or sets of different ambient dimension are combined."""


def as_vector(x, dim: Optional[int] = None) -> np.ndarray:
    if isinstance(x, np.ndarray) and x.dtype == np.float64 and x.ndim == 1:
        v = x.copy()
    else:
        v = np.array(x, dtype=float).reshape(-1) if np.ndim(x) else np.array([float(x)])
    if not np.isfinite(v).all():
        raise ValueError("vector coordinates must be finite")
    if v.size == 0:
        raise ValueError("vector must have positive dimension")
    if dim is not None and v.size != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {v.size}")
    return v


def as_matrix(vectors, dim: int) -> np.ndarray:
    """Stack ``vectors`` as the rows of a ``(k, dim)`` array (``k`` may be 0)."""
    if vectors is None:
        return np.zeros((0, dim))
    rows = [as_vector(v) for v in vectors]
    for r in rows:
        if r.size != dim:
            raise DimensionMismatch(f"expected dimension {dim}, got {r.size}")
    if not rows:
        return np.zeros((0, dim))
    return np.vstack(rows)


def _gram_schmidt(rows: np.ndarray, start: Optional[np.ndarray], dim: int) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    ``start`` is an already orthonormal basis that new vectors are reduced
    against; only the new basis vectors are returned.
    """
    basis = [] if start is None else list(start)
    n_start = len(basis)
    for r in rows:
        norm = np.linalg.norm(r)
        if norm == 0.0:
            continue
        w = r / norm
        for _ in range(2):
            for b in basis:
                w = w - (w @ b) * b
        res = np.linalg.norm(w)
        if res > RANK_TOL:
            basis.append(w / res)
    new = basis[n_start:]
    return np.vstack(new) if new else np.zeros((0, dim))


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of R^n held as an orthonormal basis (rows of ``basis``)."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.array(self.basis, dtype=float).reshape(-1, self.ambient_dim) + 0.0
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    @classmethod
    def trivial(cls, dim: int) -> "Subspace":
        return cls(dim, np.zeros((0, dim)))

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls(dim, np.eye(dim))

    def project(self, u) -> np.ndarray:
        return project_subspace(self, u)

    def residual(self, u) -> float:
        """Distance from ``u`` to the subspace."""
        u = as_vector(u, self.ambient_dim)
        return float(np.linalg.norm(u - self.project(u)))

    def contains(self, u, tol: float = 1e-9) -> bool:
        return self.residual(u) <= tol

    def same_span(self, other: "Subspace", tol: float = 1e-9) -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("subspaces live in different spaces")
        if other.rank != self.rank:
            return False
        return all(other.residual(b) <= tol for b in self.basis) and all(
            self.residual(b) <= tol for b in other.basis
        )

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, rank={self.rank})"


def orthonormal_basis(vectors: Iterable, ambient_dim: Optional[int] = None) -> Subspace:
    """Orthonormal basis of the span of ``vectors``.

    Parameters
    ----------
    vectors : iterable of array_like
        Spanning vectors; all must share one dimension.
    ambient_dim : int, optional
        Required when ``vectors`` is empty.

    Returns
    -------
    Subspace
        Basis of rank equal to the numerical rank of the input, decided on
        normalized columns at absolute tolerance ``1e-10``.
    """
    vectors = list(vectors)
    if ambient_dim is None:
        if not vectors:
            raise ValueError("ambient_dim is required for an empty vector list")
        ambient_dim = as_vector(vectors[0]).size
    rows = as_matrix(vectors, ambient_dim)
    return Subspace(ambient_dim, _gram_schmidt(rows, None, ambient_dim))


def orthogonal_complement(s: Subspace) -> Subspace:
    n = s.ambient_dim
    basis = list(s.basis)
    new = []
    # Greedy: always extend with the coordinate vector farthest from the current span.
    for _ in range(n - s.rank):
        best, best_res = None, -1.0
        for i in range(n):
            w = np.zeros(n)
            w[i] = 1.0
            for _ in range(2):
                for b in basis:
                    w = w - (w @ b) * b
            res = np.linalg.norm(w)
            if res > best_res + 1e-14:
                best, best_res = w, res
        v = best / best_res
        basis.append(v)
        new.append(v)
    return Subspace(n, np.vstack(new) if new else np.zeros((0, n)))


def project_subspace(s: Subspace, u) -> np.ndarray:
    u = as_vector(u, s.ambient_dim)
    if s.rank == 0:
        return np.zeros_like(u)
    return s.basis.T @ (s.basis @ u)


def subspace_sum(*spaces: Subspace) -> Subspace:
    n = spaces[0].ambient_dim
    rows = [b for s in spaces for b in s.basis]
    return orthonormal_basis(rows, n)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """``a ∩ b`` as the complement of ``a⊥ + b⊥``."""
    return orthogonal_complement(subspace_sum(orthogonal_complement(a), orthogonal_complement(b)))


def null_space(rows: Sequence, dim: int) -> Subspace:
    """Solutions of ``rows @ x = 0``."""
    return orthogonal_complement(orthonormal_basis(list(rows), dim))
