"""Polar cones, metric projections and Moreau decompositions in R^n."""

from .cone import (
    PolyhedralCone,
    cone_sum,
    cones_equal,
    contains,
    in_relative_interior,
    is_subspace,
    lineality_space,
    polar,
    positive_hull,
    span_of,
)
from .linalg import (
    DimensionMismatch,
    Subspace,
    orthogonal_complement,
    orthonormal_basis,
    project_subspace,
)
from .project import MoreauDecomposition, moreau_decompose, project, project_oracle
from .sets import Ball, Cone, ConvexSet, Halfspace, Plane, Polytope, Segment, ShiftedCone

__version__ = "0.1.0"
