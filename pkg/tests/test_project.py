import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polarcone.cone import PolyhedralCone, contains, orthant, polar, positive_hull
from polarcone.linalg import DimensionMismatch, orthogonal_complement, orthonormal_basis, project_subspace
from polarcone.project import (
    active_set_lsq,
    distance,
    moreau_decompose,
    moreau_holds,
    project,
    project_cone,
    project_oracle,
)
from polarcone.sets import Ball, Cone, Halfspace, Plane, Polytope, Segment, ShiftedCone

from conftest import cone_params, make_cone, vectors

C = positive_hull([(3, 1, 0), (3, -1, 0)])

EXAMPLES = [
    (Halfspace((0.6, 0.8)), (3.0, 4.0), (0.0, 0.0)),  # u - (u·e)e
    (Halfspace((0.0, 1.0), 1.0), (2.0, 3.0), (2.0, 1.0)),
    (Cone(orthant(2)), (-1.0, 2.0), (0.0, 2.0)),
    (Ball((0.0, 0.0), 1.0), (3.0, 4.0), (0.6, 0.8)),
    (Cone(polar(C)), (1.0, 0.0, 0.0), (0.0, 0.0, 0.0)),
    (Segment((0.0, 0.0), (1.0, 0.0)), (2.0, 1.0), (1.0, 0.0)),
    (Plane((0.0, 1.0), orthonormal_basis([(1, 0)])), (5.0, -3.0), (5.0, 1.0)),
    (Polytope([(0, 0), (2, 0), (0, 2)]), (2.0, 2.0), (1.0, 1.0)),
    (ShiftedCone(orthant(2), (1.0, 1.0)), (0.0, 3.0), (1.0, 3.0)),
]


@pytest.mark.parametrize("s, u, expected", EXAMPLES)
def test_projection_examples(s, u, expected):
    assert np.allclose(project(s, u), expected, atol=1e-12)
    assert np.allclose(project_oracle(s, u), expected, atol=1e-5)


@pytest.mark.parametrize("s, u, expected", EXAMPLES)
def test_fixed_point(s, u, expected):
    p = project(s, u)
    assert np.allclose(project(s, p), p, atol=1e-12)
    assert distance(s, p) <= 1e-12


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        project(Cone(orthant(2)), (1.0, 2.0, 3.0))
    with pytest.raises(TypeError):
        project(object(), (1.0,))


def test_active_set_simplex():
    # nearest point of the standard simplex to (1, 1, 1) is its centroid
    x = active_set_lsq(np.eye(3), np.ones(3), np.ones(3, bool), simplex=True)
    assert np.allclose(x, 1 / 3)


def test_lineality_columns_are_free():
    hp = PolyhedralCone.from_constraints([(1, 0)])
    assert np.allclose(project_cone(hp, (3.0, -7.0)), (0.0, -7.0))


def test_moreau_orthant_split():
    d = moreau_decompose(orthant(2), (-1.0, 2.0))
    assert np.allclose(d.y, (0, 2)) and np.allclose(d.z, (-1, 0))
    assert d.y @ d.z == 0.0


def test_moreau_subspace_case():
    s = orthonormal_basis([(1, 2, 0), (0, 1, 1)])
    c = PolyhedralCone.from_constraints([], orthogonal_complement(s).basis, 3)
    u = np.array([1.0, -2.0, 3.0])
    d = moreau_decompose(c, u)
    assert np.allclose(d.y, project_subspace(s, u))
    assert np.allclose(d.z, project_subspace(orthogonal_complement(s), u))


def test_moreau_planar_example():
    d = moreau_decompose(C, (0.0, 0.0, 5.0))
    assert np.allclose(d.y, 0) and np.allclose(d.z, (0, 0, 5))
    assert np.allclose(project_oracle(Cone(C), d.u), d.y, atol=1e-9)
    assert np.allclose(project_oracle(Cone(polar(C)), d.u), d.z, atol=1e-9)


@given(cone_params(), st.data())
def test_fast_matches_oracle(params, data):
    c = make_cone(params)
    u = data.draw(vectors(c.ambient_dim))
    fast = project(Cone(c), u)
    res = project_oracle(Cone(c), u, full=True)
    assert res.converged
    assert np.linalg.norm(fast - res.point) <= 1e-6


@given(cone_params(), st.data())
def test_variational_inequality(params, data):
    c = make_cone(params)
    u = data.draw(vectors(c.ambient_dim))
    p = project_cone(c, u)
    assert contains(c, p, 1e-8)
    # (u - p)·(x - p) <= 0 for every generator direction x of the cone
    for g in c.generators():
        assert (u - p) @ g <= 1e-8 * (1 + np.linalg.norm(u))
    assert abs((u - p) @ p) <= 1e-8 * (1 + u @ u)


@given(cone_params(), st.data())
def test_moreau_identity(params, data):
    c = make_cone(params)
    u = data.draw(vectors(c.ambient_dim))
    assert moreau_holds(c, moreau_decompose(c, u))


@given(st.integers(2, 4), st.integers(1, 6), st.integers(0, 2**31), st.data())
def test_polytope_against_oracle(n, m, seed, data):
    rng = np.random.default_rng(seed)
    s = Polytope(rng.normal(size=(m, n)))
    u = data.draw(vectors(n))
    assert np.linalg.norm(project(s, u) - project_oracle(s, u)) <= 1e-6


@given(vectors(3), st.floats(0.1, 3.0), vectors(3))
def test_ball_nonexpansive(center, r, u):
    b = Ball(center, r)
    v = u + 0.5
    assert np.linalg.norm(project(b, u) - project(b, v)) <= np.linalg.norm(u - v) + 1e-12


@given(cone_params(), st.data())
def test_moreau_converse(params, data):
    c = make_cone(params)
    if c.rays.shape[0] == 0:
        return
    pc = polar(c)
    # y on a boundary ray, z in the polar and orthogonal to y
    i = data.draw(st.integers(0, c.rays.shape[0] - 1))
    y = data.draw(st.floats(0.1, 3.0)) * c.rays[i]
    face = PolyhedralCone.from_constraints(pc.facets, list(pc.equalities.basis) + [y], c.ambient_dim)
    w = data.draw(st.lists(st.floats(0.0, 2.0), min_size=face.generators().shape[0], max_size=face.generators().shape[0]))
    z = np.asarray(w) @ face.generators() if face.generators().shape[0] else np.zeros(c.ambient_dim)
    u = y + z
    assert np.allclose(project_cone(c, u), y, atol=1e-6)
    assert np.allclose(project_cone(pc, u), z, atol=1e-6)


@given(cone_params(), st.data())
def test_idempotent_and_nonexpansive(params, data):
    c = Cone(make_cone(params))
    u1 = data.draw(vectors(c.ambient_dim))
    u2 = data.draw(vectors(c.ambient_dim))
    p1, p2 = project(c, u1), project(c, u2)
    assert np.allclose(project(c, p1), p1, atol=1e-8)
    assert np.linalg.norm(p1 - p2) <= np.linalg.norm(u1 - u2) + 1e-8
