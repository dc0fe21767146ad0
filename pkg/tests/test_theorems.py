import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polarcone.cone import (
    PolyhedralCone,
    cones_equal,
    contains,
    in_relative_interior,
    orthant,
    polar,
    positive_hull,
)
from polarcone.linalg import DimensionMismatch, orthonormal_basis
from polarcone.project import moreau_decompose, project
from polarcone.sets import Ball, Cone, Plane, Segment
from polarcone.theorems.random import _splitmix64
from polarcone.theorems import (
    NON_UNIQUE,
    NOT_ORTHOGONAL,
    SUM_MISMATCH,
    HypothesisViolated,
    OpenCone,
    PairVerdict,
    Parabola,
    Sampler,
    XorShift64Star,
    check_decomposition_pair,
    check_orthogonal_projection_pair,
    check_orthogonal_sum_pair,
    check_unique_sum_pair,
    find_orthogonal_decompositions,
    find_sum_decompositions,
    fixtures,
    orthogonal_face_complement,
    plane_decomposition,
    random_cone,
    replay_witness,
    rotate_ray,
    run_fixture,
    separate_face,
    separates,
)

C = positive_hull([(3, 1, 0), (3, -1, 0)])
UPPER = PolyhedralCone.from_constraints([(0.0, -1.0)])
LOWER = PolyhedralCone.from_constraints([(0.0, 1.0)])
ORIGIN2 = positive_hull([], 2)
FULL2 = positive_hull([(1, 0), (-1, 0), (0, 1), (0, -1)])


# -- randomness ------------------------------------------------------------------


def test_xorshift_is_deterministic():
    a, b = XorShift64Star(7), XorShift64Star(7)
    assert [a.next_u64() for _ in range(5)] == [b.next_u64() for _ in range(5)]
    assert XorShift64Star(7).next_u64() != XorShift64Star(8).next_u64()


def test_seeding_matches_reference_splitmix():
    # published first splitmix64 output for state 0
    assert _splitmix64(0) == 0xE220A8397B1DCDAF


def test_xorshift_frozen_stream():
    r = XorShift64Star(0)
    assert [r.next_u64() for _ in range(3)] == [
        8916199331640804048,
        16032783972208265725,
        12954103179475586193,
    ]


def test_uniform_range_and_moments():
    r = XorShift64Star(3)
    xs = np.array([r.uniform() for _ in range(20000)])
    assert xs.min() >= 0.0 and xs.max() < 1.0
    assert abs(xs.mean() - 0.5) < 0.01
    ns = np.array([r.normal() for _ in range(20000)])
    assert abs(ns.mean()) < 0.03 and abs(ns.std() - 1) < 0.03


def test_random_cone_examples():
    assert random_cone(2, 0, 123).is_trivial()
    a, b = random_cone(3, 4, 42), random_cone(3, 4, 42)
    assert np.array_equal(a.rays, b.rays)
    c = random_cone(4, 8, 7)
    assert cones_equal(polar(polar(c)), c)
    with pytest.raises(ValueError):
        random_cone(9, 2, 0)
    with pytest.raises(ValueError):
        random_cone(3, 17, 0)


def test_sampler_is_deterministic():
    s = Sampler(5)
    p1 = list(s.points(Cone(orthant(2)), Cone(UPPER), 40))
    p2 = list(s.points(Cone(orthant(2)), Cone(UPPER), 40))
    assert len(p1) == 40
    assert all(np.array_equal(a, b) for a, b in zip(p1, p2))
    assert np.array_equal(p1[0], np.zeros(2))


# -- sum of projections ------------------------------------------------------------


def test_polar_pair_holds():
    v = check_decomposition_pair(Cone(orthant(2)), Cone(polar(orthant(2))))
    assert v.property_holds and v.classified_polar_pair and v.witness is None


def test_origin_and_full_space():
    v = check_decomposition_pair(Cone(positive_hull([], 1)), Cone(positive_hull([(1,), (-1,)])))
    assert v.property_holds and v.classified_polar_pair


def test_orthant_with_itself_fails():
    v = check_decomposition_pair(Cone(orthant(2)), Cone(orthant(2)))
    assert not v.property_holds and v.witness_detail == SUM_MISMATCH
    assert v.classified_polar_pair is False
    # at u = (1, 1) both projections are u, so the sum is (2, 2)
    u = np.array([1.0, 1.0])
    assert np.allclose(project(Cone(orthant(2)), u) * 2, (2, 2))
    assert replay_witness(Cone(orthant(2)), Cone(orthant(2)), v) == SUM_MISMATCH


def test_verdict_invariants():
    with pytest.raises(ValueError):
        PairVerdict(2, False)
    with pytest.raises(ValueError):
        PairVerdict(2, True, witness=np.zeros(2), witness_detail=SUM_MISMATCH)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        check_decomposition_pair(Cone(orthant(2)), Cone(orthant(3)))


# -- orthogonal projections ---------------------------------------------------------


def test_orthogonal_projection_polar_pair():
    v = check_orthogonal_projection_pair(Cone(C), Cone(polar(C)))
    assert v.property_holds


def test_axis_intervals():
    e, f = Segment((-1.0, 0.0), (2.0, 0.0)), Segment((0.0, -1.0), (0.0, 1.0))
    v = check_orthogonal_projection_pair(e, f)
    assert not v.property_holds and v.witness_detail == SUM_MISMATCH
    assert replay_witness(e, f, v) == SUM_MISMATCH


def test_not_orthogonal_witness():
    e, f = Cone(orthant(2)), Cone(FULL2)
    v = check_orthogonal_projection_pair(e, f)
    assert not v.property_holds and v.witness_detail == NOT_ORTHOGONAL
    assert replay_witness(e, f, v) == NOT_ORTHOGONAL


# -- orthogonal sums ------------------------------------------------------------------


def test_halfplanes_family():
    sols = find_orthogonal_decompositions(Cone(UPPER), Cone(LOWER), np.array([1.0, 0.0]))
    assert len(sols) >= 2
    for y, z in sols:
        s, a = y
        assert np.isclose(a * a, s * (1 - s), atol=1e-7)
        assert np.allclose(y + z, (1, 0))
    # the s = 1/2 member of the family
    y = np.array([0.5, 0.5])
    assert abs(y @ (np.array([1.0, 0.0]) - y)) < 1e-15


def test_polar_pair_single_orthogonal_sum():
    for u in Sampler(1).points(Cone(C), Cone(polar(C)), 20):
        sols = find_orthogonal_decompositions(Cone(C), Cone(polar(C)), u)
        assert len(sols) == 1
        d = moreau_decompose(C, u)
        assert np.allclose(sols[0][0], d.y, atol=1e-6)


def test_origin_full_space_single_split():
    u = np.array([2.0, -3.0])
    sols = find_orthogonal_decompositions(Cone(ORIGIN2), Cone(FULL2), u)
    assert len(sols) == 1 and np.allclose(sols[0][0], 0) and np.allclose(sols[0][1], u)


def test_halfplanes_verdict_replays():
    e, f = Cone(UPPER), Cone(LOWER)
    v = check_orthogonal_sum_pair(e, f, n_samples=10)
    assert not v.property_holds and v.witness_detail == NON_UNIQUE
    assert len(v.decompositions) >= 2
    assert replay_witness(e, f, v) == NON_UNIQUE


def test_orthogonal_sum_needs_coverage():
    e, f = Cone(orthant(2)), Cone(orthant(2))
    v = check_orthogonal_sum_pair(e, f, n_samples=20)
    assert not v.property_holds


# -- unique sums -----------------------------------------------------------------------


def test_coordinate_axes_split():
    e = Plane((0.0, 0.0), orthonormal_basis([(1, 0)]))
    f = Plane((0.0, 0.0), orthonormal_basis([(0, 1)]))
    v = check_unique_sum_pair(e, f, n_samples=10)
    assert v.property_holds and v.classified_complementary_planes
    y, z = plane_decomposition(e, f, (3.0, -4.0))
    assert np.allclose(y, (3, 0)) and np.allclose(z, (0, -4))


def test_parabola_line():
    e = Plane((0.0, 0.0), orthonormal_basis([(0, 1)]))
    v = check_unique_sum_pair(e, Parabola(), n_samples=8)
    assert v.property_holds and v.classified_complementary_planes is False
    sols = find_sum_decompositions(e, Parabola(), np.array([3.0, -2.0]))
    assert len(sols) == 1 and np.allclose(sols[0][1], (3, 9))


def test_overlapping_lines_not_unique():
    line = Plane((0.0,), orthonormal_basis([(1,)]))
    v = check_unique_sum_pair(line, line, n_samples=5)
    assert not v.property_holds and v.witness_detail == NON_UNIQUE
    assert replay_witness(line, line, v) == NON_UNIQUE


@given(st.floats(-4, 4), st.floats(-4, 4))
def test_parabola_nearest_is_global(a, b):
    p = Parabola().nearest((a, b))
    xs = np.linspace(-6, 6, 24001)
    d = np.min((xs - a) ** 2 + (xs**2 - b) ** 2)
    assert np.isclose(p[1], p[0] ** 2)
    assert (p[0] - a) ** 2 + (p[1] - b) ** 2 <= d + 1e-9


# -- open cones --------------------------------------------------------------------------


def test_open_cone():
    q = OpenCone(orthant(2))
    assert q.contains((0.0, 0.0)) and q.contains((1.0, 1.0))
    assert not q.contains((1.0, 0.0)) and not q.is_closed()
    assert q.boundary_point() is not None
    line = OpenCone(positive_hull([(1, 0), (-1, 0)]))
    assert line.is_closed() and line.boundary_point() is None


# -- separation ---------------------------------------------------------------------------


def test_face_complement_example():
    d = orthogonal_face_complement(C, positive_hull([(3, 1, 0)]))
    # {(-y/3, y, z) : y >= 0}
    expected = positive_hull([(-1, 3, 0), (0, 0, 1), (0, 0, -1)])
    assert cones_equal(d, expected, 1e-9)


def test_face_complement_of_lineality_face():
    hp = PolyhedralCone.from_constraints([(1.0, 0.0)])
    assert cones_equal(orthogonal_face_complement(hp, positive_hull([], 2)), polar(hp))


def test_face_complement_orthant():
    d = orthogonal_face_complement(orthant(2), positive_hull([(1, 0)]))
    assert cones_equal(d, positive_hull([(0, -1)]))


def test_separation_example():
    r = separate_face(C, positive_hull([(3, 1, 0)]))
    assert r.S.rank == 2
    assert r.S.same_span(orthonormal_basis([(3, 1, 0), (0, 0, 1)]))
    assert abs(abs(r.normal @ np.array([1, -3, 0])) / np.sqrt(10) - 1) < 1e-9
    assert r.contains_B and r.strict_sides
    assert not separates(r.normal, C, polar(C))


def test_separation_halfplane_line():
    hp = PolyhedralCone.from_constraints([(1.0, 0.0)])
    r = separate_face(hp, positive_hull([(0, 1), (0, -1)]))
    assert np.allclose(np.abs(r.normal), (1, 0))
    assert r.strict_sides


def test_separation_orthant_ray():
    r = separate_face(orthant(2), positive_hull([(1, 0)]))
    assert np.allclose(np.abs(r.normal), (0, 1))
    assert separates(r.normal, orthant(2), r.D)


@pytest.mark.parametrize(
    "c, b, msg",
    [
        (C, positive_hull([(1, 3, 0)]), "not contained"),
        (C, positive_hull([(1, 0, 0)]), "relative interior"),
        (positive_hull([(1, 0), (-1, 0)]), positive_hull([], 2), "subspace"),
    ],
)
def test_separation_hypotheses(c, b, msg):
    with pytest.raises(HypothesisViolated, match=msg):
        separate_face(c, b)


@given(st.integers(2, 5), st.integers(0, 2**31))
def test_separation_random_pointed(n, seed):
    rng = XorShift64Star(seed)
    rays = [np.abs(rng.normal_vector(n)) + 0.1 for _ in range(n + 2)]
    c = positive_hull(rays)
    b = positive_hull([c.rays[rng.integer(0, c.rays.shape[0] - 1)]])
    r = separate_face(c, b, seed=seed)
    assert r.contains_B and r.strict_sides and r.S.rank == n - 1
    # D sits in the relative boundary of the polar unless it is inside its lineality
    pc = polar(c)
    if not all(pc.lineality.contains(g) for g in r.D.generators()):
        assert not any(in_relative_interior(pc, g) for g in r.D.generators())


def test_example_normal_by_brute_force():
    # scan unit normals in the xy-plane; score the worst violation of the sign pattern
    b = np.array([3.0, 1.0, 0.0])
    d = orthogonal_face_complement(C, positive_hull([b]))
    thetas = np.linspace(0, 2 * np.pi, 72000, endpoint=False)
    E = np.stack([np.cos(thetas), np.sin(thetas), np.zeros_like(thetas)], axis=1)
    viol = np.maximum.reduce([
        np.abs(E @ b),
        np.max(E @ C.rays.T, axis=1),
        np.max(-(E @ d.generators().T), axis=1),
    ])
    best = E[np.argmin(viol)]
    near = E[viol <= 1e-3]
    assert np.all(np.linalg.norm(near - best, axis=1) < 1e-3)
    r = separate_face(C, positive_hull([b]))
    assert np.allclose(best, r.normal, atol=1e-4)
    assert np.allclose(r.normal, np.array([-1.0, 3.0, 0.0]) / np.sqrt(10))


@pytest.mark.parametrize("seed", range(10))
def test_orthogonal_projection_checker_consistency(seed):
    c = random_cone(2 + seed % 3, 2 + seed % 4, 500 + seed)
    pc = polar(c)
    v = check_orthogonal_projection_pair(Cone(c), Cone(pc), Sampler(seed), 100)
    assert v.property_holds and v.classified_polar_pair
    if pc.rays.shape[0]:
        f = rotate_ray(pc, 0.2, XorShift64Star(seed))
        if not cones_equal(f, pc):
            v = check_orthogonal_projection_pair(Cone(c), Cone(f), Sampler(seed), 500)
            assert not v.property_holds and v.classified_polar_pair is False
            assert replay_witness(Cone(c), Cone(f), v) == v.witness_detail


def test_rotate_ray_changes_cone():
    c = random_cone(3, 5, 1)
    d = rotate_ray(c, 0.2, XorShift64Star(1))
    assert not cones_equal(c, d)


# -- fixtures ---------------------------------------------------------------------------------


@pytest.mark.parametrize("name", list(fixtures()))
def test_fixture_reproduces(name):
    rep = run_fixture(name)
    assert rep.reproduced, rep.lines


def test_fixture_verdicts_replay():
    for name in ("remark3_axis_intervals", "remark4_halfplanes"):
        fx = fixtures()[name]
        rep = run_fixture(name)
        assert replay_witness(fx.first, fx.second, rep.verdict) == rep.verdict.witness_detail
