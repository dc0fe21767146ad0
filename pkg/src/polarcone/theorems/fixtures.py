"""Named positive and counterexample fixtures.

Two fixtures need objects that are deliberately *not* closed convex sets and
live only here: :class:`Parabola` (nonconvex, with a nearest-point map) and
:class:`OpenCone` (a polyhedral cone with its relative boundary removed except
for ``o``). Open sets such as the open unit ball have no nearest points at all,
so they have no place in :mod:`polarcone.sets`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from ..cone import (
    PolyhedralCone,
    cones_equal,
    in_relative_interior,
    is_subspace,
    orthant,
    polar,
    positive_hull,
)
from ..linalg import as_vector, orthonormal_basis
from ..project import project
from ..sets import Cone, Plane, Segment
from .checkers import (
    NON_UNIQUE,
    SOLVE_TOL,
    SUM_MISMATCH,
    PairVerdict,
    check_decomposition_pair,
    check_orthogonal_projection_pair,
    check_orthogonal_sum_pair,
    check_unique_sum_pair,
)
from .random import Sampler
from .separation import HypothesisViolated, orthogonal_face_complement, separate_face, separates


@dataclass(frozen=True)
class Parabola:
    """The curve ``{(x, x^2)}`` in R^2 (not convex)."""

    ambient_dim: int = 2

    def nearest(self, u) -> np.ndarray:
        a, b = as_vector(u, 2)
        # stationary points of (x-a)^2 + (x^2-b)^2: x^3 + p x + q = 0
        p, q = (1.0 - 2.0 * b) / 2.0, -a / 2.0
        disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
        if disc > 0:
            s = math.sqrt(disc)
            xs = [math.copysign(abs(-q / 2 + s) ** (1 / 3), -q / 2 + s)
                  + math.copysign(abs(-q / 2 - s) ** (1 / 3), -q / 2 - s)]
        else:
            m = 2.0 * math.sqrt(-p / 3.0)
            arg = 3.0 * q / (p * m) if p != 0 else 0.0
            theta = math.acos(max(-1.0, min(1.0, arg))) / 3.0
            xs = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)]
        best = None
        for x in xs:
            for _ in range(2):  # Newton polish
                d = 3 * x * x + p
                if d != 0:
                    x -= (x**3 + p * x + q) / d
            pt = np.array([x, x * x])
            dist = (x - a) ** 2 + (x * x - b) ** 2
            if best is None or dist < best[0]:
                best = (dist, pt)
        return best[1]

    def generators(self):
        return np.array([[0.0, 0.0], [1.0, 1.0], [-1.0, 1.0]])


@project.register
def _(s: Parabola, u):
    return s.nearest(u)


@dataclass(frozen=True, eq=False)
class OpenCone:
    """``Rint K ∪ {o}`` for a closed polyhedral cone ``K`` (not closed unless ``K`` is a subspace)."""

    closure: PolyhedralCone

    @property
    def ambient_dim(self) -> int:
        return self.closure.ambient_dim

    def contains(self, u) -> bool:
        u = as_vector(u, self.ambient_dim)
        return bool(np.all(u == 0.0)) or in_relative_interior(self.closure, u)

    def is_closed(self) -> bool:
        return is_subspace(self.closure)

    def boundary_point(self):
        """A point of the closure missing from the set, or ``None`` when closed."""
        for r in self.closure.rays:
            if not self.contains(r):
                return r
        return None


def open_pair_is_polar(e: OpenCone, f: OpenCone) -> bool:
    # a polar set is always closed, so a non-closed set is nobody's polar
    if not (e.is_closed() and f.is_closed()):
        return False
    return cones_equal(e.closure, polar(f.closure)) and cones_equal(f.closure, polar(e.closure))


@dataclass
class FixtureReport:
    name: str
    reproduced: bool
    lines: list = field(default_factory=list)
    verdict: PairVerdict | None = None


@dataclass(frozen=True, eq=False)
class Fixture:
    name: str
    first: Any
    second: Any
    theorem: int
    expected: dict
    description: str
    runner: Callable[["Fixture", int], FixtureReport]


def verdict_lines(v: PairVerdict):
    lines = [("theorem", v.theorem), ("property_holds", v.property_holds), ("samples_tested", v.samples_tested)]
    if v.witness is not None:
        lines += [("witness", v.witness), ("witness_detail", v.witness_detail)]
    if v.classified_polar_pair is not None:
        lines.append(("classified_polar_pair", v.classified_polar_pair))
    if v.classified_complementary_planes is not None:
        lines.append(("classified_complementary_planes", v.classified_complementary_planes))
    for i, (y, z) in enumerate(v.decompositions):
        lines.append((f"decomposition[{i}]", (y, z)))
    return lines


def _matches(v: PairVerdict, expected: dict) -> bool:
    return all(getattr(v, k) == val for k, val in expected.items())


def _check_runner(fx: Fixture, seed: int) -> FixtureReport:
    from .checkers import CHECKS

    n_samples = 200 if fx.theorem in (2, 3) else 12
    v = CHECKS[fx.theorem](fx.first, fx.second, Sampler(seed), n_samples)
    return FixtureReport(fx.name, _matches(v, fx.expected), verdict_lines(v), v)


def _polar_pair_runner(fx: Fixture, seed: int) -> FixtureReport:
    lines, ok = [], True
    for theorem, check, n in (
        (2, check_decomposition_pair, 200),
        (3, check_orthogonal_projection_pair, 200),
        (4, check_orthogonal_sum_pair, 6),
    ):
        v = check(fx.first, fx.second, Sampler(seed), n)
        lines.append((f"theorem_{theorem}_property_holds", v.property_holds))
        lines.append((f"theorem_{theorem}_classified_polar_pair", v.classified_polar_pair))
        ok = ok and v.property_holds and bool(v.classified_polar_pair)
    return FixtureReport(fx.name, ok, lines)


def _remark2_runner(fx: Fixture, seed: int) -> FixtureReport:
    e_open, f_open = fx.expected["open_sets"]
    v = check_orthogonal_projection_pair(fx.first, fx.second, Sampler(seed), 200)
    # E + F = R^2 for the open cones themselves: u = t(1,1) + (u - t(1,1)), t large
    sum_ok = True
    for u in Sampler(seed).points(fx.first, fx.second, 200):
        t = float(np.max(np.abs(u))) + 1.0
        y = t * np.ones(2)
        sum_ok &= e_open.contains(y) and f_open.contains(u - y)
    polar_open = open_pair_is_polar(e_open, f_open)
    gap = e_open.boundary_point()
    lines = [
        ("closures_satisfy_a_prime", v.property_holds and sum_ok),
        ("closures_classified_polar_pair", v.classified_polar_pair),
        ("open_sets_classified_polar_pair", polar_open),
        ("closure_point_missing_from_E", gap),
    ]
    ok = v.property_holds and sum_ok and not polar_open and bool(v.classified_polar_pair)
    return FixtureReport(fx.name, ok, lines, v)


def _remark3_runner(fx: Fixture, seed: int) -> FixtureReport:
    v = check_orthogonal_projection_pair(fx.first, fx.second, Sampler(seed), 200)
    worst = 0.0
    for u in Sampler(seed).points(fx.first, fx.second, 200):
        worst = max(worst, abs(project(fx.first, u) @ project(fx.second, u)) / (1 + u @ u))
    ortho = worst <= SOLVE_TOL
    lines = verdict_lines(v) + [("projections_orthogonal_on_all_samples", ortho)]
    ok = _matches(v, fx.expected) and ortho
    return FixtureReport(fx.name, ok, lines, v)


def _example_runner(fx: Fixture, seed: int) -> FixtureReport:
    C, B = fx.first.cone, fx.second.cone
    res = separate_face(C, B, seed=seed)
    expected_D = fx.expected["D"]
    d_ok = cones_equal(res.D, expected_D, 1e-9)
    s_sep_polar = separates(res.normal, C, polar(C))
    try:
        orthogonal_face_complement(C, fx.expected["printed_B"])
        printed = "accepted"
    except HypothesisViolated as exc:
        printed = f"rejected ({exc})"
    lines = [
        ("D_rays", res.D.rays),
        ("D_lineality", res.D.lineality.basis),
        ("D_matches_expected", d_ok),
        ("S_normal", res.normal),
        ("contains_B", res.contains_B),
        ("strict_sides", res.strict_sides),
        ("S_separates_C_and_polar", s_sep_polar),
        ("printed_B_reading", printed),
    ]
    ok = d_ok and res.contains_B and res.strict_sides and not s_sep_polar
    return FixtureReport(fx.name, ok, lines)


def example_cone() -> PolyhedralCone:
    """``{(x, y, 0) : x >= 3|y|}``."""
    return positive_hull([(3.0, 1.0, 0.0), (3.0, -1.0, 0.0)])


def fixtures() -> dict[str, Fixture]:
    q1, q3 = orthant(2), orthant(2, -1.0)
    upper = PolyhedralCone.from_constraints([(0.0, -1.0)])
    lower = PolyhedralCone.from_constraints([(0.0, 1.0)])
    C = example_cone()
    # canonical face: the boundary ray through (3, 1, 0); the printed (1, 3, 0) is not in C
    B = positive_hull([(3.0, 1.0, 0.0)])
    printed_B = positive_hull([(1.0, 3.0, 0.0)])
    D = PolyhedralCone.from_constraints([(1.0, 0.0, 0.0)], [(3.0, 1.0, 0.0)])

    items = [
        Fixture(
            "remark2_open_quadrants", Cone(q1), Cone(q3), 3,
            {"open_sets": (OpenCone(q1), OpenCone(q3))},
            "open quadrants with o: closures pass the weakened test, open sets are not polar",
            _remark2_runner,
        ),
        Fixture(
            "remark3_axis_intervals",
            Segment((-1.0, 0.0), (2.0, 0.0)), Segment((0.0, -1.0), (0.0, 1.0)), 3,
            {"property_holds": False, "witness_detail": SUM_MISMATCH},
            "intervals on the two axes: orthogonal projections, but E + F != R^2",
            _remark3_runner,
        ),
        Fixture(
            "remark4_halfplanes", Cone(upper), Cone(lower), 4,
            {"property_holds": False, "witness_detail": NON_UNIQUE, "classified_polar_pair": False},
            "upper and lower halfplanes: orthogonal splits exist but are not unique",
            _check_runner,
        ),
        Fixture(
            "remark5_parabola_line",
            Plane((0.0, 0.0), orthonormal_basis([(0.0, 1.0)])), Parabola(), 5,
            {"property_holds": True, "classified_complementary_planes": False},
            "y-axis and parabola y = x^2: unique sums, yet not complementary planes",
            _check_runner,
        ),
        Fixture(
            "example_s3_planar_cone", Cone(C), Cone(B), 6,
            {"D": D, "printed_B": printed_B},
            "planar cone x >= 3|y| in R^3 with a boundary ray: face separation",
            _example_runner,
        ),
        Fixture(
            "polar_pair_orthant", Cone(q1), Cone(q3), 2, {},
            "nonnegative and nonpositive quadrants", _polar_pair_runner,
        ),
        Fixture(
            "polar_pair_halfplane_ray", Cone(upper), Cone(polar(upper)), 2, {},
            "upper halfplane and the downward ray", _polar_pair_runner,
        ),
        Fixture(
            "polar_pair_s3_example", Cone(C), Cone(polar(C)), 2, {},
            "planar cone x >= 3|y| and its polar x <= -|y|/3", _polar_pair_runner,
        ),
        Fixture(
            "trivial_origin_full_space",
            Cone(positive_hull([], 2)), Cone(positive_hull([(1, 0), (-1, 0), (0, 1), (0, -1)])), 2,
            {"property_holds": True, "classified_polar_pair": True},
            "{o} and R^2", _check_runner,
        ),
    ]
    return {fx.name: fx for fx in items}


def run_fixture(name: str, seed: int = 0) -> FixtureReport:
    fx = fixtures()[name]
    return fx.runner(fx, seed)
