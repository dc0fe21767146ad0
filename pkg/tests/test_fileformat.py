from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polarcone.cone import cones_equal, positive_hull
from polarcone.fileformat import ParseError, load, parse, serialize, sets_equal
from polarcone.linalg import DimensionMismatch
from polarcone.sets import Ball, Cone, Halfspace, Polytope, Segment, ShiftedCone

from conftest import cone_params, make_cone

DATA = Path(__file__).parent / "data"


@pytest.mark.parametrize("path", sorted(DATA.glob("*.json")), ids=lambda p: p.stem)
def test_round_trip_data_files(path):
    d = load(path)
    again = parse(serialize(d.sets))
    assert again.dim == d.dim
    assert all(sets_equal(a, b) for a, b in zip(d.sets, again.sets))


def test_mixed_kinds():
    d = load(DATA / "mixed.json")
    kinds = [type(s).__name__ for s in d.sets]
    assert kinds == ["Plane", "Halfspace", "Ball", "Polytope", "Segment", "ShiftedCone"]
    assert d.sets[1].offset == 2.0


def test_halfspace_kind_matches_rays_kind():
    d = load(DATA / "orthant.json")
    assert cones_equal(d.sets[0].cone, positive_hull([(1, 0), (0, 1)]))


@pytest.mark.parametrize(
    "text, line, column",
    [
        ('{"dim": 2, "sets": [\n  {"kind": "ball" "center": [0, 0]}]}', 2, 19),
        ('{"dim": 2,\n "sets": [\n   {"kind": "bal", "center": [0, 0]}]}', 3, 5),
        ('{"dim": 2, "sets": [{"kind": "ball", "center": [0, 0]}]}', 1, 22),
        ('{"dim": 0, "sets": []}', 1, 1),
        ('[1, 2]', 1, 1),
        ('{"dim": 2, "sets": [{"kind": "ball", "center": [0, 0], "radius": -1}]}', 1, 22),
        ('{"dim": 2, "sets": [{"kind": "segment", "a": [0, "x"], "b": [1, 1]}]}', 1, 22),
        ('{"dim": 2, "sets": [{"kind": "halfspace", "normal": [1, 0], "colour": 1}]}', 1, 22),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_dimension_mismatch_is_not_a_parse_error():
    with pytest.raises(DimensionMismatch):
        parse('{"dim": 2, "sets": [{"kind": "ball", "center": [0, 0, 0], "radius": 1}]}')


def test_serialize_rejects_unknown():
    with pytest.raises(TypeError):
        serialize([object()])
    with pytest.raises(TypeError):
        from polarcone.theorems import Parabola

        serialize([Parabola()])
    with pytest.raises(DimensionMismatch):
        serialize([Ball((0, 0), 1), Ball((0, 0, 0), 1)])


@given(cone_params())
def test_cone_round_trip(params):
    c = Cone(make_cone(params))
    back = parse(serialize([c])).sets[0]
    assert sets_equal(c, back)


@given(
    st.lists(st.floats(-10, 10, allow_nan=False), min_size=3, max_size=3),
    st.floats(0.01, 10),
    st.integers(1, 4),
)
def test_round_trip_other_kinds(center, radius, m):
    rng = np.random.default_rng(m)
    sets = [
        Ball(center, radius),
        Halfspace(np.array(center) + 1e-3, radius),
        Polytope(rng.normal(size=(m, 3))),
        Segment(center, np.array(center) + 1.0),
        ShiftedCone(positive_hull([(1, 0, 0)]), center),
    ]
    back = parse(serialize(sets)).sets
    assert all(sets_equal(a, b, 0.0) for a, b in zip(sets, back) if not isinstance(a, ShiftedCone))
    assert sets_equal(sets[-1], back[-1])
