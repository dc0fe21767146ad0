"""Reading and writing set-description files.

A description file is a JSON document::

    {
      "dim": 3,
      "sets": [
        {"kind": "cone_rays", "rays": [[3, 1, 0], [3, -1, 0]], "lineality": []},
        {"kind": "ball", "center": [0, 0, 0], "radius": 2}
      ]
    }

Each set carries a ``kind`` and the payload keys listed in :data:`KINDS`.
Keys marked optional default to an empty list (or ``0`` for offsets).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

import numpy as np

from .cone import PolyhedralCone, cones_equal, positive_hull
from .linalg import DimensionMismatch, orthonormal_basis
from .sets import Ball, Cone, Halfspace, Plane, Polytope, Segment, ShiftedCone

# kind -> (required keys, optional keys)
KINDS = {
    "cone_rays": (("rays",), ("lineality",)),
    "cone_halfspaces": (("normals",), ("equalities",)),
    "plane": (("point",), ("directions",)),
    "halfspace": (("normal",), ("offset",)),
    "ball": (("center", "radius"), ()),
    "polytope": (("vertices",), ()),
    "segment": (("a", "b"), ()),
    "shifted_cone": (("rays", "translation"), ("lineality",)),
}


class ParseError(ValueError):
    """Malformed description file; carries a 1-based line and column."""

    def __init__(self, msg: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.msg = msg
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Description:
    dim: int
    sets: tuple


def _position(text: str, offset: int):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _kind_offsets(text: str):
    return [m.start() for m in re.finditer(r'"kind"\s*:', text)]


def _vector(value, dim, key):
    try:
        v = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise ValueError(f"'{key}' must be numeric") from None
    if v.ndim != 1:
        raise ValueError(f"'{key}' must be a flat list of numbers")
    if v.size != dim:
        raise DimensionMismatch(f"'{key}' has length {v.size}, expected {dim}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"'{key}' contains a non-finite entry")
    return v


def _vectors(value, dim, key):
    if not isinstance(value, list):
        raise ValueError(f"'{key}' must be a list of vectors")
    return [_vector(x, dim, key) for x in value]


def _number(value, key):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"'{key}' must be a number")
    return float(value)


def _build(entry: dict, dim: int):
    if not isinstance(entry, dict):
        raise ValueError("each set must be an object")
    kind = entry.get("kind")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    required, optional = KINDS[kind]
    for key in required:
        if key not in entry:
            raise ValueError(f"{kind}: missing key '{key}'")
    extra = set(entry) - set(required) - set(optional) - {"kind"}
    if extra:
        raise ValueError(f"{kind}: unexpected key '{sorted(extra)[0]}'")
    get = entry.get

    if kind in ("cone_rays", "shifted_cone"):
        lines = _vectors(get("lineality", []), dim, "lineality")
        gens = _vectors(get("rays"), dim, "rays") + lines + [-x for x in lines]
        cone = positive_hull(gens, dim)
        if kind == "cone_rays":
            return Cone(cone)
        return ShiftedCone(cone, _vector(get("translation"), dim, "translation"))
    if kind == "cone_halfspaces":
        return Cone(
            PolyhedralCone.from_constraints(
                _vectors(get("normals"), dim, "normals"),
                _vectors(get("equalities", []), dim, "equalities"),
                dim,
            )
        )
    if kind == "plane":
        dirs = _vectors(get("directions", []), dim, "directions")
        return Plane(_vector(get("point"), dim, "point"), orthonormal_basis(dirs, dim))
    if kind == "halfspace":
        return Halfspace(_vector(get("normal"), dim, "normal"), _number(get("offset", 0.0), "offset"))
    if kind == "ball":
        return Ball(_vector(get("center"), dim, "center"), _number(get("radius"), "radius"))
    if kind == "polytope":
        return Polytope(np.array(_vectors(get("vertices"), dim, "vertices")).reshape(-1, dim))
    return Segment(_vector(get("a"), dim, "a"), _vector(get("b"), dim, "b"))


def parse(text: str) -> Description:
    """Parse a description document.

    Raises
    ------
    ParseError
        Syntax or schema problems, with the position of the offending token
        (or of the offending set's ``kind`` key).
    DimensionMismatch
        A vector whose length differs from ``dim``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ParseError("'dim' must be a positive integer")
    raw = doc.get("sets")
    if not isinstance(raw, list) or not raw:
        raise ParseError("'sets' must be a non-empty list")
    unknown = set(doc) - {"dim", "sets"}
    if unknown:
        raise ParseError(f"unexpected top-level key '{sorted(unknown)[0]}'")

    offsets = _kind_offsets(text)
    out = []
    for i, entry in enumerate(raw):
        try:
            out.append(_build(entry, dim))
        except DimensionMismatch as exc:
            raise DimensionMismatch(f"set {i}: {exc}") from None
        except (ValueError, TypeError) as exc:
            line, col = _position(text, offsets[i]) if i < len(offsets) else (1, 1)
            raise ParseError(f"set {i}: {exc}", line, col) from None
    return Description(dim, tuple(out))


def load(path) -> Description:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _list(a):
    return np.asarray(a, dtype=float).tolist()


def to_dict(s) -> dict:
    """Plain-data form of a set; cones are written by their generators."""
    if isinstance(s, Cone):
        return {"kind": "cone_rays", "rays": _list(s.cone.rays), "lineality": _list(s.cone.lineality.basis)}
    if isinstance(s, ShiftedCone):
        return {
            "kind": "shifted_cone",
            "rays": _list(s.cone.rays),
            "lineality": _list(s.cone.lineality.basis),
            "translation": _list(s.translation),
        }
    if isinstance(s, Plane):
        return {"kind": "plane", "point": _list(s.point), "directions": _list(s.directions.basis)}
    if isinstance(s, Halfspace):
        return {"kind": "halfspace", "normal": _list(s.normal), "offset": float(s.offset)}
    if isinstance(s, Ball):
        return {"kind": "ball", "center": _list(s.center), "radius": float(s.radius)}
    if isinstance(s, Polytope):
        return {"kind": "polytope", "vertices": _list(s.vertices)}
    if isinstance(s, Segment):
        return {"kind": "segment", "a": _list(s.a), "b": _list(s.b)}
    raise TypeError(f"{type(s).__name__} has no file representation")


def serialize(sets) -> str:
    sets = list(sets)
    if not sets:
        raise ValueError("nothing to serialize")
    entries = [to_dict(s) for s in sets]
    dims = {s.ambient_dim for s in sets}
    if len(dims) != 1:
        raise DimensionMismatch("sets live in different spaces")
    doc = {"dim": dims.pop(), "sets": entries}
    return json.dumps(doc, indent=2) + "\n"


def sets_equal(a, b, tol: float = 1e-9) -> bool:
    """Equality of two described sets (cones compared as point sets)."""
    if type(a) is not type(b) or a.ambient_dim != b.ambient_dim:
        return False
    if isinstance(a, Cone):
        return cones_equal(a.cone, b.cone, tol)
    if isinstance(a, ShiftedCone):
        return cones_equal(a.cone, b.cone, tol) and np.allclose(a.translation, b.translation, atol=tol)
    if isinstance(a, Plane):
        return a.directions.same_span(b.directions, tol) and a.directions.residual(a.point - b.point) <= tol
    if isinstance(a, Halfspace):
        return np.allclose(a.normal, b.normal, atol=tol) and abs(a.offset - b.offset) <= tol
    if isinstance(a, Ball):
        return np.allclose(a.center, b.center, atol=tol) and abs(a.radius - b.radius) <= tol
    if isinstance(a, Polytope):
        return a.vertices.shape == b.vertices.shape and np.allclose(a.vertices, b.vertices, atol=tol)
    if isinstance(a, Segment):
        return np.allclose(a.a, b.a, atol=tol) and np.allclose(a.b, b.b, atol=tol)
    return False
