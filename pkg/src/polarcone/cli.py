"""``polarcone`` command-line interface.

Exit codes: 0 success, 1 fixture not reproduced, 2 witness found,
64 usage or parse error, 65 dimension mismatch, 66 hypothesis violated,
70 separation not found.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

import numpy as np

from .cone import PolyhedralCone, polar
from .fileformat import ParseError, load
from .linalg import DimensionMismatch, as_vector
from .project import distance, moreau_decompose, project
from .sets import Cone
from .theorems.checkers import CHECKS
from .theorems.fixtures import fixtures, run_fixture, verdict_lines
from .theorems.random import Sampler
from .theorems.separation import HypothesisViolated, SeparationNotFound, separate_face

EXIT_OK = 0
EXIT_NOT_REPRODUCED = 1
EXIT_WITNESS = 2
EXIT_PARSE = 64
EXIT_DIM = 65
EXIT_HYPOTHESIS = 66
EXIT_SEPARATION = 70

DEFAULT_SAMPLES = {2: 200, 3: 200, 4: 50, 5: 50}


class UsageError(Exception):
    pass


# -- rendering -------------------------------------------------------------------


def fmt_float(x) -> str:
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s


def fmt_vector(v) -> str:
    return "(" + ", ".join(fmt_float(x) for x in np.ravel(v)) + ")"


def render_value(value, indent: str = "  ") -> list[str]:
    """Lines for one value; the first line continues the ``key:`` line."""
    if isinstance(value, (bool, np.bool_)):
        return ["true" if value else "false"]
    if value is None:
        return ["none"]
    if isinstance(value, (int, np.integer)):
        return [str(int(value))]
    if isinstance(value, (float, np.floating)):
        return [fmt_float(value)]
    if isinstance(value, tuple) and len(value) == 2:
        return [f"y={fmt_vector(value[0])} z={fmt_vector(value[1])}"]
    if isinstance(value, np.ndarray):
        if value.ndim == 1:
            return [fmt_vector(value)]
        if value.shape[0] == 0:
            return ["[]"]
        return [""] + [indent + fmt_vector(row) for row in value]
    return [str(value)]


def render(pairs) -> str:
    out = []
    for key, value in pairs:
        first, *rest = render_value(value)
        out.append(f"{key}: {first}".rstrip())
        out.extend(rest)
    return "\n".join(out) + "\n"


def cone_lines(c: PolyhedralCone, prefix: str = ""):
    return [
        (prefix + "rays", c.rays),
        (prefix + "lineality", c.lineality.basis),
        (prefix + "facets", c.facets),
        (prefix + "equalities", c.equalities.basis),
    ]


# -- input -----------------------------------------------------------------------


def _sets(args):
    if args.fixture is not None:
        catalog = fixtures()
        if args.fixture not in catalog:
            raise UsageError(f"unknown fixture {args.fixture!r}")
        fx = catalog[args.fixture]
        return (fx.first, fx.second)
    if args.file is None:
        raise UsageError("an input FILE or --fixture NAME is required")
    try:
        return load(args.file).sets
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None


def _need(sets, count, what):
    if len(sets) < count:
        raise UsageError(f"{what} needs {count} set(s), got {len(sets)}")
    return sets[:count]


def _cone(s, what) -> PolyhedralCone:
    if not isinstance(s, Cone):
        raise UsageError(f"{what} needs a cone, got {type(s).__name__}")
    return s.cone


def _point(text, dim):
    try:
        values = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse point {text!r}") from None
    return as_vector(values, dim)


# -- commands --------------------------------------------------------------------


def cmd_polar(args) -> int:
    (s,) = _need(_sets(args), 1, "polar")
    pc = polar(_cone(s, "polar"))
    sys.stdout.write(render(cone_lines(pc, "polar.")))
    return EXIT_OK


def cmd_project(args) -> int:
    (s,) = _need(_sets(args), 1, "project")
    u = _point(args.point, s.ambient_dim)
    sys.stdout.write(render([("projection", project(s, u)), ("distance", distance(s, u))]))
    return EXIT_OK


def cmd_decompose(args) -> int:
    (s,) = _need(_sets(args), 1, "decompose")
    c = _cone(s, "decompose")
    d = moreau_decompose(c, _point(args.point, c.ambient_dim))
    sys.stdout.write(
        render([
            ("u", d.u), ("y", d.y), ("z", d.z),
            ("residual_sum", d.residual_sum), ("residual_orth", d.residual_orth),
        ])
    )
    return EXIT_OK


def cmd_check(args) -> int:
    e, f = _need(_sets(args), 2, "check")
    if e.ambient_dim != f.ambient_dim:
        raise DimensionMismatch("the two sets live in different spaces")
    n = args.samples if args.samples is not None else DEFAULT_SAMPLES[args.theorem]
    v = CHECKS[args.theorem](e, f, Sampler(args.seed), n)
    sys.stdout.write(render(verdict_lines(v)))
    return EXIT_OK if v.property_holds else EXIT_WITNESS


def cmd_separate(args) -> int:
    c, b = _need(_sets(args), 2, "separate")
    res = separate_face(_cone(c, "separate"), _cone(b, "separate"), seed=args.seed)
    lines = [("normal", res.normal), ("S", res.S.basis), ("S_rank", res.S.rank)]
    lines += cone_lines(res.D, "D.")
    lines += [("contains_B", res.contains_B), ("strict_sides", res.strict_sides)]
    sys.stdout.write(render(lines))
    return EXIT_OK


def cmd_fixtures(args) -> int:
    catalog = fixtures()
    if args.list:
        for name, fx in catalog.items():
            sys.stdout.write(f"{name}\ttheorem {fx.theorem}\t{fx.description}\n")
        return EXIT_OK
    if args.run not in catalog:
        raise UsageError(f"unknown fixture {args.run!r}")
    rep = run_fixture(args.run, seed=args.seed)
    sys.stdout.write(render([("fixture", rep.name)] + rep.lines + [("reproduced", rep.reproduced)]))
    return EXIT_OK if rep.reproduced else EXIT_NOT_REPRODUCED


# -- parser ----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="polarcone", description="Polar cones, projections and decomposition checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", nargs="?", help="set-description file (JSON)")
        sp.add_argument("--fixture", metavar="NAME", help="use the sets of a catalog fixture instead of FILE")
        sp.add_argument("--seed", type=int, default=0)
        return sp

    with_input("polar", "print the polar cone in both representations").set_defaults(func=cmd_polar)
    sp = with_input("project", "project a point onto the first set")
    sp.add_argument("--point", required=True, help="comma-separated coordinates, e.g. --point=-1,2")
    sp.set_defaults(func=cmd_project)
    sp = with_input("decompose", "Moreau split of a point for the first set (a cone)")
    sp.add_argument("--point", required=True)
    sp.set_defaults(func=cmd_decompose)
    sp = with_input("check", "sampled verdict for a pair of sets")
    sp.add_argument("--theorem", type=int, choices=sorted(CHECKS), required=True)
    sp.add_argument("--samples", type=int, default=None)
    sp.set_defaults(func=cmd_check)
    with_input("separate", "separate a cone from the complement of a boundary face").set_defaults(
        func=cmd_separate
    )

    sp = sub.add_parser("fixtures", help="list or run catalog fixtures")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--run", metavar="NAME")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_fixtures)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionMismatch as exc:
        print(f"dimension mismatch: {exc}", file=sys.stderr)
        return EXIT_DIM
    except HypothesisViolated as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except SeparationNotFound as exc:
        print(f"separation not found: {exc}", file=sys.stderr)
        return EXIT_SEPARATION


if __name__ == "__main__":
    sys.exit(main())
