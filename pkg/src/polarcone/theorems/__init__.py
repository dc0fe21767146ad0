"""Executable checks of the polar-cone characterizations and face separation."""

from .checkers import (
    NO_REPRESENTATION,
    NON_UNIQUE,
    NOT_ORTHOGONAL,
    SUM_MISMATCH,
    PairVerdict,
    check_decomposition_pair,
    check_orthogonal_projection_pair,
    check_orthogonal_sum_pair,
    check_unique_sum_pair,
    complementary_planes,
    find_orthogonal_decompositions,
    find_sum_decompositions,
    plane_decomposition,
    polar_pair_classification,
    replay_witness,
)
from .fixtures import Fixture, OpenCone, Parabola, fixtures, run_fixture
from .random import Sampler, XorShift64Star, random_cone, rotate_ray
from .separation import (
    HypothesisViolated,
    SeparationNotFound,
    SeparationResult,
    orthogonal_face_complement,
    separate_face,
    separates,
)
