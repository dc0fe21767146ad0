"""Seeded randomness: an xorshift64* generator, random cones, and point samplers.

Nothing here touches global RNG state. The same seed always reproduces the
same stream bit for bit on every platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from ..cone import PolyhedralCone, polar, positive_hull
from ..sets import Cone, generators

_MASK = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


class XorShift64Star:
    """xorshift64* (Vigna 2016), seeded through splitmix64."""

    def __init__(self, seed: int = 0):
        self.state = _splitmix64(int(seed) & _MASK) or 0x9E3779B97F4A7C15
        self._spare: Optional[float] = None

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def normal(self) -> float:
        if self._spare is not None:
            v, self._spare = self._spare, None
            return v
        u1 = 1.0 - self.uniform()  # (0, 1]
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def normal_vector(self, n: int) -> np.ndarray:
        return np.array([self.normal() for _ in range(n)])

    def unit_vector(self, n: int) -> np.ndarray:
        while True:
            v = self.normal_vector(n)
            nv = np.linalg.norm(v)
            if nv > 1e-6:
                return v / nv

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.next_u64() % (hi - lo + 1)


def random_cone(
    ambient_dim: int, n_rays: int, seed: int, lineality_dim: int = 0
) -> PolyhedralCone:
    """Positive hull of ``n_rays`` uniform unit vectors, optionally plus random lines."""
    if not 1 <= ambient_dim <= 8:
        raise ValueError("ambient_dim must lie in [1, 8]")
    if not 0 <= n_rays <= 16:
        raise ValueError("n_rays must lie in [0, 16]")
    if not 0 <= lineality_dim <= ambient_dim:
        raise ValueError("lineality_dim must lie in [0, ambient_dim]")
    rng = XorShift64Star(seed)
    pts = [rng.unit_vector(ambient_dim) for _ in range(n_rays)]
    for _ in range(lineality_dim):
        v = rng.unit_vector(ambient_dim)
        pts += [v, -v]
    return positive_hull(pts, ambient_dim)


def rotate_ray(c: PolyhedralCone, angle: float, rng: XorShift64Star) -> PolyhedralCone:
    """Rebuild ``c`` with one randomly chosen ray turned by ``angle`` radians."""
    gens = list(c.rays)
    if not gens:
        raise ValueError("cone has no ray to rotate")
    i = rng.integer(0, len(gens) - 1)
    r = gens[i]
    w = rng.unit_vector(c.ambient_dim)
    w = w - (w @ r) * r
    w /= np.linalg.norm(w)
    gens[i] = math.cos(angle) * r + math.sin(angle) * w
    gens += list(c.lineality.basis) + list(-c.lineality.basis)
    return positive_hull(gens, c.ambient_dim)


@dataclass(frozen=True)
class Sampler:
    """Test points for sampled checks: structured points first, then Gaussians.

    Structured points are ``o``, the generators of both sets (and of their
    polars for cones), and pairwise sums and differences of those generators.
    Gaussian points are standard normal scaled by ``radius``.
    """

    seed: int = 0
    radius: float = 4.0
    structured: bool = True

    def points(self, e, f, n_samples: int) -> Iterator[np.ndarray]:
        n = e.ambient_dim
        count = 0
        if self.structured:
            for p in self._structured(e, f):
                if count >= n_samples:
                    return
                yield p
                count += 1
        rng = XorShift64Star(self.seed)
        while count < n_samples:
            yield self.radius * rng.normal_vector(n)
            count += 1

    def gaussian(self, n: int, n_samples: int) -> list[np.ndarray]:
        rng = XorShift64Star(self.seed)
        return [self.radius * rng.normal_vector(n) for _ in range(n_samples)]

    @staticmethod
    def _structured(e, f) -> list[np.ndarray]:
        n = e.ambient_dim
        gens = []
        for s in (e, f):
            gens += list(_safe_generators(s))
            if isinstance(s, Cone):
                gens += list(polar(s.cone).generators())
        out = [np.zeros(n)] + gens
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                out.append(gens[i] + gens[j])
                out.append(gens[i] - gens[j])
        # drop exact duplicates, keep first occurrence
        seen, uniq = set(), []
        for p in out:
            key = tuple(np.round(p, 12))
            if key not in seen:
                seen.add(key)
                uniq.append(np.array(p, dtype=float))
        return uniq


def _safe_generators(s):
    try:
        return generators(s)
    except TypeError:
        return np.zeros((0, s.ambient_dim))
