"""Deterministic constructions and seeded random instance generators.

Randomness comes from NumPy's PCG64 bit generator, whose raw 64-bit output
stream is fixed for a given seed on every platform and NumPy release.
Only raw words are consumed; bounded integers are drawn by rejection, so
no floating point or version-dependent sampling routine is involved.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .geometry import COORD_CAP, Point, orientation
from .graph import GeometricGraph, build_graph

MAX_POINT_ATTEMPTS = 10_000
DEFAULT_BOX = 10**6
KINDS = ("extremal_gnk", "disjoint_stars", "random_convex", "random_general", "convex_complete")


class GenerationError(ValueError):
    pass


class SeededSource:
    """Integer-only random source over PCG64 raw output."""

    def __init__(self, seed: int):
        self.seed = seed
        self._bits = np.random.PCG64(seed)

    def word(self) -> int:
        return int(self._bits.random_raw())

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        # largest multiple of bound that fits in 64 bits
        limit = (2**64 // bound) * bound
        while True:
            w = self.word()
            if w < limit:
                return w % bound

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def bernoulli(self, p: Fraction) -> bool:
        if p.numerator == 0:
            return False
        if p == 1:
            return True
        return self.below(p.denominator) < p.numerator


def derive_seed(master_seed: int, index: int) -> int:
    """64-bit per-instance seed: SeedSequence(master_seed, spawn_key=(index,)) state word."""
    seq = np.random.SeedSequence(master_seed, spawn_key=(index,))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def _as_probability(p) -> Fraction:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise GenerationError(f"edge probability {p} is outside [0, 1]")
    return p


def convex_position_points(n: int) -> list[Point]:
    """``n`` integer points in strictly convex position, listed counterclockwise.

    Points sit on the parabola ``(t, t^2)`` for ``t = i - n // 2`` and are
    then mapped by the integer shear ``(x, y) -> (x + y, y - 2x)``
    (determinant 3, so orientation is preserved).
    """
    if n < 1:
        raise GenerationError("need at least one point")
    pts = []
    for i in range(n):
        t = i - n // 2
        x, y = t, t * t
        pts.append(Point(x + y, y - 2 * x))
    if any(abs(c) > COORD_CAP for p in pts for c in p):
        raise GenerationError(f"n = {n} exceeds the coordinate cap")
    return pts


def _sample_edges(n: int, p: Fraction, source: SeededSource) -> list[tuple[int, int]]:
    return [(i, j) for i, j in combinations(range(n), 2) if source.bernoulli(p)]


def extremal_offsets(n: int, k: int) -> set[int]:
    lo, hi = (n - k - 1) // 2, (n + k + 1) // 2
    return {d % n for d in range(lo, hi + 1)}


def extremal_gnk(n: int, k: int, strict: bool = False) -> GeometricGraph:
    """The convex graph joining ``x_i x_j`` when ``j - i`` is one of the ``k + 2`` middle residues mod ``n``.

    ``n`` and ``k`` must have different parity with ``n - 2 > k >= 2``;
    ``strict`` additionally demands ``k > 2``.
    """
    if (n - k) % 2 == 0:
        raise GenerationError(f"n = {n} and k = {k} must have different parity")
    if not n - 2 > k:
        raise GenerationError(f"need n - 2 > k, got n = {n}, k = {k}")
    if k < 2 or (strict and k < 3):
        raise GenerationError(f"k = {k} is below the allowed range (k >= {3 if strict else 2})")
    offsets = extremal_offsets(n, k)
    edges = [(i, j) for i, j in combinations(range(n), 2) if (j - i) % n in offsets]
    return build_graph(convex_position_points(n), edges, name=f"G_{n},{k}")


def convex_complete(n: int) -> GeometricGraph:
    if n < 1:
        raise GenerationError("need at least one point")
    return build_graph(convex_position_points(n), combinations(range(n), 2), name=f"K_{n}-convex")


def convex_cycle(n: int) -> GeometricGraph:
    if n < 3:
        raise GenerationError("a cycle needs at least three points")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return build_graph(convex_position_points(n), edges, name=f"C_{n}-convex")


def disjoint_stars(n: int) -> GeometricGraph:
    """Two copies of the star with ``n`` leaves on complementary arcs of a convex ``2n + 2``-gon."""
    if n < 1:
        raise GenerationError("stars need at least one leaf")
    pts = convex_position_points(2 * n + 2)
    first = [(0, i) for i in range(1, n + 1)]
    second = [(n + 1, i) for i in range(n + 2, 2 * n + 2)]
    return build_graph(pts, first + second, name=f"2S_{n}")


def random_convex_graph(n: int, p, seed: int) -> GeometricGraph:
    if n < 3:
        raise GenerationError("random convex graphs need n >= 3")
    p = _as_probability(p)
    source = SeededSource(seed)
    return build_graph(convex_position_points(n), _sample_edges(n, p, source), name=f"convex-{n}-{p}-{seed}")


def random_general_points(n: int, source: SeededSource, box: int) -> list[Point]:
    """Uniform points in ``[-box, box]^2``, resampling any point that breaks general position."""
    pts: list[Point] = []
    seen: set[Point] = set()
    for _ in range(n):
        for _attempt in range(MAX_POINT_ATTEMPTS):
            cand = Point(source.between(-box, box), source.between(-box, box))
            if cand in seen:
                continue
            if any(orientation(a, b, cand) == 0 for a, b in combinations(pts, 2)):
                continue
            break
        else:
            raise GenerationError(
                f"no general-position point found after {MAX_POINT_ATTEMPTS} attempts (box {box} too small for n = {n})"
            )
        pts.append(cand)
        seen.add(cand)
    return pts


def random_general_graph(n: int, p, seed: int, box: int = DEFAULT_BOX) -> GeometricGraph:
    if n < 1:
        raise GenerationError("need at least one point")
    if not 1 <= box <= COORD_CAP:
        raise GenerationError(f"box {box} must lie in [1, 2^30]")
    p = _as_probability(p)
    source = SeededSource(seed)
    pts = random_general_points(n, source, box)
    return build_graph(pts, _sample_edges(n, p, source), name=f"general-{n}-{p}-{seed}")


@dataclass(frozen=True)
class GenSpec:
    """A fully resolved generator request; ``generate(spec)`` is a pure function of it."""

    kind: str
    n: int
    k: int | None = None
    p: Fraction | None = None
    seed: int | None = None
    box: int = DEFAULT_BOX
    strict: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GenerationError(f"unknown generator kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.kind == "extremal_gnk" and self.k is None:
            raise GenerationError("extremal_gnk needs k")
        if self.kind in ("random_convex", "random_general"):
            if self.p is None or self.seed is None:
                raise GenerationError(f"{self.kind} needs p and seed")
            object.__setattr__(self, "p", _as_probability(self.p))
            if not 0 <= self.seed < 2**64:
                raise GenerationError("seed must be an unsigned 64-bit integer")

    def to_dict(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if v is not None}
        if self.p is not None:
            out["p"] = str(self.p)
        if self.kind != "random_general":
            out.pop("box", None)
        if self.kind != "extremal_gnk":
            out.pop("strict", None)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> GenSpec:
        data = dict(data)
        if "p" in data and data["p"] is not None:
            data["p"] = Fraction(data["p"])
        return cls(**data)


def generate(spec: GenSpec) -> GeometricGraph:
    if spec.kind == "extremal_gnk":
        return extremal_gnk(spec.n, spec.k, strict=spec.strict)
    if spec.kind == "disjoint_stars":
        return disjoint_stars(spec.n)
    if spec.kind == "convex_complete":
        return convex_complete(spec.n)
    if spec.kind == "random_convex":
        return random_convex_graph(spec.n, spec.p, spec.seed)
    return random_general_graph(spec.n, spec.p, spec.seed, spec.box)
