"""Points of N^d, gap sets, and the invariants derived from them.

A gap set is the finite complement H(S) of a generalized numerical
semigroup S in N^d.  Everything downstream (genus, maximal gaps,
pseudo-Frobenius gaps, type) is a pure function of the validated gap
set, so :class:`GapSet` is immutable and safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

Point = tuple[int, ...]


class GnsError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionMismatch(GnsError):
    pass


class ZeroIsGap(GnsError):
    pass


class ClosureViolation(GnsError):
    """Two non-gaps sum to a gap, so the complement is not a semigroup."""

    def __init__(self, a: Point, b: Point):
        self.a = a
        self.b = b
        self.total = point_add(a, b)
        super().__init__(
            f"closure fails: {a} + {b} = {self.total} is a gap "
            "but neither summand is"
        )


def as_point(coords: Sequence[int], dimension: int | None = None) -> Point:
    p = tuple(int(c) for c in coords)
    if dimension is not None and len(p) != dimension:
        raise DimensionMismatch(f"expected dimension {dimension}, got {len(p)}")
    if len(p) < 1:
        raise DimensionMismatch("points need dimension >= 1")
    if any(c < 0 for c in p):
        raise GnsError(f"negative coordinate in {p}")
    return p


def zero(dimension: int) -> Point:
    return (0,) * dimension


def point_add(x: Point, y: Point) -> Point:
    return tuple(a + b for a, b in zip(x, y))


def point_sub(x: Point, y: Point) -> Point:
    """Componentwise difference; caller guarantees the result stays in N^d."""
    return tuple(a - b for a, b in zip(x, y))


def natural_leq(x: Point, y: Point) -> bool:
    """The natural partial order: every coordinate of x is <= that of y."""
    if len(x) != len(y):
        raise DimensionMismatch(f"cannot compare {x} and {y}")
    return all(a <= b for a, b in zip(x, y))


def box_points(corner: Point) -> Iterator[Point]:
    """All points x with 0 <= x <= corner, last coordinate fastest."""
    return product(*(range(c + 1) for c in corner))


def box_norm(corner: Point) -> int:
    """Number of lattice points in [0, corner]: the product of (c+1)."""
    n = 1
    for c in corner:
        n *= c + 1
    return n


def box_norm_minus_one(corner: Point) -> int:
    """The companion quantity prod(c): 0 as soon as any coordinate is 0."""
    n = 1
    for c in corner:
        n *= c
    return n


def box_index(x: Point, corner: Point) -> int:
    """Mixed-radix index of x in [0, corner], matching box_points order."""
    idx = 0
    for xi, ci in zip(x, corner):
        idx = idx * (ci + 1) + xi
    return idx


def decompositions(h: Point) -> Iterator[tuple[Point, Point]]:
    """All ways to write h = a + b with a, b nonzero points of N^d."""
    z = zero(len(h))
    for a in box_points(h):
        if a == z or a == h:
            continue
        yield a, point_sub(h, a)


@dataclass(frozen=True)
class GapSet:
    """A validated gap set: dimension d and the finite set of gaps.

    Instances are produced by :func:`validate`; constructing one directly
    skips the closure check and is only appropriate for sets already known
    to be valid.
    """

    dimension: int
    gaps: frozenset[Point]

    @cached_property
    def genus(self) -> int:
        return len(self.gaps)

    @cached_property
    def sorted_gaps(self) -> tuple[Point, ...]:
        return tuple(sorted(self.gaps))

    @cached_property
    def frobenius_allowable(self) -> frozenset[Point]:
        """Gaps maximal under the natural partial order."""
        return frozenset(
            h
            for h in self.gaps
            if not any(g != h and natural_leq(h, g) for g in self.gaps)
        )

    @cached_property
    def pseudo_frobenius(self) -> frozenset[Point]:
        """Gaps P with P + s in S for every nonzero s in S.

        The defining condition is finite: a violation P + s in H(S) names a
        gap h = P + s >= P with h - P not a gap, so it suffices to look at
        gaps above P.
        """
        return frozenset(
            p
            for p in self.gaps
            if all(
                point_sub(h, p) in self.gaps
                for h in self.gaps
                if h != p and natural_leq(p, h)
            )
        )

    @cached_property
    def tau(self) -> int:
        return len(self.frobenius_allowable)

    @cached_property
    def type(self) -> int:
        return len(self.pseudo_frobenius)

    def contains(self, x: Point) -> bool:
        """Membership in the semigroup S = N^d minus the gaps."""
        if len(x) != self.dimension:
            raise DimensionMismatch(f"{x} has wrong dimension")
        return x not in self.gaps

    def __iter__(self) -> Iterator[Point]:
        return iter(self.sorted_gaps)


def validate(dimension: int, gaps: Iterable[Sequence[int]]) -> GapSet:
    """Check that a finite point set is the gap set of a GNS.

    Raises ZeroIsGap, DimensionMismatch or ClosureViolation.  Closure only
    needs to be checked on decompositions of gaps: any violation s1+s2 of
    closure of S with s1, s2 in S has its sum inside the gap set.
    """
    if dimension < 1:
        raise DimensionMismatch("dimension must be >= 1")
    pts = frozenset(as_point(g, dimension) for g in gaps)
    if zero(dimension) in pts:
        raise ZeroIsGap("0 is always an element of the semigroup")
    for h in sorted(pts):
        for a, b in decompositions(h):
            if a not in pts and b not in pts:
                raise ClosureViolation(a, b)
    return GapSet(dimension, pts)


def is_valid(dimension: int, gaps: Iterable[Sequence[int]]) -> bool:
    try:
        validate(dimension, gaps)
    except GnsError:
        return False
    return True


def genus(s: GapSet) -> int:
    return s.genus


def frobenius_allowable(s: GapSet) -> frozenset[Point]:
    return s.frobenius_allowable


def pseudo_frobenius(s: GapSet) -> frozenset[Point]:
    return s.pseudo_frobenius


def gns_type(s: GapSet) -> int:
    """The type t(S): number of pseudo-Frobenius gaps."""
    return s.type


# --- JSON document interface -------------------------------------------------
#
# {"d": <int>, "gaps": [[int, ...], ...]} with coordinates in ascending
# index order; duplicate points are rejected.


def gap_set_from_doc(doc: dict) -> GapSet:
    if not isinstance(doc, dict) or "d" not in doc or "gaps" not in doc:
        raise GnsError('gap-set document needs keys "d" and "gaps"')
    d = doc["d"]
    if not isinstance(d, int) or d < 1:
        raise GnsError('"d" must be a positive integer')
    raw = doc["gaps"]
    if not isinstance(raw, list):
        raise GnsError('"gaps" must be a list of coordinate lists')
    pts = [as_point(g, d) for g in raw]
    if len(set(pts)) != len(pts):
        raise GnsError("duplicate points in gap list")
    return validate(d, pts)


def gap_set_to_doc(s: GapSet) -> dict:
    return {"d": s.dimension, "gaps": [list(g) for g in s.sorted_gaps]}


def load_gap_set(text: str) -> GapSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GnsError(f"malformed gap-set JSON: {e}") from e
    return gap_set_from_doc(doc)


def dump_gap_set(s: GapSet) -> str:
    return json.dumps(gap_set_to_doc(s), sort_keys=True)
