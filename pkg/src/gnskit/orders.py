"""Relaxed monomial orders built from a maximal gap.

Given a nonzero point h, rank x in N^d by the minimum of x_i / h_i over
the coordinates where h is nonzero, breaking ties lexicographically with
the nonzero-h coordinates read first.  Under this order h beats every
other gap of any GNS in which h is a maximal gap, which realizes maximal
gaps as Frobenius gaps constructively.

All fraction comparisons are exact integer cross-multiplications; no
floating point is involved anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from gnskit.core import (
    DimensionMismatch,
    GapSet,
    GnsError,
    Point,
    point_add,
    zero,
)

LESS = -1
EQUAL = 0
GREATER = 1


class EmptyGapSet(GnsError):
    pass


@dataclass(frozen=True)
class MaximalGapOrder:
    """Total order on N^d defined by a nonzero gap h.

    ``support`` lists the coordinate indices with h_i > 0 first (in
    original order) and the zero ones after; the tie-break reads
    coordinates in this order.
    """

    h: Point
    support: tuple[int, ...] = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        if all(c == 0 for c in self.h):
            raise GnsError("the defining gap must be nonzero")
        if any(c < 0 for c in self.h):
            raise GnsError(f"negative coordinate in {self.h}")
        nz = tuple(i for i, c in enumerate(self.h) if c > 0)
        z = tuple(i for i, c in enumerate(self.h) if c == 0)
        object.__setattr__(self, "support", nz + z)
        object.__setattr__(self, "k", len(nz))

    @property
    def dimension(self) -> int:
        return len(self.h)

    def _phi(self, x: Point) -> tuple[int, int]:
        """min over nonzero-h coordinates of x_i/h_i, as an unreduced pair."""
        if len(x) != self.dimension:
            raise DimensionMismatch(f"{x} has wrong dimension for order {self.h}")
        i0 = self.support[0]
        num, den = x[i0], self.h[i0]
        for i in self.support[1 : self.k]:
            a, b = x[i], self.h[i]
            # a/b < num/den  <=>  a*den < num*b   (positive denominators)
            if a * den < num * b:
                num, den = a, b
        return num, den

    def phi_compare(self, x: Point, y: Point) -> int:
        nx, dx = self._phi(x)
        ny, dy = self._phi(y)
        lhs = nx * dy
        rhs = ny * dx
        if lhs < rhs:
            return LESS
        if lhs > rhs:
            return GREATER
        return EQUAL

    def compare(self, x: Point, y: Point) -> int:
        c = self.phi_compare(x, y)
        if c != EQUAL:
            return c
        for i in self.support:
            if x[i] != y[i]:
                return LESS if x[i] < y[i] else GREATER
        return EQUAL

    def max(self, points) -> Point:
        best = None
        for p in points:
            if best is None or self.compare(best, p) == LESS:
                best = p
        if best is None:
            raise EmptyGapSet("maximum of an empty set")
        return best

    def to_doc(self) -> dict:
        return {"type": "maximal-gap", "h": list(self.h)}


def phi_compare(order: MaximalGapOrder, x: Point, y: Point) -> int:
    return order.phi_compare(x, y)


def compare(order: MaximalGapOrder, x: Point, y: Point) -> int:
    return order.compare(x, y)


def frobenius_gap(s: GapSet, order: MaximalGapOrder) -> Point:
    """The order-maximum of the gap set."""
    if not s.gaps:
        raise EmptyGapSet("gap set is empty")
    if order.dimension != s.dimension:
        raise DimensionMismatch("order and gap set dimensions differ")
    return order.max(s.gaps)


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    samples: int
    counterexample: dict | None = None

    def to_doc(self) -> dict:
        return {
            "passed": self.passed,
            "samples": self.samples,
            "counterexample": self.counterexample,
        }


def check_relaxed_axioms(
    order: MaximalGapOrder | Callable[[Point, Point], int],
    bound: Point,
    samples: int,
    seed: int,
) -> AxiomReport:
    """Sample triples (v, w, u) in [0, bound] and test the two axioms.

    (i) v < w implies v < w + u, and (ii) 0 < v for nonzero v.  Accepts a
    raw comparator as well, so deliberately broken orders can be probed.
    Reports the first counterexample found, in sample order.
    """
    cmp = order if callable(order) else order.compare
    rng = random.Random(seed)
    d = len(bound)
    z = zero(d)

    def draw() -> Point:
        return tuple(rng.randint(0, c) for c in bound)

    for n in range(1, samples + 1):
        v, w, u = draw(), draw(), draw()
        for p in (v, w):
            if p != z and cmp(z, p) != LESS:
                return AxiomReport(
                    False,
                    n,
                    {"axiom": "zero-least", "v": list(p)},
                )
        if cmp(v, w) == LESS and cmp(v, point_add(w, u)) != LESS:
            return AxiomReport(
                False,
                n,
                {"axiom": "monotone", "v": list(v), "w": list(w), "u": list(u)},
            )
    return AxiomReport(True, samples)
