"""The classification ladder for gap sets.

Frobenius GNS, quasi-symmetry, quasi-irreducibility, (pseudo-)symmetry,
maximality among antichain-avoiding GNS, almost-symmetry, and both type
bounds.  Where two equivalent criteria exist, both are evaluated and the
implementation asserts that they agree; a disagreement is a bug, never a
property of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gnskit.core import (
    GapSet,
    GnsError,
    Point,
    box_norm,
    natural_leq,
    point_add,
    point_sub,
    validate,
    zero,
)
from gnskit.orders import LESS, MaximalGapOrder


class NotFrobeniusGNS(GnsError):
    pass


class DNotAntichain(GnsError):
    pass


class DNotSubsetOfGaps(GnsError):
    pass


def is_frobenius_gns(s: GapSet) -> Point | None:
    """The unique maximal gap if there is one, else None.

    Cross-check: the maximal elements of the pseudo-Frobenius set are the
    maximal gaps, so uniqueness can be read from either set.
    """
    fa = s.frobenius_allowable
    if len(fa) != 1:
        return None
    (f,) = fa
    pf_max = [
        p
        for p in s.pseudo_frobenius
        if not any(q != p and natural_leq(p, q) for q in s.pseudo_frobenius)
    ]
    assert pf_max == [f], "maximal PF gap disagrees with maximal gap"
    return f


def _semigroup_has(s: GapSet, x: Point) -> bool:
    return all(c >= 0 for c in x) and x not in s.gaps


def is_quasi_symmetric(s: GapSet) -> bool:
    """tau(S) = t(S), equivalently every gap x has some maximal gap F
    with F - x in S.  Both routes are computed and must agree."""
    by_count = s.tau == s.type
    fa = s.frobenius_allowable
    by_char = all(
        any(_semigroup_has(s, point_sub(f, x)) for f in fa if natural_leq(x, f))
        for x in s.gaps
    )
    assert by_count == by_char, f"quasi-symmetry criteria disagree on {s}"
    return by_count


def is_quasi_irreducible(s: GapSet) -> bool:
    """Every gap x has 2x maximal or F - x in S for some maximal gap F.

    Also evaluated through the pseudo-Frobenius criterion (every P in
    PF(S) has P or 2P maximal); the two must agree.
    """
    fa = s.frobenius_allowable
    by_def = all(
        point_add(x, x) in fa
        or any(_semigroup_has(s, point_sub(f, x)) for f in fa if natural_leq(x, f))
        for x in s.gaps
    )
    by_pf = all(
        p in fa or point_add(p, p) in fa for p in s.pseudo_frobenius
    )
    assert by_def == by_pf, f"quasi-irreducibility criteria disagree on {s}"
    return by_def


def is_symmetric(s: GapSet) -> bool:
    """The pseudo-Frobenius set is a single point (equivalently t = 1)."""
    return s.type == 1


def is_pseudo_symmetric(s: GapSet) -> bool:
    """PF(S) = {F/2, F} for the unique maximal gap F; needs F/2 integral."""
    f = is_frobenius_gns(s)
    if f is None:
        return False
    if any(c % 2 for c in f):
        return False
    half = tuple(c // 2 for c in f)
    return s.pseudo_frobenius == frozenset({half, f})


def is_irreducible(s: GapSet) -> bool:
    return s.tau == 1 and is_quasi_irreducible(s)


def is_maximal_avoiding(s: GapSet, avoid: frozenset[Point] | set[Point]) -> bool:
    """Is S maximal among all GNS whose gap set contains ``avoid``?

    ``avoid`` must be an antichain contained in the gaps.  S fails to be
    maximal exactly when some x in PF(S) outside ``avoid`` has 2x in S:
    adjoining that x is the minimal enlargement that still avoids the set.
    """
    avoid = frozenset(avoid)
    for a in avoid:
        if a not in s.gaps:
            raise DNotSubsetOfGaps(f"{a} is not a gap")
        if any(b != a and natural_leq(a, b) for b in avoid):
            raise DNotAntichain(f"{a} is below another member of the set")
    return not any(
        p not in avoid and _semigroup_has(s, point_add(p, p))
        for p in s.pseudo_frobenius
    )


@dataclass(frozen=True)
class TSet:
    """The set T(S) = {x | F - x is a gap, or x = F}, described by its
    finite complement {F - s | s in S nonzero, s <= F}."""

    dimension: int
    frobenius: Point
    complement: frozenset[Point]

    def is_gns(self) -> bool:
        """Closure check on the complement, same shape as gap-set validation."""
        try:
            validate(self.dimension, self.complement)
        except GnsError:
            return False
        return True

    def to_doc(self) -> dict:
        return {
            "d": self.dimension,
            "F": list(self.frobenius),
            "complement": [list(p) for p in sorted(self.complement)],
        }


def t_set(s: GapSet) -> TSet:
    f = is_frobenius_gns(s)
    if f is None:
        raise NotFrobeniusGNS("T(S) needs a unique maximal gap")
    z = zero(s.dimension)
    comp = frozenset(
        point_sub(f, x)
        for x in _box_semigroup_points(s, f)
        if x != z
    )
    assert len(comp) == box_norm(f) - s.genus - 1
    return TSet(s.dimension, f, comp)


def _box_semigroup_points(s: GapSet, corner: Point) -> list[Point]:
    from gnskit.core import box_points

    return [x for x in box_points(corner) if x not in s.gaps]


def is_almost_symmetric(s: GapSet) -> bool:
    """t(S) = 2 g(S) + 1 - |box(F)|, equivalently T(S) is itself a GNS.

    Both criteria are evaluated and must agree.
    """
    f = is_frobenius_gns(s)
    if f is None:
        raise NotFrobeniusGNS("almost-symmetry is defined for Frobenius GNS")
    by_count = s.type == 2 * s.genus + 1 - box_norm(f)
    by_closure = t_set(s).is_gns()
    assert by_count == by_closure, f"almost-symmetry criteria disagree on {s}"
    return by_count


@dataclass(frozen=True)
class TypeBounds:
    lower: Fraction
    t: int
    upper: int
    witness: dict[Point, tuple[Point, Point]]

    def to_doc(self) -> dict:
        return {
            "lower": [self.lower.numerator, self.lower.denominator],
            "lower_float": float(self.lower),
            "t": self.t,
            "upper": self.upper,
            "witness": [
                {"x": list(x), "phi": list(p), "pf": list(q)}
                for x, (p, q) in sorted(self.witness.items())
            ],
        }


def type_bounds(s: GapSet) -> TypeBounds:
    """g/(|box(F)| - g) <= t(S) <= 2g + 1 - |box(F)| with the witness map.

    For each gap x, phi(x) is the order-maximum s in S with x + s still a
    gap (the order is the one defined by F), and the witness pairs
    (phi(x), x + phi(x)) are injective with x + phi(x) pseudo-Frobenius.
    """
    f = is_frobenius_gns(s)
    if f is None:
        raise NotFrobeniusGNS("type bounds are defined for Frobenius GNS")
    order = MaximalGapOrder(f)
    nf = box_norm(f)
    witness: dict[Point, tuple[Point, Point]] = {}
    for x in s.gaps:
        best = None
        for cand in _box_semigroup_points(s, point_sub(f, x)):
            if point_add(x, cand) in s.gaps:
                if best is None or order.compare(best, cand) == LESS:
                    best = cand
        assert best is not None  # t = 0 always qualifies
        moved = point_add(x, best)
        assert moved in s.pseudo_frobenius
        witness[x] = (best, moved)
    assert len(set(witness.values())) == len(witness), "witness map not injective"
    lower = Fraction(s.genus, nf - s.genus)
    upper = 2 * s.genus + 1 - nf
    assert lower <= s.type <= upper
    return TypeBounds(lower, s.type, upper, witness)


@dataclass(frozen=True)
class Classification:
    is_frobenius: bool
    frobenius_gap: Point | None
    tau: int
    t: int
    quasi_symmetric: bool
    quasi_irreducible: bool
    symmetric: bool
    pseudo_symmetric: bool
    irreducible: bool
    almost_symmetric: bool | None

    def to_doc(self) -> dict:
        return {
            "isFrobenius": self.is_frobenius,
            "frobeniusGap": list(self.frobenius_gap) if self.frobenius_gap else None,
            "tau": self.tau,
            "t": self.t,
            "quasiSymmetric": self.quasi_symmetric,
            "quasiIrreducible": self.quasi_irreducible,
            "symmetric": self.symmetric,
            "pseudoSymmetric": self.pseudo_symmetric,
            "irreducible": self.irreducible,
            "almostSymmetric": self.almost_symmetric,
        }


def classification(s: GapSet) -> Classification:
    f = is_frobenius_gns(s)
    c = Classification(
        is_frobenius=f is not None,
        frobenius_gap=f,
        tau=s.tau,
        t=s.type,
        quasi_symmetric=is_quasi_symmetric(s),
        quasi_irreducible=is_quasi_irreducible(s),
        symmetric=is_symmetric(s),
        pseudo_symmetric=is_pseudo_symmetric(s),
        irreducible=is_irreducible(s),
        almost_symmetric=is_almost_symmetric(s) if f is not None else None,
    )
    assert c.tau <= c.t
    if c.quasi_symmetric:
        assert c.quasi_irreducible
    if c.symmetric:
        assert c.quasi_symmetric and c.is_frobenius
    if c.irreducible:
        assert c.quasi_irreducible and c.tau == 1
    if c.quasi_irreducible:
        assert c.t <= 2 * c.tau
    return c
