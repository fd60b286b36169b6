"""Exact counting of Frobenius GNS with a prescribed Frobenius gap.

A GNS S has Frobenius gap F exactly when F is a gap and every gap lies
in the box [0, F]; S then contains the minimal semigroup S_F (zero plus
everything escaping the box) and is determined by its trace on the
box minus {0, F}.  The main counter is a depth-first search over those
membership choices, pruned so that every leaf is valid:

* points are decided in a linear extension of the natural partial
  order, so when x is decided all decompositions x = a + b are decided;
* "x is a gap" is refused if some decomposition has both parts chosen
  into S (closure would fail at x);
* "x in S" is refused if F - x is already in S, or 2x = F (F itself
  would land in S).

``brute_force_count`` is the independent oracle: it visits all
2^(|box|-2) subsets, accepting by an incremental closure check that
shares nothing with the pruned search.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from gnskit.core import (
    GapSet,
    GnsError,
    Point,
    as_point,
    box_norm,
    box_points,
    decompositions,
    point_add,
    point_sub,
    natural_leq,
    zero,
)

DEFAULT_LIMIT = 30
DEFAULT_LIST_LIMIT = 24  # materializing gap sets costs far more than counting
BRUTE_FORCE_LIMIT = 16

_UNDECIDED, _IN, _OUT = 0, 1, 2


class LimitExceeded(GnsError):
    pass


class Mode(Enum):
    COUNT_ONLY = "count"
    MATERIALIZE = "materialize"


@dataclass(frozen=True)
class EnumTask:
    """The search plan for one Frobenius gap F."""

    F: Point
    free_points: tuple[Point, ...]
    mode: Mode

    @property
    def dimension(self) -> int:
        return len(self.F)


def plan(F: Point, mode: Mode = Mode.COUNT_ONLY) -> EnumTask:
    """Free points of the open box in a fixed linear extension (graded lex)."""
    z = zero(len(F))
    pts = sorted(
        (p for p in box_points(F) if p != z and p != F),
        key=lambda p: (sum(p), p),
    )
    return EnumTask(F, tuple(pts), mode)


class _Search:
    def __init__(self, task: EnumTask):
        self.task = task
        pts = task.free_points
        index = {p: i for i, p in enumerate(pts)}
        F = task.F
        # decomposition pairs of each free point, as indices; both parts of
        # any decomposition precede the point in the linear extension
        self.pairs: list[list[tuple[int, int]]] = []
        for p in pts:
            self.pairs.append(
                sorted({tuple(sorted((index[a], index[b]))) for a, b in decompositions(p)})
            )
        # partner[i] = index of F - p, or -1 when 2p = F ("in" always refused)
        self.partner = []
        for p in pts:
            q = point_sub(F, p)
            self.partner.append(-1 if q == p else index[q])
        self.n = len(pts)

    def _can_reject(self, state: list[int], i: int) -> bool:
        return not any(
            state[a] == _IN and state[b] == _IN for a, b in self.pairs[i]
        )

    def _can_accept(self, state: list[int], i: int) -> bool:
        j = self.partner[i]
        return j >= 0 and state[j] != _IN

    def count(self, state: list[int], i: int) -> int:
        """Leaves below the current partial assignment, out-branch first."""
        if i == self.n:
            return 1
        total = 0
        if self._can_reject(state, i):
            state[i] = _OUT
            total += self.count(state, i + 1)
        if self._can_accept(state, i):
            state[i] = _IN
            total += self.count(state, i + 1)
        state[i] = _UNDECIDED
        return total

    def leaves(self, state: list[int], i: int) -> Iterator[frozenset[Point]]:
        if i == self.n:
            yield frozenset(
                (self.task.F,)
                + tuple(p for p, st in zip(self.task.free_points, state) if st == _OUT)
            )
            return
        if self._can_reject(state, i):
            state[i] = _OUT
            yield from self.leaves(state, i + 1)
        if self._can_accept(state, i):
            state[i] = _IN
            yield from self.leaves(state, i + 1)
        state[i] = _UNDECIDED

    def prefixes(self, depth: int) -> list[list[int]]:
        """Viable partial assignments of the first ``depth`` points, in the
        same out-first order the sequential search would visit them."""
        out: list[list[int]] = []

        def walk(state: list[int], i: int):
            if i == depth:
                out.append(state.copy())
                return
            if self._can_reject(state, i):
                state[i] = _OUT
                walk(state, i + 1)
            if self._can_accept(state, i):
                state[i] = _IN
                walk(state, i + 1)
            state[i] = _UNDECIDED

        walk([_UNDECIDED] * self.n, 0)
        return out


def _check_input(F: Point, limit: int) -> Point | None:
    """Returns the normalized F, or None when the count is trivially zero."""
    F = as_point(F)
    if all(c == 0 for c in F):
        warnings.warn("F = 0 can never be a gap, so the count is 0", stacklevel=3)
        return None
    if box_norm(F) > limit:
        raise LimitExceeded(
            f"|box(F)| = {box_norm(F)} exceeds the configured limit {limit}"
        )
    return F


def count_frobenius_gns(F: Point, limit: int = DEFAULT_LIMIT, threads: int = 1) -> int:
    """Exact number of Frobenius GNS whose Frobenius gap is F.

    With ``threads`` > 1 the first few decisions are fixed and the
    resulting subtrees are counted in parallel; totals are added in
    subtree order, so the result never depends on scheduling.
    """
    F = _check_input(F, limit)
    if F is None:
        return 0
    search = _Search(plan(F))
    if threads <= 1 or search.n == 0:
        return search.count([_UNDECIDED] * search.n, 0)
    depth = min(search.n, (threads * 4 - 1).bit_length())
    prefixes = search.prefixes(depth)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda st: search.count(st, depth), prefixes)
        return sum(parts)


def list_frobenius_gns(
    F: Point, limit: int = DEFAULT_LIST_LIMIT
) -> Iterator[GapSet]:
    """Stream every qualifying gap set exactly once.

    The order treats each point's gap/member choice as a binary digit
    (gap = 1, first free point most significant) and descends, i.e. the
    all-gaps solution comes first when it is valid.
    """
    F = _check_input(F, limit)
    if F is None:
        return
    task = plan(F, Mode.MATERIALIZE)
    search = _Search(task)
    d = len(F)
    for gaps in search.leaves([_UNDECIDED] * search.n, 0):
        yield GapSet(d, gaps)


def brute_force_count(F: Point) -> int:
    """Oracle count: iterate all subsets of the free points.

    A subset I (the trace of S on the open box) is accepted when no two
    chosen points sum to F and every in-box sum of chosen points is
    chosen; acceptance of I is derived from acceptance of I minus its
    lowest element, so the whole 2^n sweep stays cheap.
    """
    F = _check_input(F, BRUTE_FORCE_LIMIT)
    if F is None:
        return 0
    z = zero(len(F))
    pts = [p for p in box_points(F) if p != z and p != F]
    n = len(pts)
    index = {p: i for i, p in enumerate(pts)}
    # add[i][j]: -2 sum escapes the box, -1 sum is F (forbidden), else index
    add = [[0] * n for _ in range(n)]
    for i, p in enumerate(pts):
        for j, q in enumerate(pts):
            total = point_add(p, q)
            if total == F:
                add[i][j] = -1
            elif natural_leq(total, F):
                add[i][j] = index[total]
            else:
                add[i][j] = -2
    valid = bytearray(1 << n)
    valid[0] = 1
    count = 1  # the empty trace: S = S_F
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        if not valid[mask ^ (1 << low)]:
            continue
        row = add[low]
        rest, ok = mask, True
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            t = row[j]
            if t == -1 or (t >= 0 and not (mask >> t) & 1):
                ok = False
                break
        if ok:
            valid[mask] = 1
            count += 1
    return count
