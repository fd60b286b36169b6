"""Exhaustive small-box corpora and the cross-theorem property suites.

Every suite here is an instance of a proved statement, so a single
failure on any corpus element is an implementation bug; suites report
pass counts and the first counterexample rather than stopping early at
the framework level.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from gnskit import bounds, classify
from gnskit.core import (
    GapSet,
    GnsError,
    Point,
    as_point,
    box_norm,
    box_points,
    natural_leq,
    point_add,
    point_sub,
    zero,
)
from gnskit.enumeration import (
    BRUTE_FORCE_LIMIT,
    LimitExceeded,
    brute_force_count,
    count_frobenius_gns,
    list_frobenius_gns,
)
from gnskit.orders import MaximalGapOrder, check_relaxed_axioms, frobenius_gap

CORPUS_LIMIT = 21  # largest box (in points) we will enumerate exhaustively


def gap_sets_in_box(corner: Point) -> list[GapSet]:
    """All valid gap sets whose gaps lie in [0, corner], empty set included.

    Works on semigroup traces: a subset I of the punctured box is a valid
    trace exactly when every in-box sum of chosen points is chosen, which
    extends the verdict on I minus its lowest element by one row of sums.
    """
    corner = as_point(corner)
    if box_norm(corner) > CORPUS_LIMIT:
        raise LimitExceeded(f"box of {box_norm(corner)} points is too large")
    d = len(corner)
    z = zero(d)
    pts = [p for p in box_points(corner) if p != z]
    n = len(pts)
    index = {p: i for i, p in enumerate(pts)}
    add = [[0] * n for _ in range(n)]
    for i, p in enumerate(pts):
        for j, q in enumerate(pts):
            t = point_add(p, q)
            add[i][j] = index[t] if natural_leq(t, corner) else -2
    full = (1 << n) - 1
    out: list[GapSet] = []
    valid = bytearray(1 << n)
    valid[0] = 1
    out.append(GapSet(d, frozenset(pts)))  # empty trace = everything is a gap
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
            if t >= 0 and not (mask >> t) & 1:
                ok = False
                break
        if ok:
            valid[mask] = 1
            comp = full ^ mask
            out.append(
                GapSet(d, frozenset(pts[i] for i in range(n) if (comp >> i) & 1))
            )
    return out


def antichains_in_box(corner: Point) -> list[frozenset[Point]]:
    """All antichains of the punctured box under the natural order."""
    corner = as_point(corner)
    z = zero(len(corner))
    pts = [p for p in box_points(corner) if p != z]
    out: list[frozenset[Point]] = [frozenset()]
    for mask in range(1, 1 << len(pts)):
        chosen = [p for i, p in enumerate(pts) if (mask >> i) & 1]
        if all(
            not natural_leq(a, b)
            for a in chosen
            for b in chosen
            if a != b
        ):
            out.append(frozenset(chosen))
    return out


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: int = 0
    first_counterexample: dict | None = None

    def record(self, ok: bool, witness: dict | None = None):
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.first_counterexample is None:
                self.first_counterexample = witness or {}

    def to_doc(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "failures": self.failures,
            "firstCounterexample": self.first_counterexample,
        }


def _naive_closure_verdict(d: int, gaps: frozenset[Point]) -> bool:
    """Definitional oracle: try all pairs of semigroup elements in the
    region where a violating sum could land (componentwise max of gaps)."""
    if zero(d) in gaps:
        return False
    if not gaps:
        return True
    cmax = tuple(max(g[i] for g in gaps) for i in range(d))
    region = [p for p in box_points(cmax) if p not in gaps]
    for a in region:
        for b in region:
            if a == zero(d) or b == zero(d):
                continue
            t = point_add(a, b)
            if natural_leq(t, cmax) and t in gaps:
                return False
    return True


def suite_validation_oracle(corner: Point) -> SuiteResult:
    """validate() against the pairwise semigroup oracle, over every subset
    of the punctured box (valid and invalid alike)."""
    from gnskit.core import is_valid

    corner = as_point(corner)
    d = len(corner)
    z = zero(d)
    pts = [p for p in box_points(corner) if p != z]
    res = SuiteResult("validation-oracle")
    for mask in range(1 << len(pts)):
        gaps = frozenset(p for i, p in enumerate(pts) if (mask >> i) & 1)
        agree = is_valid(d, gaps) == _naive_closure_verdict(d, gaps)
        res.record(agree, {"gaps": sorted(gaps)} if not agree else None)
    return res


def suite_pf_oracle(corpus: list[GapSet]) -> SuiteResult:
    """pseudo_frobenius against the definition: P + s stays in S for every
    nonzero s in S up to the componentwise gap maximum."""
    res = SuiteResult("pf-oracle")
    for s in corpus:
        if not s.gaps:
            res.record(s.pseudo_frobenius == frozenset())
            continue
        d = s.dimension
        cmax = tuple(max(g[i] for g in s.gaps) for i in range(d))
        members = [p for p in box_points(cmax) if p not in s.gaps and p != zero(d)]
        oracle = frozenset(
            p
            for p in s.gaps
            if all(point_add(p, m) not in s.gaps for m in members)
        )
        ok = oracle == s.pseudo_frobenius
        res.record(ok, None if ok else {"gaps": sorted(s.gaps)})
    return res


def suite_maximal_gap_orders(corpus: list[GapSet]) -> SuiteResult:
    """Every maximal gap is recovered as the Frobenius gap of its own order."""
    res = SuiteResult("maximal-gap-order")
    for s in corpus:
        for h in s.frobenius_allowable:
            got = frobenius_gap(s, MaximalGapOrder(h))
            res.record(got == h, {"gaps": sorted(s.gaps), "h": list(h), "got": list(got)})
    return res


def suite_relaxed_axioms(corpus: list[GapSet], corner: Point, samples: int, seed: int) -> SuiteResult:
    """Axiom sampling for orders defined by every distinct maximal gap seen
    in the corpus; ``samples`` triples in total, split across the orders."""
    res = SuiteResult("relaxed-axioms")
    gaps = sorted({h for s in corpus for h in s.frobenius_allowable})
    if not gaps:
        return res
    bound = point_add(corner, corner)
    share = max(1, samples // len(gaps))
    for i, h in enumerate(gaps):
        n = share if i < len(gaps) - 1 else max(share, samples - share * (len(gaps) - 1))
        report = check_relaxed_axioms(MaximalGapOrder(h), bound, n, seed + i)
        res.checked += report.samples
        if not report.passed:
            res.failures += 1
            if res.first_counterexample is None:
                res.first_counterexample = {
                    "h": list(h),
                    "counterexample": report.counterexample,
                }
    return res


def suite_classification(corpus: list[GapSet], threads: int = 1) -> SuiteResult:
    """All dual-route classification checks, plus the type sandwich and the
    witness-injection postconditions, on every corpus element."""
    res = SuiteResult("classification")

    def one(s: GapSet) -> dict | None:
        try:
            c = classify.classification(s)
            if c.quasi_irreducible and not c.t <= 2 * c.tau:
                return {"gaps": sorted(s.gaps), "reason": "t > 2 tau"}
            if c.is_frobenius:
                classify.type_bounds(s)  # asserts sandwich + injectivity
        except AssertionError as e:
            return {"gaps": sorted(s.gaps), "reason": str(e)}
        return None

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(one, corpus))
    else:
        outcomes = [one(s) for s in corpus]
    for witness in outcomes:
        res.record(witness is None, witness)
    return res


def suite_maximal_avoiding(corner: Point, corpus: list[GapSet]) -> SuiteResult:
    """Maximality among avoid-set-respecting GNS, three ways: set-theoretic
    maximality inside the exhaustive corpus, the pseudo-Frobenius
    criterion, and quasi-irreducibility with the prescribed maximal set."""
    res = SuiteResult("maximal-avoiding")
    corpus_index = {s.gaps for s in corpus}
    antichains = antichains_in_box(corner)
    for s in corpus:
        for d_set in antichains:
            if not d_set <= s.gaps:
                continue
            by_criterion = classify.is_maximal_avoiding(s, d_set)
            by_theorem = (
                classify.is_quasi_irreducible(s) and s.frobenius_allowable == d_set
            )
            semantic = not any(
                proper in corpus_index
                for proper in _proper_subsets_containing(s.gaps, d_set)
            )
            ok = by_criterion == by_theorem == semantic
            res.record(
                ok,
                None
                if ok
                else {
                    "gaps": sorted(s.gaps),
                    "avoid": sorted(d_set),
                    "criterion": by_criterion,
                    "theorem": by_theorem,
                    "semantic": semantic,
                },
            )
    return res


def _proper_subsets_containing(gaps: frozenset[Point], keep: frozenset[Point]):
    optional = sorted(gaps - keep)
    for mask in range((1 << len(optional)) - 1):  # full mask would not be proper
        yield keep | {p for i, p in enumerate(optional) if (mask >> i) & 1}


def suite_counting(corner: Point, threads: int = 1) -> SuiteResult:
    """count == brute force for every F below the corner that fits the
    oracle limit, plus the sqrt(3) bound in exact integers, the d=1
    window, and invariance under coordinate permutations."""
    res = SuiteResult("counting")
    d = len(corner)
    z = zero(d)
    targets = [
        F for F in box_points(corner) if F != z and box_norm(F) <= BRUTE_FORCE_LIMIT
    ]

    def one(F: Point) -> dict | None:
        fast = count_frobenius_gns(F, threads=1)
        slow = brute_force_count(F)
        if fast != slow:
            return {"F": list(F), "count": fast, "bruteForce": slow}
        if fast * fast > 3 ** box_norm(F):
            return {"F": list(F), "reason": "sqrt(3) bound violated"}
        if d == 1:
            lo = 2 ** ((F[0] - 1) // 2)
            if not lo <= fast <= 4 * lo:
                return {"F": list(F), "reason": "d=1 window violated"}
        sigma = tuple(sorted(F))
        if sigma != F and count_frobenius_gns(sigma, threads=1) != fast:
            return {"F": list(F), "reason": "permutation symmetry violated"}
        return None

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(one, targets))
    else:
        outcomes = [one(F) for F in targets]
    for witness in outcomes:
        res.record(witness is None, witness)
    return res


def exhaustive_good_subset_count(P: Point, F: Point) -> int:
    """Oracle for the pairing graph: sweep all vertex subsets with numpy,
    rejecting any containing an edge (loops reject their vertex)."""
    pts = list(box_points(F))
    n = len(pts)
    index = {p: i for i, p in enumerate(pts)}
    edge_masks: set[int] = set()
    for x in pts:
        edge_masks.add((1 << index[x]) | (1 << index[point_sub(F, x)]))
        if natural_leq(x, P):
            edge_masks.add((1 << index[x]) | (1 << index[point_sub(P, x)]))
    masks = np.arange(1 << n, dtype=np.uint32)
    ok = np.ones(masks.shape, dtype=bool)
    for e in sorted(edge_masks):
        ok &= (masks & e) != e
    return int(ok.sum())


def suite_pf_graph(corner: Point, exhaustive_limit: int = 14) -> SuiteResult:
    """Fibonacci/Lucas counting against the subset-sweep oracle, the
    closed-form bound, and the dominance count(F) split by a gap P."""
    res = SuiteResult("pf-graph")
    d = len(corner)
    z = zero(d)
    for F in box_points(corner):
        if F == z or box_norm(F) > exhaustive_limit:
            continue
        exact_sets = None
        for P in box_points(F):
            if P == F or P == z:
                continue
            g = bounds.build_pf_graph(P, F)
            formula = bounds.count_good_subsets(g)
            sweep = exhaustive_good_subset_count(P, F)
            if formula != sweep:
                res.record(False, {"P": list(P), "F": list(F), "formula": formula, "sweep": sweep})
                continue
            if formula > bounds.l_bound(P, F) * (1 + 1e-9):
                res.record(False, {"P": list(P), "F": list(F), "reason": "closed-form bound"})
                continue
            if exact_sets is None:
                exact_sets = list(list_frobenius_gns(F))
            with_p_gap = sum(1 for s in exact_sets if P in s.gaps)
            ok = with_p_gap <= formula
            res.record(ok, None if ok else {"P": list(P), "F": list(F), "reason": "dominance"})
    return res


def suite_family(corner: Point, seed: int, sample_cap: int = 50) -> SuiteResult:
    """Family construction: exhaustive when the selectable region is small,
    seeded sampling otherwise; members must validate, carry Frobenius gap
    F, and be pairwise distinct."""
    res = SuiteResult("family")
    F = as_point(corner)
    if all(c == 0 for c in F):
        return res  # 0 is never a gap, so there is no family to build
    fam = bounds.box_family(F)
    pool = sorted(fam.c_selectable)
    expected = bounds.lower_bound_value(F)
    seen: set[frozenset[Point]] = set()

    def try_member(y: frozenset[Point], zsel: frozenset[Point]) -> dict | None:
        try:
            s = bounds.construct_family(F, y, zsel)
        except (GnsError, AssertionError) as e:
            return {"Y": sorted(y), "Z": sorted(zsel), "reason": str(e)}
        f = classify.is_frobenius_gns(s)
        if f != F:
            return {"Y": sorted(y), "Z": sorted(zsel), "reason": "frobenius gap"}
        if s.gaps in seen:
            return {"Y": sorted(y), "Z": sorted(zsel), "reason": "duplicate"}
        seen.add(s.gaps)
        return None

    if fam.b_size + len(pool) <= 12:
        for y in bounds.good_subsets_of_b(fam):
            for mask in range(1 << len(pool)):
                zsel = frozenset(p for i, p in enumerate(pool) if (mask >> i) & 1)
                witness = try_member(y, zsel)
                res.record(witness is None, witness)
        if len(seen) != expected:
            res.record(False, {"reason": "family size", "got": len(seen), "expected": expected})
    else:
        rng = random.Random(seed)
        tried: set[tuple] = set()
        pairs = fam.pairs_of_b()
        while len(tried) < sample_cap:
            y = frozenset(
                pair[rng.randint(0, 1)] for pair in pairs if rng.random() < 2 / 3
            )
            zsel = frozenset(p for p in pool if rng.random() < 0.5)
            key = (y, zsel)
            if key in tried:
                continue
            tried.add(key)
            witness = try_member(y, zsel)
            res.record(witness is None, witness)
    return res


@dataclass
class BoxReport:
    corner: Point
    corpus_size: int
    suites: list[SuiteResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.failures == 0 for s in self.suites)

    def to_doc(self) -> dict:
        return {
            "box": list(self.corner),
            "corpusSize": self.corpus_size,
            "passed": self.passed,
            "suites": [s.to_doc() for s in self.suites],
        }


def run_box_suites(
    corner: Point,
    seed: int = 0,
    threads: int = 1,
    axiom_samples: int = 10_000,
    cross_product_limit: int = 10,
) -> BoxReport:
    """Run every suite that fits the given box size."""
    corner = as_point(corner)
    corpus = gap_sets_in_box(corner)
    report = BoxReport(corner, len(corpus))
    report.suites.append(suite_validation_oracle(corner))
    report.suites.append(suite_pf_oracle(corpus))
    report.suites.append(suite_maximal_gap_orders(corpus))
    report.suites.append(suite_relaxed_axioms(corpus, corner, axiom_samples, seed))
    report.suites.append(suite_classification(corpus, threads=threads))
    if box_norm(corner) <= cross_product_limit:
        report.suites.append(suite_maximal_avoiding(corner, corpus))
    report.suites.append(suite_counting(corner, threads=threads))
    report.suites.append(suite_pf_graph(corner))
    report.suites.append(suite_family(corner, seed))
    return report


def run_verify(
    boxes: list[Point], seed: int = 0, threads: int = 1, axiom_samples: int = 10_000
) -> dict:
    reports = [
        run_box_suites(corner, seed=seed, threads=threads, axiom_samples=axiom_samples)
        for corner in boxes
    ]
    return {
        "passed": all(r.passed for r in reports),
        "boxes": [r.to_doc() for r in reports],
    }
