"""Handler functions shared by the HTTP endpoints and the CLI client.

Each handler takes a request model and returns a response model; domain
errors propagate as GnsError subclasses for the callers to map onto
exit codes or HTTP statuses.
"""

from __future__ import annotations

import gnskit
from gnskit import bounds, classify, verify
from gnskit.core import (
    GapSet,
    as_point,
    gap_set_from_doc,
    gap_set_to_doc,
)
from gnskit.enumeration import count_frobenius_gns, list_frobenius_gns
from gnskit.orders import MaximalGapOrder, frobenius_gap
from gnskit.service import schemas


def _tool() -> schemas.ToolInfo:
    return schemas.ToolInfo(version=gnskit.__version__)


def _echo(req) -> dict:
    """Input echo for reports; thread count is an execution knob, not part
    of what was computed, and reports must not depend on it."""
    doc = req.model_dump()
    doc.pop("threads", None)
    return doc


def _gap_set(doc: schemas.GapSetDoc) -> GapSet:
    return gap_set_from_doc(doc.model_dump())


def analyze(req: schemas.AnalyzeRequest) -> schemas.AnalyzeResponse:
    s = _gap_set(req.gap_set)
    c = classify.classification(s)
    tb = classify.type_bounds(s) if c.is_frobenius else None
    under_order = None
    if req.order_gap is not None:
        order = MaximalGapOrder(as_point(req.order_gap, s.dimension))
        under_order = {
            "order": order.to_doc(),
            "gap": list(frobenius_gap(s, order)),
        }
    witnesses = None
    if req.explain:
        witnesses = _witnesses(s, c, tb)
    return schemas.AnalyzeResponse(
        tool=_tool(),
        input=schemas.GapSetDoc(**gap_set_to_doc(s)),
        genus=s.genus,
        frobenius_allowable=[list(p) for p in sorted(s.frobenius_allowable)],
        pseudo_frobenius=[list(p) for p in sorted(s.pseudo_frobenius)],
        classification=c.to_doc(),
        type_bounds=tb.to_doc() if tb else None,
        frobenius_gap_under_order=under_order,
        witnesses=witnesses,
    )


def _witnesses(s: GapSet, c, tb) -> dict:
    from gnskit.core import natural_leq, point_sub

    out: dict = {}
    fa = s.frobenius_allowable
    missing = [
        list(x)
        for x in sorted(s.gaps)
        if not any(
            natural_leq(x, f) and point_sub(f, x) not in s.gaps for f in fa
        )
    ]
    out["gapsWithoutReflection"] = missing
    if tb is not None:
        out["witnessInjection"] = tb.to_doc()["witness"]
    if c.is_frobenius:
        out["tSetComplement"] = [
            list(p) for p in sorted(classify.t_set(s).complement)
        ]
    return out


def enumerate_gns(req: schemas.EnumerateRequest) -> schemas.EnumerateResponse:
    F = as_point(req.F)
    if req.list_sets:  # materializing runs under the tighter limit
        sets = [
            schemas.GapSetDoc(**gap_set_to_doc(s))
            for s in list_frobenius_gns(F, limit=min(req.limit, req.list_limit))
        ]
        count = len(sets)
        assert count == count_frobenius_gns(F, limit=req.limit, threads=req.threads)
        return schemas.EnumerateResponse(
            tool=_tool(), input=_echo(req), count=count, gap_sets=sets
        )
    count = count_frobenius_gns(F, limit=req.limit, threads=req.threads)
    sets = None
    return schemas.EnumerateResponse(
        tool=_tool(),
        input=_echo(req),
        count=count,
        gap_sets=sets,
    )


def construct(req: schemas.ConstructRequest) -> schemas.ConstructResponse:
    F = as_point(req.F)
    if req.d5:
        s = bounds.construct_family_d5(F, {tuple(p) for p in req.X})
    else:
        s = bounds.construct_family(
            F, {tuple(p) for p in req.Y}, {tuple(p) for p in req.Z}
        )
    f = classify.is_frobenius_gns(s)
    assert f == F
    return schemas.ConstructResponse(
        tool=_tool(),
        input=_echo(req),
        gap_set=schemas.GapSetDoc(**gap_set_to_doc(s)),
        genus=s.genus,
        frobenius_gap=list(f),
    )


def sandwich(req: schemas.SandwichRequest) -> schemas.SandwichResponse:
    report = bounds.sandwich_report(
        as_point(req.F), enum_limit=req.limit, threads=req.threads
    )
    return schemas.SandwichResponse(tool=_tool(), input=_echo(req), report=report)


def constants(req: schemas.ConstantsRequest) -> schemas.ConstantsResponse:
    rows = [r.to_doc() for r in bounds.constants_table(req.dmax)]
    return schemas.ConstantsResponse(tool=_tool(), input=_echo(req), rows=rows)


def lpf(req: schemas.LpfRequest) -> schemas.LpfResponse:
    P, F = as_point(req.P), as_point(req.F)
    g = bounds.build_pf_graph(P, F)
    return schemas.LpfResponse(
        tool=_tool(),
        input=_echo(req),
        graph=g.to_doc(),
        good_subsets=bounds.count_good_subsets(g),
        closed_form_bound=bounds.l_bound(P, F),
    )


def run_verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    report = verify.run_verify(
        [as_point(b) for b in req.boxes],
        seed=req.seed,
        threads=req.threads,
        axiom_samples=req.axiom_samples,
    )
    return schemas.VerifyResponse(
        tool=_tool(),
        input=_echo(req),
        passed=report["passed"],
        boxes=report["boxes"],
    )
