"""Command-line client for the computation service.

The CLI owns no computation: every command builds the same request
model the HTTP endpoints accept and either calls the handler in
process (the default) or posts it to a running service (``--server``).

Exit codes: 0 success, 1 validation failure, 2 usage or limit errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import gnskit
from gnskit.core import GnsError
from gnskit.enumeration import LimitExceeded
from gnskit.service import handlers, schemas

_ENDPOINTS = {
    "analyze": ("/analyze", handlers.analyze),
    "enumerate": ("/enumerate", handlers.enumerate_gns),
    "construct": ("/construct", handlers.construct),
    "sandwich": ("/bounds/sandwich", handlers.sandwich),
    "constants": ("/bounds/constants", handlers.constants),
    "lpf": ("/bounds/lpf", handlers.lpf),
    "verify": ("/verify", handlers.run_verify),
}


class UsageError(Exception):
    pass


def parse_point(text: str) -> list[int]:
    try:
        return [int(c) for c in text.split(",")]
    except ValueError as e:
        raise GnsError(f"cannot parse point {text!r}: comma-separated integers") from e


def parse_points(text: str) -> list[list[int]]:
    """Semicolon-separated list of comma-separated points; '' is empty."""
    text = text.strip()
    if not text:
        return []
    return [parse_point(part) for part in text.split(";")]


def _dispatch(name: str, req, server: str | None):
    path, handler = _ENDPOINTS[name]
    if server is None:
        return handler(req).model_dump()
    import httpx

    resp = httpx.post(server.rstrip("/") + path, json=req.model_dump(), timeout=600.0)
    if resp.status_code == 400:
        raise LimitExceeded(resp.json().get("error", "limit exceeded"))
    if resp.status_code >= 400:
        raise GnsError(resp.json().get("error", f"HTTP {resp.status_code}"))
    return resp.json()


def _emit_json(doc) -> None:
    print(json.dumps(doc, sort_keys=True, indent=2))


def cmd_analyze(args) -> int:
    import pydantic

    doc = json.loads(Path(args.file).read_text())
    try:
        gap_set = schemas.GapSetDoc(**doc) if isinstance(doc, dict) else None
    except pydantic.ValidationError:
        gap_set = None
    if gap_set is None:
        raise GnsError(f"{args.file} is not a gap-set document")
    req = schemas.AnalyzeRequest(
        gap_set=gap_set,
        explain=args.explain,
        order_gap=parse_point(args.order_gap) if args.order_gap else None,
    )
    _emit_json(_dispatch("analyze", req, args.server))
    return 0


def cmd_enumerate(args) -> int:
    req = schemas.EnumerateRequest(
        F=parse_point(args.F),
        list_sets=args.list,
        limit=args.limit,
        list_limit=args.list_limit,
        threads=args.threads,
    )
    out = _dispatch("enumerate", req, args.server)
    if args.list:
        for gs in out["gap_sets"]:  # one JSON document per line, stream-friendly
            print(json.dumps(gs, sort_keys=True))
    elif args.format == "json":
        _emit_json(out)
    else:
        print(out["count"])
    return 0


def cmd_construct(args) -> int:
    req = schemas.ConstructRequest(
        F=parse_point(args.F),
        Y=parse_points(args.Y),
        Z=parse_points(args.Z),
        d5=args.d5,
        X=parse_points(args.X),
    )
    _emit_json(_dispatch("construct", req, args.server))
    return 0


def cmd_bounds(args) -> int:
    if args.constants:
        req = schemas.ConstantsRequest(dmax=args.dmax)
        out = _dispatch("constants", req, args.server)
        if args.format == "json":
            _emit_json(out)
        else:
            print("d,a_d,eps_d,b_d,note")
            for row in out["rows"]:
                print(
                    f"{row['d']},{row['a_d']:.4f},{row['eps_d']:.6f},"
                    f"{row['b_d']:.4f},{row['note']}"
                )
        return 0
    if args.lpf:
        if not (args.P and args.F):
            raise UsageError("--lpf needs both --P and --F")
        req = schemas.LpfRequest(P=parse_point(args.P), F=parse_point(args.F))
        _emit_json(_dispatch("lpf", req, args.server))
        return 0
    if not args.F:
        raise UsageError("bounds needs --F, --constants, or --lpf")
    req = schemas.SandwichRequest(F=parse_point(args.F), limit=args.limit, threads=args.threads)
    _emit_json(_dispatch("sandwich", req, args.server))
    return 0


def cmd_verify(args) -> int:
    boxes = [parse_point(b) for b in args.box]
    req = schemas.VerifyRequest(
        boxes=boxes,
        seed=args.seed,
        threads=args.threads,
        axiom_samples=args.axiom_samples,
    )
    out = _dispatch("verify", req, args.server)
    _emit_json(out)
    return 0 if out["passed"] else 1


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("gnskit.service.app:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gnskit",
        description="Exact computation with generalized numerical semigroups",
    )
    parser.add_argument("--version", action="version", version=gnskit.__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--server", help="base URL of a running service; default is in-process")
        p.add_argument("--format", choices=["json", "csv", "plain"], default=None)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--limit", type=int, default=30, help="largest box size to enumerate")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("analyze", help="classify a gap set from a JSON file")
    common(p)
    p.add_argument("--file", required=True)
    p.add_argument("--explain", action="store_true")
    p.add_argument("--order-gap", dest="order_gap", help='defining gap, e.g. "1,1"')
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("enumerate", help="count (or list) Frobenius GNS with gap F")
    common(p)
    p.add_argument("--F", required=True, help='Frobenius gap, e.g. "2,3"')
    p.add_argument("--list", action="store_true", help="stream gap sets as JSON lines")
    p.add_argument("--list-limit", dest="list_limit", type=int, default=24,
                   help="largest box size to materialize")
    p.set_defaults(func=cmd_enumerate, format="plain")

    p = sub.add_parser("construct", help="build a lower-bound family member")
    common(p)
    p.add_argument("--F", required=True)
    p.add_argument("--Y", default="", help='points "a,b;c,d" from the paired region')
    p.add_argument("--Z", default="", help="points from the free region")
    p.add_argument("--d5", action="store_true", help="use the dimension-5 family")
    p.add_argument("--X", default="", help="points for the dimension-5 family")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bounds", help="bound reports and the constants table")
    common(p)
    p.add_argument("--F", help="sandwich report for this Frobenius gap")
    p.add_argument("--constants", action="store_true")
    p.add_argument("--dmax", type=int, default=15)
    p.add_argument("--lpf", action="store_true", help="pairing-graph counts for (P, F)")
    p.add_argument("--P")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run the property suites on box corpora")
    common(p)
    p.add_argument("--box", action="append", required=True, help="box corner; repeatable")
    p.add_argument("--axiom-samples", dest="axiom_samples", type=int, default=10_000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    import pydantic

    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LimitExceeded, UsageError, pydantic.ValidationError) as e:
        _emit_json({"error": str(e), "kind": type(e).__name__})
        return 2
    except GnsError as e:
        _emit_json({"error": str(e), "kind": type(e).__name__})
        return 1
    except (OSError, json.JSONDecodeError) as e:
        _emit_json({"error": str(e), "kind": type(e).__name__})
        return 1


if __name__ == "__main__":
    sys.exit(main())
