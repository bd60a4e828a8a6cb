"""Command-line front end: a thin client over the service handlers.

Every subcommand builds the same request model the HTTP API accepts and
either calls the handler in process (default) or posts it to a running
server (--server URL).  Exit codes: 0 success/pass, 1 verified failure,
2 usage error, 3 step budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ValidationError

from .errors import BudgetExceededError, ParseError, SoscertError
from .io import split_object_text
from .service import handlers
from .service import models as m

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_ENDPOINTS = {
    "gb": "/gb",
    "member": "/member",
    "quotient": "/quotient",
    "member_local": "/member-local",
    "dim": "/dim",
    "hessian": "/hessian",
    "sos_verify": "/sos-verify",
    "amgm_verify": "/amgm-verify",
    "non_sos": "/non-sos",
    "cone_verify": "/cone-verify",
    "adic": "/adic",
    "series_root": "/series-root",
    "revert": "/revert",
    "sample": "/sample",
    "avoid_map": "/avoid-map",
    "bad_point": "/bad-point",
    "claims_run": "/claims/run",
}

_RESPONSES = {
    "gb": m.GbResponse,
    "member": m.MemberResponse,
    "quotient": m.QuotientResponse,
    "member_local": m.MemberLocalResponse,
    "dim": m.DimResponse,
    "hessian": m.HessianResponse,
    "sos_verify": m.VerifyResponse,
    "amgm_verify": m.VerifyResponse,
    "non_sos": m.NonSosResponse,
    "cone_verify": m.VerifyResponse,
    "adic": m.AdicResponse,
    "series_root": m.SeriesResponse,
    "revert": m.SeriesResponse,
    "sample": m.SampleResponse,
    "avoid_map": m.AvoidMapResponse,
    "bad_point": m.BadPointResponse,
    "claims_run": m.ClaimsRunResponse,
}


def _call(op: str, request: BaseModel, server: Optional[str]) -> BaseModel:
    if server is None:
        return getattr(handlers, op)(request)
    import httpx

    url = server.rstrip("/") + _ENDPOINTS[op]
    resp = httpx.post(url, json=request.model_dump(), timeout=600.0)
    if resp.status_code == 503:
        raise BudgetExceededError(0, "remote")
    if resp.status_code >= 400:
        detail = resp.json().get("detail", resp.text) if resp.content else resp.text
        raise ValueError(f"server rejected the request: {detail}")
    return _RESPONSES[op].model_validate(resp.json())


def _load_ideal_model(path: str) -> m.IdealModel:
    headers, body = split_object_text(Path(path).read_text(encoding="utf-8"))
    if "vars" not in headers or not body:
        raise ValueError(f"{path} is not an ideal file (needs 'vars:' and generators)")
    return m.IdealModel(
        vars=headers["vars"].split(),
        generators=body,
        order=headers.get("order", "grevlex"),
    )


def _load_cert(path: str, expected_kind: str) -> dict:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    kind = data.get("kind")
    if kind != expected_kind:
        raise ValueError(f"certificate kind {kind!r} does not match the command ({expected_kind})")
    return data


def _point_arg(text: str) -> list[str]:
    return [c.strip() for c in text.split(",")]


def _emit(args, response: BaseModel, text: str) -> None:
    if args.format == "machine":
        print(response.model_dump_json(indent=2))
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soscert",
        description="Exact Groebner/series/certificate toolkit for sums of squares.",
    )
    parser.add_argument("--server", help="base URL of a running service; default is in-process")
    parser.add_argument(
        "--format", choices=("text", "machine"), default="text", help="output format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gb", help="reduced Groebner basis of an ideal file")
    p.add_argument("--ideal", required=True)
    p.add_argument("--order", default=None, help="grevlex | lex | elim(k)")

    p = sub.add_parser("member", help="ideal membership via normal form")
    p.add_argument("--ideal", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--square", action="store_true", help="use the square of the ideal")

    p = sub.add_parser("quotient", help="ideal quotient (I : f)")
    p.add_argument("--ideal", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--square", action="store_true")

    p = sub.add_parser("member-local", help="membership in the localization at a point")
    p.add_argument("--ideal", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--point", required=True, help="comma-separated coordinates, e.g. 0,0,i")
    p.add_argument("--square", action="store_true")

    p = sub.add_parser("dim", help="Krull dimension of the quotient ring")
    p.add_argument("--ideal", required=True)

    p = sub.add_parser("hessian", help="matrix of second partial derivatives")
    p.add_argument("--vars", nargs="+", required=True)
    p.add_argument("--poly", required=True)

    p = sub.add_parser("sos-verify", help="verify a sum-of-squares certificate file")
    p.add_argument("--cert", required=True)

    p = sub.add_parser("amgm-verify", help="verify an AM-GM certificate file")
    p.add_argument("--cert", required=True)

    p = sub.add_parser("non-sos", help="search for a Newton-polytope non-SOS obstruction")
    p.add_argument("--poly", required=True)
    p.add_argument("--vars", nargs="+", required=True)

    p = sub.add_parser("cone-verify", help="verify a monomial-cone obstruction file")
    p.add_argument("--cert", required=True)

    p = sub.add_parser("adic", help="absorb an order->=3 perturbation into shifted squares")
    p.add_argument("--vars", nargs="+", required=True)
    p.add_argument("--series", required=True)
    p.add_argument("--trunc", type=int, required=True)
    p.add_argument("-r", type=int, required=True, dest="r")

    p = sub.add_parser("series-root", help="principal n-th root of a unit series")
    p.add_argument("--vars", nargs="+", required=True)
    p.add_argument("--series", required=True)
    p.add_argument("--trunc", type=int, required=True)
    p.add_argument("-n", type=int, required=True, dest="n")

    p = sub.add_parser("revert", help="compositional inverse of a one-variable series")
    p.add_argument("--var", required=True)
    p.add_argument("--series", required=True)
    p.add_argument("--trunc", type=int, required=True)

    p = sub.add_parser("sample", help="exact falsification sampling on a rational grid")
    p.add_argument("--vars", nargs="+", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--box", required=True, help="lo:hi per variable, comma-separated")
    p.add_argument("--step", required=True)

    p = sub.add_parser("avoid-map", help="birational map avoiding points, keeping others")
    p.add_argument("--avoid", action="append", required=True, help="point, repeatable")
    p.add_argument("--keep", action="append", default=[], help="point, repeatable")

    p = sub.add_parser("bad-point", help="verify a bad-point certificate file")
    p.add_argument("--cert", required=True)

    p = sub.add_parser("reproduce", help="run the claim suite")
    p.add_argument("--claims", default="all", help="'all' or comma-separated claim ids")
    p.add_argument("--jobs", type=int, default=1)

    return parser


def run(args) -> int:
    server = args.server
    cmd = args.command

    if cmd == "gb":
        ideal = _load_ideal_model(args.ideal)
        if args.order:
            ideal.order = args.order
        resp = _call("gb", m.GbRequest(ideal=ideal), server)
        _emit(args, resp, "\n".join(resp.basis))
        return EXIT_OK

    if cmd == "member":
        ideal = _load_ideal_model(args.ideal)
        resp = _call("member", m.MemberRequest(ideal=ideal, poly=args.poly, square=args.square), server)
        _emit(args, resp, "member" if resp.member else f"not a member; remainder: {resp.remainder}")
        return EXIT_OK if resp.member else EXIT_FAIL

    if cmd == "quotient":
        ideal = _load_ideal_model(args.ideal)
        resp = _call("quotient", m.QuotientRequest(ideal=ideal, poly=args.poly, square=args.square), server)
        _emit(args, resp, "\n".join(resp.basis))
        return EXIT_OK

    if cmd == "member-local":
        ideal = _load_ideal_model(args.ideal)
        req = m.MemberLocalRequest(
            ideal=ideal, poly=args.poly, point=_point_arg(args.point), square=args.square
        )
        resp = _call("member_local", req, server)
        if resp.member:
            _emit(args, resp, f"member (witness {resp.witness} evaluates to {resp.witness_value})")
            return EXIT_OK
        _emit(args, resp, "not_member (all quotient basis elements vanish at the point)")
        return EXIT_FAIL

    if cmd == "dim":
        resp = _call("dim", m.DimRequest(ideal=_load_ideal_model(args.ideal)), server)
        _emit(args, resp, str(resp.dimension))
        return EXIT_OK

    if cmd == "hessian":
        resp = _call("hessian", m.HessianRequest(vars=args.vars, poly=args.poly), server)
        _emit(args, resp, "\n".join("[" + ", ".join(row) + "]" for row in resp.matrix))
        return EXIT_OK

    if cmd == "sos-verify":
        req = m.SosCertModel.model_validate(_load_cert(args.cert, "sos"))
        resp = _call("sos_verify", req, server)
        _emit(args, resp, "ok" if resp.ok else f"fail: {resp.reason}")
        return EXIT_OK if resp.ok else EXIT_FAIL

    if cmd == "amgm-verify":
        req = m.AmGmCertModel.model_validate(_load_cert(args.cert, "amgm"))
        resp = _call("amgm_verify", req, server)
        _emit(args, resp, "ok" if resp.ok else f"fail: {resp.reason}")
        return EXIT_OK if resp.ok else EXIT_FAIL

    if cmd == "non-sos":
        resp = _call("non_sos", m.NonSosRequest(vars=args.vars, poly=args.poly), server)
        if resp.found:
            corner = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(args.vars, resp.corner)
                if e
            )
            _emit(args, resp, f"obstruction at {corner}: coefficient {resp.coefficient}")
            return EXIT_OK
        _emit(args, resp, "none_found (inconclusive)")
        return EXIT_FAIL

    if cmd == "cone-verify":
        req = m.ConeCertModel.model_validate(_load_cert(args.cert, "cone"))
        resp = _call("cone_verify", req, server)
        _emit(args, resp, "ok" if resp.ok else f"fail: {resp.reason}")
        return EXIT_OK if resp.ok else EXIT_FAIL

    if cmd == "adic":
        req = m.AdicRequest(vars=args.vars, series=args.series, trunc=args.trunc, r=args.r)
        resp = _call("adic", req, server)
        text = "\n".join(
            [f"shift[{i}]: {s}" for i, s in enumerate(resp.shifts)]
            + [f"residual: {resp.residual}", f"verified through degree {resp.verified_to}"]
        )
        _emit(args, resp, text)
        return EXIT_OK

    if cmd == "series-root":
        req = m.SeriesRootRequest(vars=args.vars, series=args.series, trunc=args.trunc, n=args.n)
        resp = _call("series_root", req, server)
        _emit(args, resp, resp.series)
        return EXIT_OK

    if cmd == "revert":
        req = m.RevertRequest(var=args.var, series=args.series, trunc=args.trunc)
        resp = _call("revert", req, server)
        _emit(args, resp, resp.series)
        return EXIT_OK

    if cmd == "sample":
        box = [part.split(":") for part in args.box.split(",")]
        req = m.SampleRequest(vars=args.vars, poly=args.poly, box=box, step=args.step)
        resp = _call("sample", req, server)
        if resp.ok:
            _emit(args, resp, f"no_counterexample ({resp.checked} points)")
            return EXIT_OK
        _emit(
            args,
            resp,
            f"counterexample at ({', '.join(resp.counterexample_point)}): {resp.counterexample_value}",
        )
        return EXIT_FAIL

    if cmd == "avoid-map":
        req = m.AvoidMapRequest(
            avoid=[_point_arg(p) for p in args.avoid],
            keep=[_point_arg(p) for p in args.keep],
        )
        resp = _call("avoid_map", req, server)
        lines = []
        for k, st in enumerate(resp.stages):
            lines.append(f"stage {k}: min poly coefficients (constant first): {st.min_poly}")
        lines.append("verified" if resp.ok else f"verification failed: {resp.reason}")
        _emit(args, resp, "\n".join(lines))
        return EXIT_OK if resp.ok else EXIT_FAIL

    if cmd == "bad-point":
        req = m.BadPointCertModel.model_validate(_load_cert(args.cert, "bad_point"))
        resp = _call("bad_point", req, server)
        lines = [f"[{'pass' if l.ok else 'FAIL'}] {l.name}: {l.detail}" for l in resp.lines]
        lines.append(f"conclusion: {resp.conclusion}")
        _emit(args, resp, "\n".join(lines))
        return EXIT_OK if resp.ok else EXIT_FAIL

    if cmd == "reproduce":
        ids = None if args.claims == "all" else [s.strip() for s in args.claims.split(",") if s.strip()]
        req = m.ClaimsRunRequest(ids=ids, jobs=args.jobs)
        resp = _call("claims_run", req, server)
        _emit(args, resp, resp.report)
        return EXIT_OK if resp.all_passed else EXIT_FAIL

    raise ValueError(f"unknown command {cmd!r}")


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return run(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SoscertError, ValidationError, ValueError, KeyError, OSError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
