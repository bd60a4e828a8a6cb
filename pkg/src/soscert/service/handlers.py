"""Pure request -> response functions shared by the HTTP routes and the CLI.

Handlers convert schema payloads into kernel objects, run one operation,
and convert the result back.  Domain errors propagate as kernel
exceptions; the HTTP layer and the CLI map them to status codes.
"""

from __future__ import annotations

from fractions import Fraction

from .. import claims as claims_mod
from ..certificates import (
    AmGmCert,
    BadPointCert,
    ConeObstruction,
    DensityWitness,
    SosCert,
    StructNonneg,
    birational_avoid,
    find_non_sos_obstruction,
    sample_nonnegativity,
    verify_amgm,
    verify_avoid_map,
    verify_bad_point,
    verify_cone_obstruction,
    verify_non_sos,
    verify_sos,
)
from ..groebner import (
    Ideal,
    dimension,
    ideal_quotient,
    ideal_square,
    member_localized,
    normal_form,
    parse_order,
)
from ..poly import GaussRat, parse_gauss, parse_poly
from ..series import TruncSeries, adic_decompose, nth_root_unit, reversion
from . import models as m


def _ideal(model: m.IdealModel) -> Ideal:
    vars = tuple(model.vars)
    gens = [parse_poly(g, vars) for g in model.generators]
    return Ideal(gens, parse_order(model.order))


def _point(values: list[str]) -> tuple[GaussRat, ...]:
    return tuple(parse_gauss(v) for v in values)


def _struct(model: m.StructNonnegModel, vars: tuple[str, ...]) -> StructNonneg:
    return StructNonneg(
        vars,
        tuple(parse_poly(s, vars) for s in model.squares),
        tuple((parse_poly(a.g, vars), Fraction(a.c)) for a in model.atoms),
        Fraction(model.scalar),
    )


def gb(req: m.GbRequest) -> m.GbResponse:
    ideal = _ideal(req.ideal)
    basis = ideal.groebner()
    return m.GbResponse(
        vars=list(ideal.vars),
        order=ideal.default_order.name(),
        basis=[str(g) for g in basis],
    )


def member(req: m.MemberRequest) -> m.MemberResponse:
    ideal = _ideal(req.ideal)
    if req.square:
        ideal = ideal_square(ideal)
    f = parse_poly(req.poly, ideal.vars)
    wit = normal_form(f, ideal)
    return m.MemberResponse(
        member=wit.member,
        remainder=str(wit.remainder),
        cofactors=[str(c) for c in wit.cofactors],
    )


def quotient(req: m.QuotientRequest) -> m.QuotientResponse:
    ideal = _ideal(req.ideal)
    if req.square:
        ideal = ideal_square(ideal)
    f = parse_poly(req.poly, ideal.vars)
    q = ideal_quotient(ideal, f)
    return m.QuotientResponse(
        vars=list(q.vars),
        generators=[str(g) for g in q.generators],
        basis=[str(g) for g in q.groebner()],
    )


def member_local(req: m.MemberLocalRequest) -> m.MemberLocalResponse:
    ideal = _ideal(req.ideal)
    if req.square:
        ideal = ideal_square(ideal)
    f = parse_poly(req.poly, ideal.vars)
    res = member_localized(f, ideal, _point(req.point))
    return m.MemberLocalResponse(
        member=res.member,
        witness=str(res.witness) if res.witness is not None else None,
        witness_value=str(res.witness_value) if res.witness_value is not None else None,
        evaluations=[str(v) for v in res.evaluations],
        quotient_basis=[str(g) for g in res.quotient_basis],
    )


def dim(req: m.DimRequest) -> m.DimResponse:
    return m.DimResponse(dimension=dimension(_ideal(req.ideal)))


def hessian(req: m.HessianRequest) -> m.HessianResponse:
    vars = tuple(req.vars)
    f = parse_poly(req.poly, vars)
    return m.HessianResponse(matrix=[[str(e) for e in row] for row in f.hessian()])


def sos_verify(req: m.SosCertModel) -> m.VerifyResponse:
    vars = tuple(req.vars)
    trunc = req.trunc if req.ring == "truncated" else None
    if req.ring == "truncated" and trunc is None:
        raise ValueError("truncated ring needs a trunc field")
    target = parse_poly(req.target, vars)
    items = tuple(
        (_struct(it.scale, vars), parse_poly(it.root, vars)) for it in req.items
    )
    if trunc is None:
        cert = SosCert(target, items)
    else:
        cert = SosCert(
            TruncSeries(target, trunc),
            tuple((s, TruncSeries(r, trunc)) for s, r in items),
            trunc=trunc,
        )
    res = verify_sos(cert)
    return m.VerifyResponse(
        ok=res.ok,
        reason=res.reason,
        residual=str(res.residual.body if isinstance(res.residual, TruncSeries) else res.residual)
        if res.residual is not None
        else None,
    )


def amgm_verify(req: m.AmGmCertModel) -> m.VerifyResponse:
    vars = tuple(req.vars)
    cert = AmGmCert(
        tuple(_struct(t, vars) for t in req.terms),
        _struct(req.mean, vars),
        parse_poly(req.target, vars),
    )
    res = verify_amgm(cert)
    return m.VerifyResponse(
        ok=res.ok,
        reason=res.reason,
        residual=str(res.residual) if res.residual is not None else None,
    )


def non_sos(req: m.NonSosRequest) -> m.NonSosResponse:
    vars = tuple(req.vars)
    p = parse_poly(req.poly, vars)
    res = find_non_sos_obstruction(p)
    if not res.found:
        return m.NonSosResponse(found=False)
    obs = res.obstruction
    check = verify_non_sos(obs)
    return m.NonSosResponse(
        found=check.ok,
        beta=list(obs.beta),
        corner=list(obs.corner),
        coefficient=str(obs.coefficient),
        support=[list(s) for s in obs.support],
    )


def cone_verify(req: m.ConeCertModel) -> m.VerifyResponse:
    vars = tuple(req.vars)
    gens = [parse_poly(g, vars) for g in req.generators]
    series = TruncSeries(parse_poly(req.series, vars), req.trunc)
    cert = ConeObstruction(target=tuple(req.target))
    res = verify_cone_obstruction(cert, gens, series)
    return m.VerifyResponse(ok=res.ok, reason=res.reason)


def adic(req: m.AdicRequest) -> m.AdicResponse:
    vars = tuple(req.vars)
    g = TruncSeries(parse_poly(req.series, vars), req.trunc)
    res = adic_decompose(g, req.r)
    return m.AdicResponse(
        shifts=[str(a.body) for a in res.shifts],
        residual=str(res.residual.body),
        verified_to=res.verified_to,
    )


def series_root(req: m.SeriesRootRequest) -> m.SeriesResponse:
    vars = tuple(req.vars)
    s = TruncSeries(parse_poly(req.series, vars), req.trunc)
    root = nth_root_unit(s, req.n)
    return m.SeriesResponse(vars=list(vars), trunc=root.trunc, series=str(root.body))


def revert(req: m.RevertRequest) -> m.SeriesResponse:
    vars = (req.var,)
    s = TruncSeries(parse_poly(req.series, vars), req.trunc)
    out = reversion(s)
    return m.SeriesResponse(vars=list(vars), trunc=out.trunc, series=str(out.body))


def sample(req: m.SampleRequest) -> m.SampleResponse:
    vars = tuple(req.vars)
    p = parse_poly(req.poly, vars)
    box = [(Fraction(lo), Fraction(hi)) for lo, hi in req.box]
    rep = sample_nonnegativity(p, box, Fraction(req.step))
    if rep.ok:
        return m.SampleResponse(ok=True, checked=rep.checked)
    point, value = rep.counterexample
    return m.SampleResponse(
        ok=False,
        checked=rep.checked,
        counterexample_point=[str(c) for c in point],
        counterexample_value=str(value),
    )


def avoid_map(req: m.AvoidMapRequest) -> m.AvoidMapResponse:
    avoid = [_point(p) for p in req.avoid]
    keep = [_point(p) for p in req.keep]
    amap = birational_avoid(avoid, keep)
    check = verify_avoid_map(amap, avoid, keep)
    return m.AvoidMapResponse(
        ok=check.ok,
        reason=check.reason,
        stages=[
            m.AvoidStageModel(
                matrix=[[str(c) for c in row] for row in st.matrix],
                min_poly=[str(c) for c in st.min_poly],
            )
            for st in amap.stages
        ],
    )


def bad_point(req: m.BadPointCertModel) -> m.BadPointResponse:
    vars = tuple(req.vars)
    ideal = Ideal([parse_poly(g, vars) for g in req.ideal], parse_order(req.order))
    cert = BadPointCert(
        ideal,
        parse_poly(req.element, vars),
        _point(req.point),
        req.evidence,
        tuple(DensityWitness(_point(w.point), w.rank) for w in req.witnesses),
    )
    rep = verify_bad_point(cert)
    return m.BadPointResponse(
        ok=rep.ok,
        lines=[m.ReportLineModel(name=l.name, ok=l.ok, detail=l.detail) for l in rep.lines],
        conclusion=rep.conclusion,
    )


def claims_run(req: m.ClaimsRunRequest) -> m.ClaimsRunResponse:
    report = claims_mod.run_claims(req.ids, jobs=req.jobs)
    data = report.to_dict()
    return m.ClaimsRunResponse(
        all_passed=report.all_passed,
        total=data["total"],
        passed=data["passed"],
        report=report.render(),
        results=[m.ClaimResultModel(**c) for c in data["claims"]],
    )


def claims_list() -> list[m.ClaimInfoModel]:
    return [
        m.ClaimInfoModel(id=c.id, title=c.title, tags=list(c.tags))
        for c in claims_mod.all_claims()
    ]
