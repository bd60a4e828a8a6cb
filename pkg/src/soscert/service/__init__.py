"""FastAPI application wrapping the exact-arithmetic kernel.

Run with:  uvicorn soscert.service:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..errors import BudgetExceededError, ParseError, SoscertError
from . import handlers
from . import models as m


def create_app() -> FastAPI:
    app = FastAPI(
        title="soscert",
        description=(
            "Exact computer algebra over the rationals: Groebner bases, "
            "truncated power series, and machine-checkable positivity and "
            "non-SOS certificates."
        ),
        version="0.1.0",
    )

    def guard(fn, *args):
        try:
            return fn(*args)
        except ParseError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        except BudgetExceededError as exc:
            raise HTTPException(status_code=503, detail=str(exc))
        except (SoscertError, ValueError, KeyError, ZeroDivisionError, ArithmeticError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.get("/health", response_model=m.HealthResponse)
    def health() -> m.HealthResponse:
        return m.HealthResponse(status="ok", name="soscert", version="0.1.0")

    @app.post("/gb", response_model=m.GbResponse)
    def gb(req: m.GbRequest) -> m.GbResponse:
        return guard(handlers.gb, req)

    @app.post("/member", response_model=m.MemberResponse)
    def member(req: m.MemberRequest) -> m.MemberResponse:
        return guard(handlers.member, req)

    @app.post("/quotient", response_model=m.QuotientResponse)
    def quotient(req: m.QuotientRequest) -> m.QuotientResponse:
        return guard(handlers.quotient, req)

    @app.post("/member-local", response_model=m.MemberLocalResponse)
    def member_local(req: m.MemberLocalRequest) -> m.MemberLocalResponse:
        return guard(handlers.member_local, req)

    @app.post("/dim", response_model=m.DimResponse)
    def dim(req: m.DimRequest) -> m.DimResponse:
        return guard(handlers.dim, req)

    @app.post("/hessian", response_model=m.HessianResponse)
    def hessian(req: m.HessianRequest) -> m.HessianResponse:
        return guard(handlers.hessian, req)

    @app.post("/sos-verify", response_model=m.VerifyResponse)
    def sos_verify(req: m.SosCertModel) -> m.VerifyResponse:
        return guard(handlers.sos_verify, req)

    @app.post("/amgm-verify", response_model=m.VerifyResponse)
    def amgm_verify(req: m.AmGmCertModel) -> m.VerifyResponse:
        return guard(handlers.amgm_verify, req)

    @app.post("/non-sos", response_model=m.NonSosResponse)
    def non_sos(req: m.NonSosRequest) -> m.NonSosResponse:
        return guard(handlers.non_sos, req)

    @app.post("/cone-verify", response_model=m.VerifyResponse)
    def cone_verify(req: m.ConeCertModel) -> m.VerifyResponse:
        return guard(handlers.cone_verify, req)

    @app.post("/adic", response_model=m.AdicResponse)
    def adic(req: m.AdicRequest) -> m.AdicResponse:
        return guard(handlers.adic, req)

    @app.post("/series-root", response_model=m.SeriesResponse)
    def series_root(req: m.SeriesRootRequest) -> m.SeriesResponse:
        return guard(handlers.series_root, req)

    @app.post("/revert", response_model=m.SeriesResponse)
    def revert(req: m.RevertRequest) -> m.SeriesResponse:
        return guard(handlers.revert, req)

    @app.post("/sample", response_model=m.SampleResponse)
    def sample(req: m.SampleRequest) -> m.SampleResponse:
        return guard(handlers.sample, req)

    @app.post("/avoid-map", response_model=m.AvoidMapResponse)
    def avoid_map(req: m.AvoidMapRequest) -> m.AvoidMapResponse:
        return guard(handlers.avoid_map, req)

    @app.post("/bad-point", response_model=m.BadPointResponse)
    def bad_point(req: m.BadPointCertModel) -> m.BadPointResponse:
        return guard(handlers.bad_point, req)

    @app.get("/claims", response_model=list[m.ClaimInfoModel])
    def claims() -> list[m.ClaimInfoModel]:
        return handlers.claims_list()

    @app.post("/claims/run", response_model=m.ClaimsRunResponse)
    def claims_run(req: m.ClaimsRunRequest) -> m.ClaimsRunResponse:
        return guard(handlers.claims_run, req)

    return app


app = create_app()
