"""Pydantic request/response schemas for the HTTP API and certificate files.

Polynomials, series bodies, rationals, and Gaussian rationals travel as
text in the kernel grammar; every schema is converted to kernel objects
by the handlers before any computation.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field


class IdealModel(BaseModel):
    vars: list[str]
    generators: list[str]
    order: str = "grevlex"


# -- certificates ------------------------------------------------------------

class AtomModel(BaseModel):
    """One factor of the form g^2 + c with c > 0."""

    g: str
    c: str


class StructNonnegModel(BaseModel):
    scalar: str = "1"
    squares: list[str] = Field(default_factory=list)
    atoms: list[AtomModel] = Field(default_factory=list)


class SosItemModel(BaseModel):
    scale: StructNonnegModel
    root: str


class SosCertModel(BaseModel):
    kind: Literal["sos"] = "sos"
    vars: list[str]
    ring: Literal["polynomial", "truncated"] = "polynomial"
    trunc: Optional[int] = None
    target: str
    items: list[SosItemModel]


class AmGmCertModel(BaseModel):
    kind: Literal["amgm"] = "amgm"
    vars: list[str]
    target: str
    terms: list[StructNonnegModel]
    mean: StructNonnegModel


class NonSosCertModel(BaseModel):
    kind: Literal["non_sos"] = "non_sos"
    vars: list[str]
    poly: str
    beta: Optional[list[int]] = None


class ConeCertModel(BaseModel):
    kind: Literal["cone"] = "cone"
    vars: list[str]
    trunc: int
    generators: list[str]
    series: str
    target: list[int]


class WitnessModel(BaseModel):
    point: list[str]
    rank: int


class BadPointCertModel(BaseModel):
    kind: Literal["bad_point"] = "bad_point"
    vars: list[str]
    ideal: list[str]
    order: str = "grevlex"
    element: str
    point: list[str]
    evidence: Literal["localized", "order_bound"]
    witnesses: list[WitnessModel] = Field(default_factory=list)


CertificateModel = Union[
    SosCertModel, AmGmCertModel, NonSosCertModel, ConeCertModel, BadPointCertModel
]


# -- requests ----------------------------------------------------------------

class GbRequest(BaseModel):
    ideal: IdealModel


class MemberRequest(BaseModel):
    ideal: IdealModel
    poly: str
    square: bool = False


class QuotientRequest(BaseModel):
    ideal: IdealModel
    poly: str
    square: bool = False


class MemberLocalRequest(BaseModel):
    ideal: IdealModel
    poly: str
    point: list[str]
    square: bool = False


class DimRequest(BaseModel):
    ideal: IdealModel


class HessianRequest(BaseModel):
    vars: list[str]
    poly: str


class NonSosRequest(BaseModel):
    vars: list[str]
    poly: str


class AdicRequest(BaseModel):
    vars: list[str]
    series: str
    trunc: int
    r: int


class SeriesRootRequest(BaseModel):
    vars: list[str]
    series: str
    trunc: int
    n: int


class RevertRequest(BaseModel):
    var: str
    series: str
    trunc: int


class SampleRequest(BaseModel):
    vars: list[str]
    poly: str
    box: list[list[str]]
    step: str


class AvoidMapRequest(BaseModel):
    avoid: list[list[str]]
    keep: list[list[str]]


class ClaimsRunRequest(BaseModel):
    ids: Optional[list[str]] = None
    jobs: int = 1


# -- responses ----------------------------------------------------------------

class GbResponse(BaseModel):
    vars: list[str]
    order: str
    basis: list[str]


class MemberResponse(BaseModel):
    member: bool
    remainder: str
    cofactors: list[str]


class QuotientResponse(BaseModel):
    vars: list[str]
    generators: list[str]
    basis: list[str]


class MemberLocalResponse(BaseModel):
    member: bool
    witness: Optional[str] = None
    witness_value: Optional[str] = None
    evaluations: list[str]
    quotient_basis: list[str]


class DimResponse(BaseModel):
    dimension: int


class HessianResponse(BaseModel):
    matrix: list[list[str]]


class VerifyResponse(BaseModel):
    ok: bool
    reason: str = ""
    residual: Optional[str] = None


class NonSosResponse(BaseModel):
    found: bool
    beta: Optional[list[int]] = None
    corner: Optional[list[int]] = None
    coefficient: Optional[str] = None
    support: list[list[int]] = Field(default_factory=list)


class AdicResponse(BaseModel):
    shifts: list[str]
    residual: str
    verified_to: int


class SeriesResponse(BaseModel):
    vars: list[str]
    trunc: int
    series: str


class SampleResponse(BaseModel):
    ok: bool
    checked: int
    counterexample_point: Optional[list[str]] = None
    counterexample_value: Optional[str] = None


class AvoidStageModel(BaseModel):
    matrix: list[list[str]]
    min_poly: list[str]


class AvoidMapResponse(BaseModel):
    ok: bool
    stages: list[AvoidStageModel]
    reason: str = ""


class ReportLineModel(BaseModel):
    name: str
    ok: bool
    detail: str


class BadPointResponse(BaseModel):
    ok: bool
    lines: list[ReportLineModel]
    conclusion: str


class ClaimResultModel(BaseModel):
    id: str
    title: str
    passed: bool
    detail: str


class ClaimsRunResponse(BaseModel):
    all_passed: bool
    total: int
    passed: int
    report: str
    results: list[ClaimResultModel]


class ClaimInfoModel(BaseModel):
    id: str
    title: str
    tags: list[str]


class HealthResponse(BaseModel):
    status: str
    name: str
    version: str
