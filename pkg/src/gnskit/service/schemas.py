"""Request/response models for the service (and the CLI client)."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field

PointList = list[int]


class ToolInfo(BaseModel):
    name: str = "gnskit"
    version: str


class GapSetDoc(BaseModel):
    """The gap-set wire format: dimension and coordinate lists."""

    d: int = Field(..., ge=1)
    gaps: list[PointList]


class AnalyzeRequest(BaseModel):
    gap_set: GapSetDoc
    explain: bool = False
    order_gap: Optional[PointList] = None


class OrderDoc(BaseModel):
    type: str = "maximal-gap"
    h: PointList


class AnalyzeResponse(BaseModel):
    tool: ToolInfo
    input: GapSetDoc
    genus: int
    frobenius_allowable: list[PointList]
    pseudo_frobenius: list[PointList]
    classification: dict
    type_bounds: Optional[dict] = None
    frobenius_gap_under_order: Optional[dict] = None
    witnesses: Optional[dict] = None


class EnumerateRequest(BaseModel):
    F: PointList
    list_sets: bool = False
    limit: int = Field(30, ge=1)
    list_limit: int = Field(24, ge=1)
    threads: int = Field(1, ge=1)


class EnumerateResponse(BaseModel):
    tool: ToolInfo
    input: dict
    count: int
    gap_sets: Optional[list[GapSetDoc]] = None


class ConstructRequest(BaseModel):
    F: PointList
    Y: list[PointList] = Field(default_factory=list)
    Z: list[PointList] = Field(default_factory=list)
    d5: bool = False
    X: list[PointList] = Field(default_factory=list)


class ConstructResponse(BaseModel):
    tool: ToolInfo
    input: dict
    gap_set: GapSetDoc
    genus: int
    frobenius_gap: PointList


class SandwichRequest(BaseModel):
    F: PointList
    limit: int = Field(30, ge=1)
    threads: int = Field(1, ge=1)


class SandwichResponse(BaseModel):
    tool: ToolInfo
    input: dict
    report: dict


class ConstantsRequest(BaseModel):
    dmax: int = Field(15, ge=1, le=200)


class ConstantsResponse(BaseModel):
    tool: ToolInfo
    input: dict
    rows: list[dict]


class LpfRequest(BaseModel):
    P: PointList
    F: PointList


class LpfResponse(BaseModel):
    tool: ToolInfo
    input: dict
    graph: dict
    good_subsets: int
    closed_form_bound: float


class VerifyRequest(BaseModel):
    boxes: list[PointList]
    seed: int = 0
    threads: int = Field(1, ge=1)
    axiom_samples: int = Field(10_000, ge=1)


class VerifyResponse(BaseModel):
    tool: ToolInfo
    input: dict
    passed: bool
    boxes: list[dict]


class ErrorDoc(BaseModel):
    error: str
    kind: str
    detail: Optional[dict] = None
